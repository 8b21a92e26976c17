#pragma once

#include "erto/sweep.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace erto {

enum class SweepLayout
{
    Axes,  ///< vary nodes at fixed_cbr_pairs, then pairs at fixed_nodes
    Grid,  ///< every (nodes, pairs) combination
};

/**
 * A complete experiment: simulation parameters plus the sweep to run.
 * Omitted keys keep the defaults below (the published simulation table
 * where it gives a value).
 */
struct ExperimentConfig
{
    SimConfig sim;
    SweepLayout layout{SweepLayout::Axes};
    std::vector<int> nodes{40, 60, 80, 100, 120};
    std::vector<int> cbr_pairs{20, 40, 60, 80, 100};
    int fixed_nodes{100};
    int fixed_cbr_pairs{20};
    int replications{5};
    std::vector<Algorithm> algorithms{Algorithm::Erto, Algorithm::Exor};
    std::uint64_t seed{1};
    std::string output_dir{"out"};
    bool trace{false};

    void validate() const;
    std::vector<SweepCell> cells() const;
    SweepSpec sweep_spec() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parse YAML text. Throws ConfigError naming the key and line.
ExperimentConfig parse_config(std::string_view yaml);

/// Read and parse a file; an empty file yields the defaults.
ExperimentConfig load_config(const std::string& path);

/// Every key, with full precision, in the format parse_config accepts.
std::string to_yaml(const ExperimentConfig& config);

} // namespace erto
