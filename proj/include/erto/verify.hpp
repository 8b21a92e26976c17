#pragma once

#include "erto/pareto.hpp"
#include "erto/topocontrol.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace erto {

/// One measured quantity against its tolerance.
struct Check
{
    std::string name;
    double measured{0.0};
    double tolerance{0.0};
    bool passed{false};
    bool lower_bound{false};  ///< passes when measured >= tolerance
};

struct SuiteReport
{
    std::string suite;
    std::vector<Check> checks;
    double seconds{0.0};

    bool passed() const noexcept;
    /// Worst measured/tolerance ratio over the checks.
    double worst_ratio() const noexcept;
};

/// Every suite name accepted by run_suite, "all" last.
const std::vector<std::string>& suite_names();

/// Closed-form reception probability vs sampling; |diff| in standard errors.
SuiteReport verify_linkmodel(std::uint64_t seed = 1, int draws = 50, std::uint64_t samples = 1'000'000);

/// Forwarding-area formula vs rejection sampling; relative error.
SuiteReport verify_area(std::uint64_t seed = 1, int pairs = 100, std::uint64_t samples = 2'000'000);

/// Degree pmf vs placement histograms; total variation and normalization.
SuiteReport verify_degree(std::uint64_t seed = 1, std::uint64_t placements = 100'000);

/// Expected cost vs a simulated data/ack retransmission process; relative error.
SuiteReport verify_energy(std::uint64_t seed = 1, int configs = 20, std::uint64_t trials = 100'000);

inline GaConfig
oracle_ga()
{
    GaConfig ga;
    ga.population = 2000;
    ga.generations = 400;
    return ga;
}

/// Settings of the optimizer-vs-grid comparison.
struct ParetoOracleOptions
{
    std::uint64_t seed{1};
    int contexts{10};
    GaConfig ga{oracle_ga()};
    GridSpec grid;
    double linf_tol{1e-2};
    double hv_ratio{0.98};
};

/// One sender with 8 neighbors and 3 interfering transmitters, destination 250 to 600 m away.
OptContext random_context(Rng& rng);

/// NSGA-II front vs exhaustive grid front: coverage distance and hypervolume ratio.
SuiteReport verify_pareto(const ParetoOracleOptions& options = {});

/**
 * Smallest eps such that every reference point r has an approx point g with
 * g_k <= r_k + eps in every objective, after normalizing by the reference
 * front's objective ranges. A point within L-infinity distance eps of r, or
 * one that dominates r, covers it.
 */
double coverage_distance(const ParetoSet& reference, const ParetoSet& approx);

/// Largest normalized L-infinity distance from a reference point to its nearest approx point.
double nearest_distance(const ParetoSet& reference, const ParetoSet& approx);

/// Hypervolume of approx over that of reference, both normalized by reference's objective ranges.
double hypervolume_ratio(const ParetoSet& reference, const ParetoSet& approx);

/// Violations of the feasible-set properties (empty when all hold).
std::vector<std::string> feasible_set_violations(const ParetoSet& front, const FeasibleSet& fs, double tol);

/// Run one suite by name, or every suite for "all". Throws InvalidParameter on an unknown name.
std::vector<SuiteReport> run_suite(std::string_view name, std::uint64_t seed = 1);

} // namespace erto
