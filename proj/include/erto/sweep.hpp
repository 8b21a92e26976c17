#pragma once

#include "erto/sim.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace erto {

struct SweepCell
{
    int n_nodes{40};
    int n_cbr{20};
};

struct SweepSpec
{
    SimConfig base;
    std::vector<SweepCell> cells;
    std::vector<Algorithm> algorithms{Algorithm::Erto, Algorithm::Exor};
    int replications{1};
    std::uint64_t base_seed{1};
    FrontObserver observer;  ///< handed to every run; called concurrently when workers > 1

    void validate() const;
};

/**
 * Seed of replication `rep` of cell `cell`:
 *
 *   mix_seed(mix_seed(base, cell), rep)
 *
 * with mix_seed(b, l) = splitmix64(splitmix64(b) ^ (l + 0x632BE59BD9B4E019)).
 * Every algorithm of a cell/replication shares the seed, so they see the
 * same placement, flows and traffic start times.
 */
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t rep) noexcept;

struct SweepRow
{
    std::size_t scenario_id{0};
    Algorithm algorithm{Algorithm::Erto};
    int n_nodes{0};
    int n_cbr{0};
    int replication{0};
    std::uint64_t seed{0};
    MetricsRecord metrics;
    std::vector<TraceEvent> trace;
};

/// Run every (cell, replication, algorithm) on `workers` threads; rows come back in that order.
std::vector<SweepRow> sweep(const SweepSpec& spec, int workers = 1, bool record_trace = false);

/// Per-run table: scenario_id,algorithm,n_nodes,n_cbr,replication,pdr,delay_s,throughput_bps,residual_j,cfs_mean,duplicates,drops
std::string metrics_csv(const std::vector<SweepRow>& rows);

/// Mean and sample standard deviation of every metric per (scenario, algorithm).
std::string summary_csv(const std::vector<SweepRow>& rows);

/// Trace of one row as CSV text with header.
std::string trace_csv(const std::vector<TraceEvent>& trace);

struct MetricSummary
{
    double mean{0.0};
    double std{0.0};
};

/// Summary of one metric over the rows of a (scenario, algorithm) group. NaN entries are skipped.
MetricSummary summarize(const std::vector<double>& values);

} // namespace erto
