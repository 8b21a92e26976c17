#include "erto/sweep.hpp"

#include "erto/error.hpp"
#include "erto/random.hpp"

#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace erto {

void
SweepSpec::validate() const
{
    base.validate();
    if (replications < 1)
    {
        throw InvalidParameter("replications must be at least 1");
    }
    if (cells.empty())
    {
        throw InvalidParameter("sweep needs at least one cell");
    }
    if (algorithms.empty())
    {
        throw InvalidParameter("sweep needs at least one algorithm");
    }
}

std::uint64_t
derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t rep) noexcept
{
    return mix_seed(mix_seed(base, cell), rep);
}

std::vector<SweepRow>
sweep(const SweepSpec& spec, int workers, bool record_trace)
{
    spec.validate();
    std::vector<SweepRow> rows;
    for (std::size_t c = 0; c < spec.cells.size(); ++c)
    {
        for (int r = 0; r < spec.replications; ++r)
        {
            for (auto alg : spec.algorithms)
            {
                SweepRow row;
                row.scenario_id = c;
                row.algorithm = alg;
                row.n_nodes = spec.cells[c].n_nodes;
                row.n_cbr = spec.cells[c].n_cbr;
                row.replication = r;
                row.seed = derive_seed(spec.base_seed, c, static_cast<std::uint64_t>(r));
                rows.push_back(std::move(row));
            }
        }
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        while (true)
        {
            const std::size_t k = next.fetch_add(1);
            if (k >= rows.size())
            {
                return;
            }
            try
            {
                auto& row = rows[k];
                SimConfig cfg = spec.base;
                cfg.n_nodes = row.n_nodes;
                cfg.n_cbr = row.n_cbr;
                cfg.seed = row.seed;
                cfg.protocol.algorithm = row.algorithm;
                const World world = build_scenario(cfg);
                auto result = run(world, record_trace, spec.observer);
                row.metrics = result.metrics;
                row.trace = std::move(result.trace);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                {
                    failure = std::current_exception();
                }
                next = rows.size();
            }
        }
    };
    const auto n_threads = static_cast<std::size_t>(std::max(1, workers));
    if (n_threads == 1)
    {
        work();
    }
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < std::min(n_threads, rows.size()); ++t)
        {
            pool.emplace_back(work);
        }
        for (auto& t : pool)
        {
            t.join();
        }
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }
    return rows;
}

namespace {

std::string
num(double v)
{
    if (std::isnan(v))
    {
        return "nan";
    }
    return fmt::format("{:.10g}", v);
}

} // namespace

std::string
metrics_csv(const std::vector<SweepRow>& rows)
{
    std::string out = "scenario_id,algorithm,n_nodes,n_cbr,replication,pdr,delay_s,throughput_bps,residual_j,"
                      "cfs_mean,duplicates,drops\n";
    for (const auto& r : rows)
    {
        const auto& m = r.metrics;
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n",
                           r.scenario_id,
                           to_string(r.algorithm),
                           r.n_nodes,
                           r.n_cbr,
                           r.replication,
                           num(m.pdr),
                           num(m.delay_s),
                           num(m.throughput_bps),
                           num(m.residual_j),
                           num(m.cfs_mean),
                           m.duplicates,
                           m.dropped());
    }
    return out;
}

MetricSummary
summarize(const std::vector<double>& values)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (double v : values)
    {
        if (!std::isnan(v))
        {
            sum += v;
            ++n;
        }
    }
    if (n == 0)
    {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, nan};
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values)
    {
        if (!std::isnan(v))
        {
            ss += (v - mean) * (v - mean);
        }
    }
    return {mean, n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0};
}

std::string
summary_csv(const std::vector<SweepRow>& rows)
{
    static constexpr const char* metrics[] = {
        "pdr", "delay_s", "throughput_bps", "residual_j", "cfs_mean", "duplicates", "drops"};
    std::string out = "scenario_id,algorithm,n_nodes,n_cbr,replications";
    for (const char* m : metrics)
    {
        out += fmt::format(",{0}_mean,{0}_std", m);
    }
    out += '\n';

    std::vector<bool> used(rows.size(), false);
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        if (used[i])
        {
            continue;
        }
        std::vector<std::vector<double>> columns(std::size(metrics));
        int count = 0;
        for (std::size_t j = i; j < rows.size(); ++j)
        {
            if (rows[j].scenario_id != rows[i].scenario_id || rows[j].algorithm != rows[i].algorithm)
            {
                continue;
            }
            used[j] = true;
            ++count;
            const auto& m = rows[j].metrics;
            const double values[] = {m.pdr,
                                     m.delay_s,
                                     m.throughput_bps,
                                     m.residual_j,
                                     m.cfs_mean,
                                     static_cast<double>(m.duplicates),
                                     static_cast<double>(m.dropped())};
            for (std::size_t k = 0; k < std::size(metrics); ++k)
            {
                columns[k].push_back(values[k]);
            }
        }
        out += fmt::format(
            "{},{},{},{},{}", rows[i].scenario_id, to_string(rows[i].algorithm), rows[i].n_nodes, rows[i].n_cbr, count);
        for (const auto& col : columns)
        {
            const auto s = summarize(col);
            out += fmt::format(",{},{}", num(s.mean), num(s.std));
        }
        out += '\n';
    }
    return out;
}

std::string
trace_csv(const std::vector<TraceEvent>& trace)
{
    std::string out(kTraceHeader);
    out += '\n';
    for (const auto& e : trace)
    {
        out += format_trace_line(e);
        out += '\n';
    }
    return out;
}

} // namespace erto
