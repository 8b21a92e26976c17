#include "erto/error.hpp"
#include "erto/random.hpp"
#include "erto/sweep.hpp"
#include "erto/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <set>

using namespace erto;

namespace {

using Clock = std::chrono::steady_clock;

double
since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome
{
    bool passed{false};
    std::string detail;
    double seconds{0.0};
    double budget{0.0};
};

Outcome
from_suite(const SuiteReport& r, double budget, const std::string& what)
{
    Outcome o;
    o.seconds = r.seconds;
    o.budget = budget;
    o.passed = r.passed() && r.seconds < budget;
    std::size_t failed = 0;
    for (const auto& c : r.checks)
    {
        failed += c.passed ? 0 : 1;
    }
    o.detail = fmt::format("{}: {} checks, {} failed, worst measured/tolerance {:.3f}", what, r.checks.size(), failed, r.worst_ratio());
    return o;
}

/// Feasible-set property tally shared by every run that reports fronts.
struct FeasibleTally
{
    std::mutex mutex;
    std::uint64_t sets{0};
    std::uint64_t violating{0};
    std::string first;

    void add(const ParetoSet& front, const FeasibleSet& fs, double tol)
    {
        const auto bad = feasible_set_violations(front, fs, tol);
        std::lock_guard lock(mutex);
        ++sets;
        if (!bad.empty())
        {
            ++violating;
            if (first.empty())
            {
                first = bad.front();
            }
        }
    }

    FrontObserver observer(double tol)
    {
        return [this, tol](const ParetoSet& front, const FeasibleSet& fs) { add(front, fs, tol); };
    }
};

SimConfig
acceptance_base()
{
    SimConfig c;
    c.duration_s = 300.0;
    c.protocol.ga.population = 20;
    c.protocol.ga.generations = 30;
    return c;
}

struct CellMeans
{
    double pdr{0.0};
    double residual{0.0};
    double cfs{0.0};
};

// Mean metrics per (cell, algorithm).
std::map<std::pair<std::size_t, Algorithm>, CellMeans>
cell_means(const std::vector<SweepRow>& rows)
{
    std::map<std::pair<std::size_t, Algorithm>, std::vector<const SweepRow*>> groups;
    for (const auto& r : rows)
    {
        groups[{r.scenario_id, r.algorithm}].push_back(&r);
    }
    std::map<std::pair<std::size_t, Algorithm>, CellMeans> out;
    for (const auto& [key, group] : groups)
    {
        std::vector<double> pdr, residual, cfs;
        for (const auto* r : group)
        {
            pdr.push_back(r->metrics.pdr);
            residual.push_back(r->metrics.residual_j);
            cfs.push_back(r->metrics.cfs_mean);
        }
        out[key] = {summarize(pdr).mean, summarize(residual).mean, summarize(cfs).mean};
    }
    return out;
}

Outcome
determinism(std::uint64_t seed)
{
    const auto start = Clock::now();
    SweepSpec spec;
    spec.base = acceptance_base();
    spec.base.duration_s = 120.0;
    spec.cells = {{40, 10}, {60, 20}};
    spec.replications = 2;
    spec.base_seed = seed;

    auto dump = [](const std::vector<SweepRow>& rows) {
        std::string all = metrics_csv(rows) + summary_csv(rows);
        for (const auto& r : rows)
        {
            all += trace_csv(r.trace);
        }
        return all;
    };
    const auto a = dump(sweep(spec, 1, true));
    const auto b = dump(sweep(spec, 1, true));
    const auto c = dump(sweep(spec, 4, true));

    Outcome o;
    o.seconds = since(start);
    o.budget = 120.0;
    o.passed = a == b && a == c && o.seconds < o.budget;
    o.detail = fmt::format("{} bytes of CSV and trace; rerun {}, 4 workers {}",
                           a.size(),
                           a == b ? "identical" : "DIFFERENT",
                           a == c ? "identical" : "DIFFERENT");
    return o;
}

Outcome
density_trend(std::uint64_t seed, FeasibleTally& tally, double tol)
{
    const auto start = Clock::now();
    SweepSpec spec;
    spec.base = acceptance_base();
    spec.cells = {{40, 20}, {80, 20}, {120, 20}};
    spec.replications = 5;
    spec.base_seed = seed;
    spec.observer = tally.observer(tol);
    const auto means = cell_means(sweep(spec));

    bool pdr_ok = true;
    bool residual_ok = true;
    std::string detail;
    for (std::size_t c = 0; c < spec.cells.size(); ++c)
    {
        const auto& e = means.at({c, Algorithm::Erto});
        const auto& x = means.at({c, Algorithm::Exor});
        pdr_ok = pdr_ok && e.pdr >= 1.10 * x.pdr;
        residual_ok = residual_ok && e.residual >= x.residual;
        detail += fmt::format("\n    n={:<3} PDR {:.3f} vs {:.3f} ({:+.1f}%), residual {:.2f} vs {:.2f} J, CFS {:.2f} vs {:.2f}",
                              spec.cells[c].n_nodes,
                              e.pdr,
                              x.pdr,
                              100.0 * (e.pdr / x.pdr - 1.0),
                              e.residual,
                              x.residual,
                              e.cfs,
                              x.cfs);
    }
    const double erto80 = means.at({1, Algorithm::Erto}).cfs;
    const double erto120 = means.at({2, Algorithm::Erto}).cfs;
    const double cfs_change = std::abs(erto120 - erto80) / erto80;
    const bool exor_grows = means.at({0, Algorithm::Exor}).cfs < means.at({1, Algorithm::Exor}).cfs &&
                            means.at({1, Algorithm::Exor}).cfs < means.at({2, Algorithm::Exor}).cfs;
    const bool cfs_ok = cfs_change < 0.15 && exor_grows;

    Outcome o;
    o.seconds = since(start);
    o.budget = 600.0;
    o.passed = pdr_ok && residual_ok && cfs_ok && o.seconds < o.budget;
    o.detail = fmt::format("(a) PDR >= +10% {}, (b) residual {}, (c) ERTO CFS 80->120 {:.1f}% and ExOR CFS increasing {}{}",
                           pdr_ok ? "PASS" : "FAIL",
                           residual_ok ? "PASS" : "FAIL",
                           100.0 * cfs_change,
                           exor_grows ? "yes" : "no",
                           detail);
    return o;
}

Outcome
load_trend(std::uint64_t seed, FeasibleTally& tally, double tol)
{
    const auto start = Clock::now();
    SweepSpec spec;
    spec.base = acceptance_base();
    spec.cells = {{100, 20}, {100, 60}, {100, 100}};
    spec.replications = 5;
    spec.base_seed = seed;
    spec.observer = tally.observer(tol);
    const auto means = cell_means(sweep(spec));

    std::map<Algorithm, double> drop;
    bool monotone = true;
    std::string detail;
    for (auto alg : {Algorithm::Erto, Algorithm::Exor})
    {
        const double p20 = means.at({0, alg}).pdr;
        const double p60 = means.at({1, alg}).pdr;
        const double p100 = means.at({2, alg}).pdr;
        monotone = monotone && p20 >= p60 && p60 >= p100;
        drop[alg] = (p20 - p100) / p20;
        detail += fmt::format("\n    {:<4} PDR {:.3f} / {:.3f} / {:.3f} at 20/60/100 pairs, drop {:.1f}%",
                              to_string(alg),
                              p20,
                              p60,
                              p100,
                              100.0 * drop[alg]);
    }
    const bool smaller = drop[Algorithm::Erto] < drop[Algorithm::Exor];

    Outcome o;
    o.seconds = since(start);
    o.budget = 600.0;
    o.passed = monotone && smaller && o.seconds < o.budget;
    o.detail = fmt::format("PDR non-increasing {}, ERTO drop smaller {}{}", monotone ? "yes" : "no", smaller ? "yes" : "no", detail);
    return o;
}

Outcome
frozen_receptions(std::uint64_t seed)
{
    const auto start = Clock::now();
    const RadioParams radio;
    const RangeMap range;
    Rng rng(mix_seed(seed, 10));
    constexpr int kScenarios = 5;
    constexpr int kAttempts = 100'000;

    double worst = 0.0;
    int scenarios = 0;
    std::string detail;
    while (scenarios < kScenarios)
    {
        SimConfig c;
        c.n_nodes = 80;
        c.n_cbr = 0;
        c.seed = rng.next();
        const auto world = build_scenario(c);
        const auto& pos = world.positions;

        // Sender 0 at a random power, the receiver its nearest in-range node, and
        // six nodes near the receiver transmitting during overlapping or disjoint intervals.
        const double power = rng.uniform(0.2, 0.8);
        const double r = range_of_power(power, range);
        NodeId receiver = kNoNode;
        double best = r;
        for (NodeId i = 1; i < pos.size(); ++i)
        {
            const double d = distance(pos[0], pos[i]);
            if (d <= best)
            {
                best = d;
                receiver = i;
            }
        }
        if (receiver == kNoNode)
        {
            continue;
        }
        std::vector<NodeId> near;
        for (NodeId i = 1; i < pos.size(); ++i)
        {
            if (i != receiver && distance(pos[i], pos[receiver]) < range_of_power(0.8, range))
            {
                near.push_back(i);
            }
        }
        if (near.empty())
        {
            continue;
        }
        const AirTx self{0, pos[0], power, 0.0, 0.068};
        std::vector<AirTx> air{self};
        for (int k = 0; k < 6; ++k)
        {
            const auto id = near[rng.below(near.size())];
            const double t0 = rng.uniform(-0.1, 0.1);
            air.push_back({id, pos[id], rng.uniform(0.1, 0.8), t0, t0 + 0.068});
        }
        const auto snap = air_interferers(receiver, pos[receiver], self, air, range);
        if (snap.empty())
        {
            continue;
        }
        const double p = p_si(power, distance(pos[0], pos[receiver]), snap, radio);
        if (p < 0.02 || p > 0.98)
        {
            continue;
        }
        Rng draws(rng.next());
        int ok = 0;
        for (int k = 0; k < kAttempts; ++k)
        {
            ok += resolve_reception(receiver, pos[receiver], self, air, radio, range, draws) ? 1 : 0;
        }
        const double freq = static_cast<double>(ok) / kAttempts;
        const double z = std::abs(freq - p) / std::sqrt(p * (1.0 - p) / kAttempts);
        worst = std::max(worst, z);
        detail += fmt::format("\n    {} interferers: p_si {:.4f}, frequency {:.4f}, {:.2f} sigma", snap.size(), p, freq, z);
        ++scenarios;
    }

    Outcome o;
    o.seconds = since(start);
    o.budget = 60.0;
    o.passed = worst <= 3.0 && o.seconds < o.budget;
    o.detail = fmt::format("{} frozen scenarios x {} attempts, worst {:.2f} sigma (tolerance 3){}", scenarios, kAttempts, worst, detail);
    return o;
}

Outcome
feasible_properties(std::uint64_t seed, FeasibleTally& tally, double tol)
{
    const auto start = Clock::now();
    std::uint64_t from_runs = tally.sets;

    // Fronts from random contexts: exhaustive grid fronts and optimizer fronts.
    Rng rng(mix_seed(seed, 6));
    for (int k = 0; k < 200; ++k)
    {
        const auto ctx = random_context(rng);
        GaConfig ga;
        ga.seed = rng.next();
        std::vector<ParetoSet> fronts{brute_force_front(ctx, GridSpec{50, 0, 10})};
        try
        {
            fronts.push_back(nsga2_front(ctx, ga));
        }
        catch (const EmptyFrontError&)
        {
        }
        for (const auto& front : fronts)
        {
            if (!front.members.empty())
            {
                tally.add(front, feasible_set(front, tol), tol);
            }
        }
    }

    Outcome o;
    o.seconds = since(start);
    o.budget = 60.0;
    o.passed = tally.sets > 0 && tally.violating == 0 && o.seconds < o.budget;
    o.detail = fmt::format("{} feasible sets ({} from simulation runs), {} violating{}",
                           tally.sets,
                           from_runs,
                           tally.violating,
                           tally.first.empty() ? "" : ": " + tally.first);
    return o;
}

} // namespace

int
main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria 1-10"};
    std::uint64_t seed = 1;
    std::vector<int> only;
    std::vector<int> known;
    app.add_option("--seed", seed, "Seed for oracles and sweeps");
    app.add_option("--only", only, "Criteria to run (default all)")->check(CLI::Range(1, 10));
    app.add_option("--known-failure", known, "Criteria whose FAIL does not change the exit status")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    std::set<int> want(only.begin(), only.end());
    if (want.empty())
    {
        for (int k = 1; k <= 10; ++k)
        {
            want.insert(k);
        }
    }

    const char* titles[] = {"",
                            "link model vs sampling",
                            "forwarding area vs sampling",
                            "degree pmf vs placements",
                            "expected cost vs retransmissions",
                            "optimizer vs grid front",
                            "feasible-set properties",
                            "determinism",
                            "density trend",
                            "load trend",
                            "simulator vs link model"};

    const double tol = SimConfig{}.protocol.feasible_tol;
    FeasibleTally tally;
    std::map<int, Outcome> results;
    auto record = [&](int k, Outcome o) {
        fmt::print(stderr, "criterion {} done in {:.1f} s\n", k, o.seconds);
        results[k] = std::move(o);
    };

    try
    {
        if (want.contains(1))
        {
            record(1, from_suite(verify_linkmodel(seed), 120.0, "50 draws x 1e6 samples, tolerance 3 SE"));
        }
        if (want.contains(2))
        {
            record(2, from_suite(verify_area(seed), 60.0, "100 pairs, tolerance 0.5% relative"));
        }
        if (want.contains(3))
        {
            record(3, from_suite(verify_degree(seed), 60.0, "TV at 1e5 placements <= 0.02, normalization 1e-9"));
        }
        if (want.contains(4))
        {
            record(4, from_suite(verify_energy(seed), 60.0, "20 configs x 1e5 trials, tolerance 2%"));
        }
        if (want.contains(5))
        {
            ParetoOracleOptions opt;
            opt.seed = seed;
            record(5, from_suite(verify_pareto(opt), 300.0, "10 contexts, coverage 1e-2, hypervolume 98%"));
        }
        if (want.contains(7))
        {
            record(7, determinism(seed));
        }
        if (want.contains(8))
        {
            record(8, density_trend(seed, tally, tol));
        }
        if (want.contains(9))
        {
            record(9, load_trend(seed, tally, tol));
        }
        if (want.contains(10))
        {
            record(10, frozen_receptions(seed));
        }
        if (want.contains(6))
        {
            record(6, feasible_properties(seed, tally, tol));
        }
    }
    catch (const std::exception& e)
    {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }

    const std::set<int> excused(known.begin(), known.end());
    bool all = true;
    std::vector<int> excused_failures;
    for (const auto& [k, o] : results)
    {
        fmt::print("criterion {:>2} {} {} ({:.1f} s, budget {:.0f} s)\n    {}\n",
                   k,
                   o.passed ? "PASS" : "FAIL",
                   titles[k],
                   o.seconds,
                   o.budget,
                   o.detail);
        if (!o.passed && excused.contains(k))
        {
            excused_failures.push_back(k);
        }
        else
        {
            all = all && o.passed;
        }
    }
    for (int k : excused_failures)
    {
        fmt::print("criterion {} failed and is listed as a known failure; it does not affect the exit status\n", k);
    }
    return all ? 0 : 1;
}
