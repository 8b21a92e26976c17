#include "erto/verify.hpp"

#include "erto/degree.hpp"
#include "erto/energy.hpp"
#include "erto/error.hpp"
#include "erto/geometry.hpp"
#include "erto/linkmodel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

namespace erto {

namespace {

class Stopwatch
{
  public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - m_start).count();
    }

  private:
    std::chrono::steady_clock::time_point m_start{std::chrono::steady_clock::now()};
};

Check
at_most(std::string name, double measured, double tol)
{
    return {std::move(name), measured, tol, measured <= tol, false};
}

Check
at_least(std::string name, double measured, double tol)
{
    return {std::move(name), measured, tol, measured >= tol, true};
}

struct Bounds
{
    std::array<double, 3> lo;
    std::array<double, 3> span;
};

Bounds
objective_bounds(const ParetoSet& front)
{
    Bounds b;
    std::array<double, 3> hi;
    b.lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    for (const auto& s : front.members)
    {
        for (int k = 0; k < 3; ++k)
        {
            b.lo[k] = std::min(b.lo[k], s.f[k]);
            hi[k] = std::max(hi[k], s.f[k]);
        }
    }
    for (int k = 0; k < 3; ++k)
    {
        b.span[k] = hi[k] > b.lo[k] ? hi[k] - b.lo[k] : 1.0;
    }
    return b;
}

std::vector<std::array<double, 3>>
normalized(const ParetoSet& set, const Bounds& b)
{
    std::vector<std::array<double, 3>> out;
    out.reserve(set.size());
    for (const auto& s : set.members)
    {
        std::array<double, 3> v;
        for (int k = 0; k < 3; ++k)
        {
            v[k] = (s.f[k] - b.lo[k]) / b.span[k];
        }
        out.push_back(v);
    }
    return out;
}

} // namespace

bool
SuiteReport::passed() const noexcept
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

double
SuiteReport::worst_ratio() const noexcept
{
    double worst = 0.0;
    for (const auto& c : checks)
    {
        if (c.lower_bound && c.measured > 0.0)
        {
            worst = std::max(worst, c.tolerance / c.measured);
        }
        else if (!c.lower_bound && c.tolerance != 0.0)
        {
            worst = std::max(worst, c.measured / c.tolerance);
        }
    }
    return worst;
}

const std::vector<std::string>&
suite_names()
{
    static const std::vector<std::string> names{"linkmodel", "area", "degree", "energy", "pareto", "all"};
    return names;
}

SuiteReport
verify_linkmodel(std::uint64_t seed, int draws, std::uint64_t samples)
{
    Stopwatch clock;
    SuiteReport report;
    report.suite = "linkmodel";
    Rng rng(mix_seed(seed, 101));
    for (int i = 0; i < draws; ++i)
    {
        RadioParams radio;
        radio.beta = rng.uniform(1.0, 10.0);
        radio.eta = rng.uniform(2.0, 5.0);
        radio.G = rng.uniform(1.0, 20.0);
        const double p = rng.uniform(0.1, 0.8);
        const double d = rng.uniform(10.0, 200.0);
        // Keep the noise term from swamping everything at long range and high eta.
        radio.noise_w = 0.2 * p * radio.K / std::pow(d, radio.eta) * rng.uniform(0.05, 1.0);
        InterfererSnapshot snap;
        const auto m = rng.below(9);
        for (std::uint64_t k = 0; k < m; ++k)
        {
            const double activity = rng.bernoulli(0.3) ? 1.0 : rng.uniform();
            snap.push_back({rng.uniform(0.1, 0.8), rng.uniform(0.5, 3.0) * d, activity, static_cast<NodeId>(k)});
        }
        const double exact = p_si(p, d, snap, radio);
        const auto est = p_si_montecarlo(p, d, snap, radio, samples, mix_seed(seed, 1000 + i));
        const double se = std::sqrt(std::max(exact * (1.0 - exact), 1e-300) / static_cast<double>(samples));
        report.checks.push_back(
            at_most(fmt::format("draw {:2d} p_si={:.6f} mc={:.6f}", i, exact, est.p), std::abs(est.p - exact) / se, 3.0));
    }
    report.seconds = clock.seconds();
    return report;
}

SuiteReport
verify_area(std::uint64_t seed, int pairs, std::uint64_t samples)
{
    Stopwatch clock;
    SuiteReport report;
    report.suite = "area";
    Rng rng(mix_seed(seed, 102));
    for (int i = 0; i < pairs; ++i)
    {
        const double d_ds = rng.uniform(20.0, 400.0);
        // Every fifth pair lands in the regime where the sender disk covers the destination disk.
        const double ratio = i % 5 == 4 ? rng.uniform(2.0, 3.0) : rng.uniform(0.3, 2.0);
        const double r_s = ratio * d_ds;
        const double formula = candidate_area(r_s, d_ds);

        // Sender at the origin, destination at (d_ds, 0); the region lies in both disks' boxes.
        const double x_lo = std::max(-r_s, 0.0);
        const double x_hi = std::min(r_s, 2.0 * d_ds);
        const double y_hi = std::min(r_s, d_ds);
        const double box = (x_hi - x_lo) * 2.0 * y_hi;
        Rng sampler(mix_seed(seed, 2000 + i));
        std::uint64_t hits = 0;
        for (std::uint64_t k = 0; k < samples; ++k)
        {
            const double x = sampler.uniform(x_lo, x_hi);
            const double y = sampler.uniform(-y_hi, y_hi);
            const double to_sender = x * x + y * y;
            const double to_dest = (x - d_ds) * (x - d_ds) + y * y;
            hits += (to_sender <= r_s * r_s && to_dest < d_ds * d_ds) ? 1 : 0;
        }
        const double mc = box * static_cast<double>(hits) / static_cast<double>(samples);
        report.checks.push_back(at_most(fmt::format("pair {:3d} r_s={:.1f} d_ds={:.1f}", i, r_s, d_ds),
                                        std::abs(formula - mc) / mc,
                                        0.005));
    }
    report.seconds = clock.seconds();
    return report;
}

SuiteReport
verify_degree(std::uint64_t seed, std::uint64_t placements)
{
    Stopwatch clock;
    SuiteReport report;
    report.suite = "degree";
    const RangeMap range;
    const double means[] = {0.3, 1.0, 2.5, 5.0, 9.0};
    Rng rng(mix_seed(seed, 103));
    for (std::size_t i = 0; i < std::size(means); ++i)
    {
        const double d_ds = rng.uniform(100.0, 500.0);
        const double p = rng.uniform(0.1, 0.8);
        const auto region = ForwardingRegion::make({0.0, 0.0}, {d_ds, 0.0}, range_of_power(p, range));
        const double rho = means[i] / region.area;
        const auto hist = empirical_degree_check(placements, rho, region, mix_seed(seed, 3000 + i));
        report.checks.push_back(at_most(fmt::format("histogram mean={:.1f}", means[i]), hist.total_variation(means[i]), 0.02));

        double total = 0.0;
        for (int n = 0; n < 200; ++n)
        {
            total += p_rnd(p, n, d_ds, rho, range);
        }
        report.checks.push_back(at_most(fmt::format("p_rnd sums to one, mean={:.1f}", means[i]), std::abs(total - 1.0), 1e-9));
    }
    for (double mean : {1e-3, 30.0, 120.0})
    {
        double total = 0.0;
        for (int n = 0; n < 1000; ++n)
        {
            total += poisson_pmf(mean, n);
        }
        report.checks.push_back(at_most(fmt::format("pmf sums to one, mean={:g}", mean), std::abs(total - 1.0), 1e-9));
    }
    report.seconds = clock.seconds();
    return report;
}

SuiteReport
verify_energy(std::uint64_t seed, int configs, std::uint64_t trials)
{
    Stopwatch clock;
    SuiteReport report;
    report.suite = "energy";
    const EnergyParams energy;
    Rng rng(mix_seed(seed, 104));
    for (int i = 0; i < configs; ++i)
    {
        const double p = rng.uniform(0.1, 0.8);
        const int n = 1 + static_cast<int>(rng.below(8));
        const double psc = rng.uniform(0.3, 1.0);
        const double per_attempt = (n * energy.e_r_w + energy.xi * p) * energy.delta();

        // An attempt counts only when the data frame reaches the set and the acknowledgement returns.
        Rng sampler(mix_seed(seed, 4000 + i));
        double spent = 0.0;
        for (std::uint64_t t = 0; t < trials; ++t)
        {
            while (true)
            {
                spent += per_attempt;
                const bool data = sampler.bernoulli(psc);
                const bool ack = sampler.bernoulli(psc);
                if (data && ack)
                {
                    break;
                }
            }
        }
        const double simulated = spent / static_cast<double>(trials);
        const double formula = expected_cost(p, n, psc, energy);
        report.checks.push_back(at_most(fmt::format("config {:2d} p={:.3f} n={} p_sc={:.3f}", i, p, n, psc),
                                        std::abs(formula - simulated) / formula,
                                        0.02));

        const double base = expected_cost(p, n, 1.0, energy);
        const double law = std::abs(formula * psc * psc - base) / base;
        const double halved = std::abs(expected_cost(p, n, psc / 2.0, energy) - 4.0 * formula) / formula;
        report.checks.push_back(at_most(fmt::format("config {:2d} inverse square", i), std::max(law, halved), 1e-12));
    }
    report.seconds = clock.seconds();
    return report;
}

OptContext
random_context(Rng& rng)
{
    OptContext ctx;
    auto& link = ctx.link;
    link.sender = 0;
    link.sender_position = {0.0, 0.0};
    link.destination = 1000;
    link.destination_position = {rng.uniform(250.0, 600.0), 0.0};
    auto scatter = [&rng](double radius) {
        const double r = radius * std::sqrt(rng.uniform());
        const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
        return Position{r * std::cos(a), r * std::sin(a)};
    };

    // Three transmitters near the sender; each neighbor lists those whose maximum range covers it.
    std::array<Position, 3> interferers;
    for (auto& p : interferers)
    {
        p = scatter(300.0);
    }
    const double reach = range_of_power(ctx.p_max, link.range);
    for (int i = 0; i < 8; ++i)
    {
        CandidateLink c;
        c.id = static_cast<NodeId>(i + 1);
        c.position = scatter(200.0);
        for (std::size_t k = 0; k < interferers.size(); ++k)
        {
            const double d = distance(c.position, interferers[k]);
            if (d <= reach && d > 1.0)
            {
                c.interferers.push_back({rng.uniform(0.1, 0.8), d, 1.0, static_cast<NodeId>(2000 + k)});
            }
        }
        link.neighbors.push_back(std::move(c));
    }
    ctx.rho = rng.uniform(4e-5, 1.2e-4);
    ctx.n_cap = 10;
    return ctx;
}

namespace {

/// Worst, over reference points, of the best per-point distance `gap(r, g)` to an approx point.
template <typename Gap>
double
worst_best(const ParetoSet& reference, const ParetoSet& approx, Gap gap)
{
    if (reference.empty())
    {
        return 0.0;
    }
    if (approx.empty())
    {
        return std::numeric_limits<double>::infinity();
    }
    const auto b = objective_bounds(reference);
    const auto ref = normalized(reference, b);
    const auto got = normalized(approx, b);
    double worst = 0.0;
    for (const auto& r : ref)
    {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& g : got)
        {
            best = std::min(best, gap(r, g));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

double
coverage_distance(const ParetoSet& reference, const ParetoSet& approx)
{
    return worst_best(reference, approx, [](const auto& r, const auto& g) {
        double d = 0.0;
        for (int k = 0; k < 3; ++k)
        {
            d = std::max(d, g[k] - r[k]);
        }
        return d;
    });
}

double
nearest_distance(const ParetoSet& reference, const ParetoSet& approx)
{
    return worst_best(reference, approx, [](const auto& r, const auto& g) {
        double d = 0.0;
        for (int k = 0; k < 3; ++k)
        {
            d = std::max(d, std::abs(g[k] - r[k]));
        }
        return d;
    });
}

double
hypervolume_ratio(const ParetoSet& reference, const ParetoSet& approx)
{
    const auto b = objective_bounds(reference);
    const std::array<double, 3> ref_point{1.1, 1.1, 1.1};
    const double denom = hypervolume(normalized(reference, b), ref_point);
    if (!(denom > 0.0))
    {
        return 1.0;
    }
    return hypervolume(normalized(approx, b), ref_point) / denom;
}

std::vector<std::string>
feasible_set_violations(const ParetoSet& front, const FeasibleSet& fs, double tol)
{
    std::vector<std::string> bad;
    const auto& m = fs.members;
    if (m.empty())
    {
        bad.emplace_back("feasible set is empty");
        return bad;
    }
    for (const auto& s : m)
    {
        const bool member = std::any_of(front.members.begin(), front.members.end(), [&](const Solution& f) {
            return f.p_ts == s.p_ts && f.n_rel == s.n_rel;
        });
        if (!member)
        {
            bad.push_back(fmt::format("({}, {}) is not on the front", s.p_ts, s.n_rel));
        }
        if (s.p_rnd() < (1.0 - tol) * fs.p_rnd_star)
        {
            bad.push_back(fmt::format("({}, {}) lies outside the P_rnd band", s.p_ts, s.n_rel));
        }
    }

    std::vector<std::size_t> by_psc(m.size());
    std::vector<std::size_t> by_cost(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
    {
        by_psc[i] = by_cost[i] = i;
    }
    std::stable_sort(by_psc.begin(), by_psc.end(), [&](auto a, auto b) { return m[a].p_sc() < m[b].p_sc(); });
    std::stable_sort(by_cost.begin(), by_cost.end(), [&](auto a, auto b) { return m[a].cost() < m[b].cost(); });
    if (by_psc != by_cost)
    {
        bad.emplace_back("ascending P_sc and ascending C_s orders differ");
    }
    for (std::size_t i = 0; i < m.size(); ++i)
    {
        for (std::size_t j = i + 1; j < m.size(); ++j)
        {
            if (m[i].p_sc() == m[j].p_sc() || m[i].cost() == m[j].cost())
            {
                bad.push_back(fmt::format("members {} and {} tie", i, j));
            }
        }
    }

    const auto pick = balanced_select(fs);
    const auto pos = std::find_if(m.begin(), m.end(), [&](const Solution& s) {
        return s.p_ts == pick.p_ts && s.n_rel == pick.n_rel;
    });
    if (pos == m.end())
    {
        bad.emplace_back("balanced_select returned a non-member");
        return bad;
    }
    const auto rank = static_cast<std::size_t>(std::find(by_psc.begin(), by_psc.end(), pos - m.begin()) - by_psc.begin());
    const std::size_t size = m.size();
    std::size_t expected = 0;
    if (size % 2 == 1)
    {
        expected = (size + 1) / 2 - 1;
    }
    else
    {
        const auto stats = performance_stats(fs);
        const auto& lower = m[by_psc[size / 2 - 1]];
        const auto& upper = m[by_psc[size / 2]];
        if (stats.v_psc >= stats.v_cs)
        {
            expected = upper.p_sc() > lower.p_sc() ? size / 2 : size / 2 - 1;
        }
        else
        {
            expected = upper.cost() < lower.cost() ? size / 2 : size / 2 - 1;
        }
    }
    if (rank != expected)
    {
        bad.push_back(fmt::format("balanced_select picked rank {} of {}, expected {}", rank, size, expected));
    }
    return bad;
}

SuiteReport
verify_pareto(const ParetoOracleOptions& options)
{
    Stopwatch clock;
    SuiteReport report;
    report.suite = "pareto";
    Rng rng(mix_seed(options.seed, 105));
    for (int i = 0; i < options.contexts; ++i)
    {
        const auto ctx = random_context(rng);
        auto ga = options.ga;
        ga.seed = mix_seed(options.seed, 5000 + i);
        const auto grid = brute_force_front(ctx, options.grid);
        const auto front = nsga2_front(ctx, ga);
        report.checks.push_back(
            at_most(fmt::format("context {} coverage ({} grid, {} ga, nearest {:.4f})", i, grid.size(), front.size(), nearest_distance(grid, front)),
                    coverage_distance(grid, front),
                    options.linf_tol));
        report.checks.push_back(at_least(fmt::format("context {} hypervolume ratio", i), hypervolume_ratio(grid, front), options.hv_ratio));

        const double tol = 0.01;
        const auto fs = feasible_set(front, tol);
        report.checks.push_back(
            at_most(fmt::format("context {} feasible set properties", i), static_cast<double>(feasible_set_violations(front, fs, tol).size()), 0.0));
    }
    report.seconds = clock.seconds();
    return report;
}

std::vector<SuiteReport>
run_suite(std::string_view name, std::uint64_t seed)
{
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
    {
        throw InvalidParameter(fmt::format("unknown suite '{}'", name));
    }
    const bool all = name == "all";
    std::vector<SuiteReport> out;
    if (all || name == "linkmodel")
    {
        out.push_back(verify_linkmodel(seed));
    }
    if (all || name == "area")
    {
        out.push_back(verify_area(seed));
    }
    if (all || name == "degree")
    {
        out.push_back(verify_degree(seed));
    }
    if (all || name == "energy")
    {
        out.push_back(verify_energy(seed));
    }
    if (all || name == "pareto")
    {
        ParetoOracleOptions opts;
        opts.seed = seed;
        out.push_back(verify_pareto(opts));
    }
    return out;
}

} // namespace erto
