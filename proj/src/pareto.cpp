#include "erto/pareto.hpp"

#include "erto/degree.hpp"
#include "erto/error.hpp"
#include "erto/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

namespace erto {

bool
dominates(const Solution& a, const Solution& b) noexcept
{
    bool strictly = false;
    for (std::size_t k = 0; k < 3; ++k)
    {
        if (a.f[k] > b.f[k])
        {
            return false;
        }
        strictly = strictly || a.f[k] < b.f[k];
    }
    return strictly;
}

void
GaConfig::validate() const
{
    if (population < 4 || population % 2 != 0)
    {
        throw InvalidParameter("ga: population must be even and at least 4");
    }
    if (generations < 1)
    {
        throw InvalidParameter("ga: generations must be at least 1");
    }
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0) || !(mutation_prob >= 0.0 && mutation_prob <= 1.0))
    {
        throw InvalidParameter("ga: probabilities must lie in [0, 1]");
    }
    if (!(crossover_eta >= 0.0) || !(mutation_eta >= 0.0))
    {
        throw InvalidParameter("ga: distribution indices must be non-negative");
    }
}

void
OptContext::validate() const
{
    radio.validate();
    energy.validate();
    link.range.validate();
    if (!(rho > 0.0))
    {
        throw InvalidParameter("optimization: density must be positive");
    }
    if (!(p_min > 0.0) || !(p_max >= p_min))
    {
        throw InvalidParameter("optimization: need 0 < p_min <= p_max");
    }
    if (n_cap < 0)
    {
        throw InvalidParameter("optimization: n_cap must be non-negative");
    }
    if (!(link.d_ds() > 0.0))
    {
        throw InvalidParameter("optimization: sender and destination coincide");
    }
}

int
default_n_cap(double rho, const RangeMap& map, double p_max)
{
    const double r = range_of_power(p_max, map);
    return static_cast<int>(std::ceil(rho * std::numbers::pi * r * r));
}

namespace {

Solution
assemble(double p_ts, int n_rel, double psc, double prnd, const EnergyParams& energy)
{
    Solution s;
    s.p_ts = p_ts;
    s.n_rel = n_rel;
    s.f[0] = -psc;
    s.f[1] = -prnd;
    if (n_rel >= 1 && psc > kPscFloor)
    {
        s.feasible = true;
        s.f[2] = expected_cost(p_ts, n_rel, psc, energy);
    }
    else
    {
        s.feasible = false;
        s.violation = kPscFloor - std::min(psc, kPscFloor) + (n_rel == 0 ? kPscFloor : 0.0);
        s.f[2] = std::numeric_limits<double>::infinity();
    }
    return s;
}

} // namespace

Solution
evaluate(double p_ts, int n_rel, const OptContext& ctx)
{
    const double psc = p_sc_predict(p_ts, n_rel, ctx.link, ctx.radio);
    const double prnd = p_rnd(p_ts, n_rel, ctx.link.d_ds(), ctx.rho, ctx.link.range);
    return assemble(p_ts, n_rel, psc, prnd, ctx.energy);
}

Evaluator::Evaluator(const OptContext& ctx) : m_ctx(ctx), m_d_ds(ctx.link.d_ds())
{
    const double r_max = range_of_power(ctx.p_max, ctx.link.range);
    for (const auto& n : ctx.link.neighbors)
    {
        if (n.id == ctx.link.sender)
        {
            continue;
        }
        const double d_sr = distance(n.position, ctx.link.sender_position);
        const bool is_dest = n.id == ctx.link.destination;
        if (d_sr > r_max)
        {
            continue;
        }
        if (!is_dest && !(distance(n.position, ctx.link.destination_position) < m_d_ds))
        {
            continue;
        }
        Candidate c{d_sr, n.id, is_dest, {}};
        for (const auto& i : n.interferers)
        {
            if (i.node != ctx.link.sender)
            {
                c.interferers.push_back(i);
            }
        }
        m_candidates.push_back(std::move(c));
    }
    std::stable_sort(m_candidates.begin(), m_candidates.end(), [](const Candidate& a, const Candidate& b) {
        return a.d_sr < b.d_sr;
    });
}

Solution
Evaluator::operator()(double p_ts, int n_rel) const
{
    const double prnd = p_rnd(p_ts, n_rel, m_d_ds, m_ctx.rho, m_ctx.link.range);
    double psc = 0.0;
    if (n_rel > 0)
    {
        const double r_s = range_of_power(p_ts, m_ctx.link.range);
        struct Row
        {
            double p;
            NodeId id;
        };
        std::vector<Row> rows;
        rows.reserve(m_candidates.size());
        for (const auto& c : m_candidates)
        {
            if (c.d_sr > r_s)
            {
                break;
            }
            rows.push_back({p_si(p_ts, c.d_sr, c.interferers, m_ctx.radio), c.id});
        }
        std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
            return a.p != b.p ? a.p > b.p : a.id < b.id;
        });
        const auto take = std::min<std::size_t>(static_cast<std::size_t>(n_rel), rows.size());
        std::vector<double> top(take);
        for (std::size_t k = 0; k < take; ++k)
        {
            top[k] = rows[k].p;
        }
        psc = p_sc(top);
    }
    return assemble(p_ts, n_rel, psc, prnd, m_ctx.energy);
}

std::vector<Solution>
non_dominated(std::span<const Solution> solutions)
{
    std::vector<Solution> out;
    for (std::size_t i = 0; i < solutions.size(); ++i)
    {
        if (!solutions[i].feasible)
        {
            continue;
        }
        bool dominated = false;
        for (std::size_t j = 0; j < solutions.size() && !dominated; ++j)
        {
            dominated = j != i && solutions[j].feasible && dominates(solutions[j], solutions[i]);
        }
        if (!dominated)
        {
            out.push_back(solutions[i]);
        }
    }
    return out;
}

namespace {

struct Individual
{
    std::array<double, 2> genes{};
    Solution sol;
    int rank{0};
    double crowding{0.0};
};

Solution
decode_and_evaluate(const std::array<double, 2>& g, const OptContext& ctx, const Evaluator& eval)
{
    const double p = ctx.p_min + g[0] * (ctx.p_max - ctx.p_min);
    const int n = static_cast<int>(std::lround(g[1] * static_cast<double>(ctx.n_cap)));
    return eval(p, n);
}

/**
 * Staircase of 2-D points (f1, f2): f1 ascending, f2 strictly descending.
 * Answers "is some stored point <= (f1, f2) in both coordinates".
 */
class Staircase
{
  public:
    bool covers(double f1, double f2) const
    {
        auto it = m_steps.upper_bound(f1);
        if (it == m_steps.begin())
        {
            return false;
        }
        return std::prev(it)->second <= f2;
    }

    void insert(double f1, double f2)
    {
        if (covers(f1, f2))
        {
            return;
        }
        auto it = m_steps.lower_bound(f1);
        while (it != m_steps.end() && it->second >= f2)
        {
            it = m_steps.erase(it);
        }
        m_steps.emplace_hint(it, f1, f2);
    }

  private:
    std::map<double, double> m_steps;
};

/**
 * Fronts under constrained domination: feasible solutions by Pareto rank,
 * then infeasible ones by ascending violation. Indices ascend within a front.
 *
 * Feasible solutions are swept in lexicographic objective order, so every
 * earlier solution is no worse in f0 and only (f1, f2) decide dominance;
 * each goes to the first front none of whose members covers it, found by
 * binary search over the fronts' staircases.
 */
std::vector<std::vector<std::size_t>>
fast_non_dominated_sort(std::vector<Individual>& pop)
{
    std::vector<std::size_t> feasible;
    std::vector<std::size_t> infeasible;
    for (std::size_t i = 0; i < pop.size(); ++i)
    {
        (pop[i].sol.feasible ? feasible : infeasible).push_back(i);
    }
    std::sort(feasible.begin(), feasible.end(), [&](std::size_t a, std::size_t b) {
        return pop[a].sol.f < pop[b].sol.f;
    });

    std::vector<std::vector<std::size_t>> fronts;
    std::vector<Staircase> stairs;
    for (std::size_t g = 0; g < feasible.size();)
    {
        // Identical objective vectors do not dominate each other: place the group before inserting it.
        std::size_t end = g + 1;
        while (end < feasible.size() && pop[feasible[end]].sol.f == pop[feasible[g]].sol.f)
        {
            ++end;
        }
        const auto& f = pop[feasible[g]].sol.f;
        std::size_t lo = 0;
        std::size_t hi = fronts.size();
        while (lo < hi)
        {
            const std::size_t mid = (lo + hi) / 2;
            if (stairs[mid].covers(f[1], f[2]))
            {
                lo = mid + 1;
            }
            else
            {
                hi = mid;
            }
        }
        if (lo == fronts.size())
        {
            fronts.emplace_back();
            stairs.emplace_back();
        }
        for (std::size_t k = g; k < end; ++k)
        {
            fronts[lo].push_back(feasible[k]);
        }
        stairs[lo].insert(f[1], f[2]);
        g = end;
    }

    std::sort(infeasible.begin(), infeasible.end(), [&](std::size_t a, std::size_t b) {
        return pop[a].sol.violation < pop[b].sol.violation;
    });
    for (std::size_t k = 0; k < infeasible.size(); ++k)
    {
        if (k == 0 || pop[infeasible[k]].sol.violation != pop[infeasible[k - 1]].sol.violation)
        {
            fronts.emplace_back();
        }
        fronts.back().push_back(infeasible[k]);
    }

    for (std::size_t r = 0; r < fronts.size(); ++r)
    {
        std::sort(fronts[r].begin(), fronts[r].end());
        for (std::size_t i : fronts[r])
        {
            pop[i].rank = static_cast<int>(r);
        }
    }
    return fronts;
}

void
assign_crowding(std::vector<Individual>& pop, const std::vector<std::size_t>& front)
{
    for (std::size_t i : front)
    {
        pop[i].crowding = 0.0;
    }
    if (front.empty() || !pop[front.front()].sol.feasible)
    {
        return;
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> order(front);
    for (std::size_t m = 0; m < 3; ++m)
    {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pop[a].sol.f[m] < pop[b].sol.f[m];
        });
        const double lo = pop[order.front()].sol.f[m];
        const double hi = pop[order.back()].sol.f[m];
        pop[order.front()].crowding = inf;
        pop[order.back()].crowding = inf;
        if (!(hi > lo))
        {
            continue;
        }
        for (std::size_t k = 1; k + 1 < order.size(); ++k)
        {
            pop[order[k]].crowding += (pop[order[k + 1]].sol.f[m] - pop[order[k - 1]].sol.f[m]) / (hi - lo);
        }
    }
}

bool
crowded_less(const Individual& a, const Individual& b) noexcept
{
    if (a.rank != b.rank)
    {
        return a.rank < b.rank;
    }
    return a.crowding > b.crowding;
}

std::size_t
tournament(const std::vector<Individual>& pop, Rng& rng)
{
    const auto a = static_cast<std::size_t>(rng.below(pop.size()));
    const auto b = static_cast<std::size_t>(rng.below(pop.size()));
    if (crowded_less(pop[b], pop[a]))
    {
        return b;
    }
    return a;
}

void
sbx(double& x1, double& x2, double eta, Rng& rng)
{
    constexpr double lo = 0.0;
    constexpr double hi = 1.0;
    if (rng.uniform() > 0.5 || std::abs(x1 - x2) <= 1e-14)
    {
        return;
    }
    const double y1 = std::min(x1, x2);
    const double y2 = std::max(x1, x2);
    const double u = rng.uniform();
    const double expo = 1.0 / (eta + 1.0);

    auto spread = [&](double beta) {
        const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
        if (u <= 1.0 / alpha)
        {
            return std::pow(u * alpha, expo);
        }
        return std::pow(1.0 / (2.0 - u * alpha), expo);
    };

    const double betaq1 = spread(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
    double c1 = 0.5 * ((y1 + y2) - betaq1 * (y2 - y1));
    const double betaq2 = spread(1.0 + 2.0 * (hi - y2) / (y2 - y1));
    double c2 = 0.5 * ((y1 + y2) + betaq2 * (y2 - y1));
    c1 = std::clamp(c1, lo, hi);
    c2 = std::clamp(c2, lo, hi);
    if (rng.uniform() <= 0.5)
    {
        x1 = c2;
        x2 = c1;
    }
    else
    {
        x1 = c1;
        x2 = c2;
    }
}

void
polynomial_mutation(double& x, double eta, Rng& rng)
{
    const double d1 = x;
    const double d2 = 1.0 - x;
    const double u = rng.uniform();
    const double expo = 1.0 / (eta + 1.0);
    double dq = 0.0;
    if (u <= 0.5)
    {
        const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
        dq = std::pow(val, expo) - 1.0;
    }
    else
    {
        const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
        dq = 1.0 - std::pow(val, expo);
    }
    x = std::clamp(x + dq, 0.0, 1.0);
}

} // namespace

ParetoSet
nsga2_front(const OptContext& ctx, const GaConfig& ga)
{
    ctx.validate();
    ga.validate();
    const Evaluator eval(ctx);
    Rng rng(ga.seed);
    const auto n = static_cast<std::size_t>(ga.population);

    std::vector<Individual> pop(n);
    for (auto& ind : pop)
    {
        ind.genes = {rng.uniform(), rng.uniform()};
        ind.sol = decode_and_evaluate(ind.genes, ctx, eval);
    }
    for (const auto& front : fast_non_dominated_sort(pop))
    {
        assign_crowding(pop, front);
    }

    for (int gen = 0; gen < ga.generations; ++gen)
    {
        std::vector<Individual> combined = pop;
        combined.reserve(2 * n);
        for (std::size_t k = 0; k < n; k += 2)
        {
            Individual a = pop[tournament(pop, rng)];
            Individual b = pop[tournament(pop, rng)];
            if (rng.uniform() <= ga.crossover_prob)
            {
                for (std::size_t g = 0; g < 2; ++g)
                {
                    sbx(a.genes[g], b.genes[g], ga.crossover_eta, rng);
                }
            }
            for (auto* child : {&a, &b})
            {
                for (std::size_t g = 0; g < 2; ++g)
                {
                    if (rng.uniform() <= ga.mutation_prob)
                    {
                        polynomial_mutation(child->genes[g], ga.mutation_eta, rng);
                    }
                }
                child->sol = decode_and_evaluate(child->genes, ctx, eval);
                combined.push_back(*child);
            }
        }

        const auto fronts = fast_non_dominated_sort(combined);
        std::vector<Individual> next;
        next.reserve(n);
        for (const auto& front : fronts)
        {
            assign_crowding(combined, front);
            if (next.size() + front.size() <= n)
            {
                for (std::size_t i : front)
                {
                    next.push_back(combined[i]);
                }
                continue;
            }
            std::vector<std::size_t> order(front);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return combined[a].crowding > combined[b].crowding;
            });
            for (std::size_t k = 0; next.size() < n; ++k)
            {
                next.push_back(combined[order[k]]);
            }
            break;
        }
        pop = std::move(next);
    }

    ParetoSet out;
    for (const auto& ind : pop)
    {
        if (ind.rank == 0 && ind.sol.feasible)
        {
            out.members.push_back(ind.sol);
        }
    }
    std::sort(out.members.begin(), out.members.end(), [](const Solution& a, const Solution& b) {
        return a.p_ts != b.p_ts ? a.p_ts < b.p_ts : a.n_rel < b.n_rel;
    });
    out.members.erase(std::unique(out.members.begin(),
                                  out.members.end(),
                                  [](const Solution& a, const Solution& b) {
                                      return a.p_ts == b.p_ts && a.n_rel == b.n_rel;
                                  }),
                      out.members.end());
    if (out.members.empty())
    {
        throw EmptyFrontError("nsga2_front: no feasible solution found");
    }
    return out;
}

std::vector<Solution>
grid_points(const OptContext& ctx, const GridSpec& grid)
{
    ctx.validate();
    if (grid.power_steps < 1 || grid.n_min < 0 || grid.n_max < grid.n_min)
    {
        throw InvalidParameter("grid: need power_steps >= 1 and 0 <= n_min <= n_max");
    }
    const Evaluator eval(ctx);
    std::vector<Solution> points;
    for (int k = 0; k < grid.power_steps; ++k)
    {
        const double t = grid.power_steps == 1 ? 0.0 : static_cast<double>(k) / (grid.power_steps - 1);
        const double p = ctx.p_min + t * (ctx.p_max - ctx.p_min);
        for (int nr = grid.n_min; nr <= grid.n_max; ++nr)
        {
            Solution s = eval(p, nr);
            if (s.feasible)
            {
                points.push_back(s);
            }
        }
    }
    return points;
}

ParetoSet
brute_force_front(const OptContext& ctx, const GridSpec& grid)
{
    const auto points = grid_points(ctx, grid);
    return ParetoSet{non_dominated(points)};
}

} // namespace erto
