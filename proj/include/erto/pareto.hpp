#pragma once

#include "erto/energy.hpp"
#include "erto/linkmodel.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace erto {

/**
 * A decision vector (p_ts, n_rel) with its objective vector
 * (-P_sc, -P_rnd, C_s), all minimized.
 */
struct Solution
{
    double p_ts{0.0};
    int n_rel{0};
    std::array<double, 3> f{};
    bool feasible{false};
    double violation{0.0};  ///< how far P_sc falls short of the usable floor

    double p_sc() const noexcept { return -f[0]; }
    double p_rnd() const noexcept { return -f[1]; }
    double cost() const noexcept { return f[2]; }
};

/// Strong Pareto dominance over the objective vectors (minimization).
bool dominates(const Solution& a, const Solution& b) noexcept;

struct ParetoSet
{
    std::vector<Solution> members;

    bool empty() const noexcept { return members.empty(); }
    std::size_t size() const noexcept { return members.size(); }
};

struct GaConfig
{
    int population{60};
    int generations{100};
    double crossover_prob{0.9};
    double crossover_eta{15.0};
    double mutation_prob{0.5};
    double mutation_eta{20.0};
    std::uint64_t seed{1};

    void validate() const;

    friend bool operator==(const GaConfig&, const GaConfig&) = default;
};

/// Inputs of one sender's optimization toward one destination.
struct OptContext
{
    LinkContext link;
    RadioParams radio;
    EnergyParams energy;
    double rho{0.0};
    double p_min{0.1};
    double p_max{0.8};
    int n_cap{0};

    void validate() const;
};

/// Expected neighbor count at maximum power, rounded up: ceil(rho * pi * r(P_max)^2).
int default_n_cap(double rho, const RangeMap& map, double p_max);

/// Objectives of one decision vector by direct calls into the link, degree and energy models.
Solution evaluate(double p_ts, int n_rel, const OptContext& ctx);

/**
 * Precomputed evaluator for repeated calls on one context. Produces the same
 * values as evaluate() without rebuilding the candidate list each time.
 */
class Evaluator
{
  public:
    explicit Evaluator(const OptContext& ctx);

    Solution operator()(double p_ts, int n_rel) const;

  private:
    struct Candidate
    {
        double d_sr;
        NodeId id;
        bool is_destination;
        InterfererSnapshot interferers;
    };

    const OptContext& m_ctx;
    double m_d_ds;
    std::vector<Candidate> m_candidates;  ///< ascending d_sr
};

/// Drop dominated and infeasible solutions (all-pairs check).
std::vector<Solution> non_dominated(std::span<const Solution> solutions);

/**
 * NSGA-II over genes in [0,1]^2 decoded as
 *   p_ts = p_min + g0 (p_max - p_min),  n_rel = round(g1 * n_cap).
 * Returns the feasible first front of the final population with duplicate
 * decision vectors removed, ordered by (p_ts, n_rel). Throws EmptyFrontError
 * when nothing feasible survives.
 */
ParetoSet nsga2_front(const OptContext& ctx, const GaConfig& ga);

struct GridSpec
{
    int power_steps{200};  ///< evenly spaced over [p_min, p_max], ends included
    int n_min{0};
    int n_max{10};
};

/// Exact Pareto front of the grid by exhaustive evaluation.
ParetoSet brute_force_front(const OptContext& ctx, const GridSpec& grid);

/// Every feasible grid point, in grid order.
std::vector<Solution> grid_points(const OptContext& ctx, const GridSpec& grid);

/// Dominated hypervolume of a 3-objective point set with respect to ref (minimization).
double hypervolume(std::span<const std::array<double, 3>> points, const std::array<double, 3>& ref);
double hypervolume(std::span<const Solution> solutions, const std::array<double, 3>& ref);

} // namespace erto
