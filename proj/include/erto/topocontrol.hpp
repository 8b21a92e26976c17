#pragma once

#include "erto/pareto.hpp"

#include <cstddef>
#include <optional>

namespace erto {

/**
 * Front members whose P_rnd is within a relative tolerance of the best
 * P_rnd on the front, sorted by ascending P_sc.
 *
 * Members that would break the "P_sc order equals C_s order" property
 * (ties, or a pair better in both P_sc and C_s) are dropped and counted
 * in `dropped`; the closest-to-p_rnd_star member of each conflict is kept.
 */
struct FeasibleSet
{
    std::vector<Solution> members;
    double p_rnd_star{0.0};
    std::size_t dropped{0};

    bool empty() const noexcept { return members.empty(); }
    std::size_t size() const noexcept { return members.size(); }
};

/// Coefficients of variation of P_sc and C_s over a feasible set.
struct PerformanceStats
{
    double v_psc{0.0};
    double v_cs{0.0};
};

FeasibleSet feasible_set(const ParetoSet& front, double tol);

PerformanceStats performance_stats(const FeasibleSet& fs);

/// True iff sorting by P_sc and by C_s yields the same strict order.
bool order_consistent(const FeasibleSet& fs) noexcept;

/**
 * Middle member of the feasible set. For an odd size m the (m+1)/2-th by
 * ascending P_sc; for even m one of the two middle members: the one with
 * larger P_sc when v_psc >= v_cs, otherwise the one with smaller C_s.
 */
Solution balanced_select(const FeasibleSet& fs);

/// Same as balanced_select but with explicit statistics (lets tests scale them).
Solution balanced_select(const FeasibleSet& fs, const PerformanceStats& stats);

struct OperatingPoint
{
    double p_ts{0.0};
    int n_rel{0};
};

struct Decision
{
    bool keep{true};
    Solution target;  ///< meaningful when keep is false
};

/// True when some front member has n_rel equal and p_ts within match_tol (relative).
bool on_front(const OperatingPoint& current, const ParetoSet& front, double match_tol) noexcept;

/// Keep the current point if it is on the front, else adjust to the balanced selection.
Decision decide(const OperatingPoint& current, const ParetoSet& front, const FeasibleSet& fs, double match_tol = 0.01);

} // namespace erto
