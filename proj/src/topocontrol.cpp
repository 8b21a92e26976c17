#include "erto/topocontrol.hpp"

#include "erto/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace erto {

namespace {

/// i before j in P_sc order must also be before j in C_s order, with no ties.
bool
compatible(const Solution& a, const Solution& b) noexcept
{
    if (a.p_sc() == b.p_sc() || a.cost() == b.cost())
    {
        return false;
    }
    return (a.p_sc() < b.p_sc()) == (a.cost() < b.cost());
}

double
coefficient_of_variation(const std::vector<double>& v)
{
    if (v.empty())
    {
        return 0.0;
    }
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v)
    {
        ss += (x - mean) * (x - mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(v.size()));
    return mean != 0.0 ? sd / std::abs(mean) : 0.0;
}

} // namespace

FeasibleSet
feasible_set(const ParetoSet& front, double tol)
{
    if (front.empty())
    {
        throw EmptyFrontError("feasible_set: empty front");
    }
    if (!(tol >= 0.0 && tol < 1.0))
    {
        throw InvalidParameter("feasible_set: tolerance must lie in [0, 1)");
    }
    FeasibleSet fs;
    fs.p_rnd_star = front.members.front().p_rnd();
    for (const auto& s : front.members)
    {
        fs.p_rnd_star = std::max(fs.p_rnd_star, s.p_rnd());
    }

    std::vector<Solution> band;
    for (const auto& s : front.members)
    {
        if (s.p_rnd() >= (1.0 - tol) * fs.p_rnd_star)
        {
            band.push_back(s);
        }
    }
    // Closest to p_rnd_star first, so conflicts resolve in its favour.
    std::stable_sort(band.begin(), band.end(), [](const Solution& a, const Solution& b) {
        if (a.p_rnd() != b.p_rnd())
        {
            return a.p_rnd() > b.p_rnd();
        }
        return a.p_ts != b.p_ts ? a.p_ts < b.p_ts : a.n_rel < b.n_rel;
    });
    for (const auto& s : band)
    {
        const bool ok = std::all_of(fs.members.begin(), fs.members.end(), [&](const Solution& kept) {
            return compatible(kept, s);
        });
        if (ok)
        {
            fs.members.push_back(s);
        }
        else
        {
            ++fs.dropped;
        }
    }
    std::sort(fs.members.begin(), fs.members.end(), [](const Solution& a, const Solution& b) {
        return a.p_sc() < b.p_sc();
    });
    return fs;
}

PerformanceStats
performance_stats(const FeasibleSet& fs)
{
    std::vector<double> psc;
    std::vector<double> cs;
    for (const auto& s : fs.members)
    {
        psc.push_back(s.p_sc());
        cs.push_back(s.cost());
    }
    return {coefficient_of_variation(psc), coefficient_of_variation(cs)};
}

bool
order_consistent(const FeasibleSet& fs) noexcept
{
    for (std::size_t i = 0; i + 1 < fs.members.size(); ++i)
    {
        const auto& a = fs.members[i];
        const auto& b = fs.members[i + 1];
        if (!(a.p_sc() < b.p_sc()) || !(a.cost() < b.cost()))
        {
            return false;
        }
    }
    return true;
}

Solution
balanced_select(const FeasibleSet& fs)
{
    return balanced_select(fs, performance_stats(fs));
}

Solution
balanced_select(const FeasibleSet& fs, const PerformanceStats& stats)
{
    const std::size_t m = fs.members.size();
    if (m == 0)
    {
        throw InvalidParameter("balanced_select: empty feasible set");
    }
    if (m % 2 == 1)
    {
        return fs.members[(m + 1) / 2 - 1];
    }
    const Solution& lower = fs.members[m / 2 - 1];
    const Solution& upper = fs.members[m / 2];
    if (stats.v_psc >= stats.v_cs)
    {
        return lower.p_sc() > upper.p_sc() ? lower : upper;
    }
    return lower.cost() < upper.cost() ? lower : upper;
}

bool
on_front(const OperatingPoint& current, const ParetoSet& front, double match_tol) noexcept
{
    return std::any_of(front.members.begin(), front.members.end(), [&](const Solution& s) {
        return s.n_rel == current.n_rel && std::abs(s.p_ts - current.p_ts) <= match_tol * std::abs(s.p_ts);
    });
}

Decision
decide(const OperatingPoint& current, const ParetoSet& front, const FeasibleSet& fs, double match_tol)
{
    if (on_front(current, front, match_tol))
    {
        return Decision{true, {}};
    }
    return Decision{false, balanced_select(fs)};
}

} // namespace erto
