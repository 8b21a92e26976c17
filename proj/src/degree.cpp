#include "erto/degree.hpp"

#include "erto/error.hpp"
#include "erto/random.hpp"

#include <cmath>

namespace erto {

double
poisson_pmf(double mean, int n)
{
    if (n < 0)
    {
        throw InvalidParameter("poisson_pmf: negative count");
    }
    if (mean <= 0.0)
    {
        return n == 0 ? 1.0 : 0.0;
    }
    const double k = static_cast<double>(n);
    return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

double
p_rnd(double p_ts, int n_rel, double d_ds, double rho, const RangeMap& map)
{
    if (n_rel < 0)
    {
        throw InvalidParameter("p_rnd: n_rel must be non-negative");
    }
    if (!(rho > 0.0))
    {
        throw InvalidParameter("p_rnd: density must be positive");
    }
    const double area = candidate_area(range_of_power(p_ts, map), d_ds);
    return poisson_pmf(rho * area, n_rel);
}

double
DegreeHistogram::frequency(int n) const
{
    if (n < 0 || static_cast<std::size_t>(n) >= counts.size() || placements == 0)
    {
        return 0.0;
    }
    return static_cast<double>(counts[static_cast<std::size_t>(n)]) / static_cast<double>(placements);
}

double
DegreeHistogram::total_variation(double mean) const
{
    double tv = 0.0;
    double covered = 0.0;
    for (std::size_t n = 0; n < counts.size(); ++n)
    {
        const double pmf = poisson_pmf(mean, static_cast<int>(n));
        covered += pmf;
        tv += std::abs(frequency(static_cast<int>(n)) - pmf);
    }
    // Model mass beyond the largest observed degree.
    tv += std::max(0.0, 1.0 - covered);
    return 0.5 * tv;
}

DegreeHistogram
empirical_degree_check(std::uint64_t placements, double rho, const ForwardingRegion& region, std::uint64_t seed)
{
    DegreeHistogram hist;
    hist.placements = placements;
    hist.counts.assign(1, 0);
    if (placements == 0)
    {
        return hist;
    }

    const double half = region.d_ds;
    const double x0 = region.destination.x - half;
    const double y0 = region.destination.y - half;
    const double side = 2.0 * half;
    const double mean_count = rho * side * side;

    Rng rng(seed);
    for (std::uint64_t k = 0; k < placements; ++k)
    {
        const std::uint64_t nodes = rng.poisson(mean_count);
        std::size_t degree = 0;
        for (std::uint64_t i = 0; i < nodes; ++i)
        {
            const Position p{x0 + side * rng.uniform(), y0 + side * rng.uniform()};
            if (region.area > 0.0 && region.contains(p))
            {
                ++degree;
            }
        }
        if (degree >= hist.counts.size())
        {
            hist.counts.resize(degree + 1, 0);
        }
        ++hist.counts[degree];
    }
    return hist;
}

} // namespace erto
