#pragma once

#include "erto/geometry.hpp"

#include <cstdint>
#include <vector>

namespace erto {

/// Uniform node density.
struct DensityModel
{
    double rho{0.0};  ///< nodes per square meter
};

/// Poisson pmf mean^n e^-mean / n!, evaluated in log space.
double poisson_pmf(double mean, int n);

/**
 * Probability that exactly n_rel nodes fall in the candidate forwarding area
 * of a sender transmitting at p_ts toward a destination d_ds away.
 */
double p_rnd(double p_ts, int n_rel, double d_ds, double rho, const RangeMap& map);

/// Observed forwarding-degree histogram from repeated random placements.
struct DegreeHistogram
{
    std::vector<std::uint64_t> counts;  ///< counts[n] = placements with degree n
    std::uint64_t placements{0};

    double frequency(int n) const;

    /// 0.5 * sum_n |frequency(n) - poisson_pmf(mean, n)|, tail included.
    double total_variation(double mean) const;
};

/**
 * Scatter Poisson(rho * A) nodes uniformly over the bounding square of the
 * destination disk, count those inside the region, repeat.
 */
DegreeHistogram empirical_degree_check(std::uint64_t placements, double rho, const ForwardingRegion& region, std::uint64_t seed);

} // namespace erto
