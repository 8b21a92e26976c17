#include "erto/energy.hpp"

#include "erto/error.hpp"

#include <string>

namespace erto {

void
EnergyParams::validate() const
{
    if (!(e_r_w > 0.0) || !(xi > 0.0) || !(packet_bits > 0.0) || !(bandwidth_bps > 0.0))
    {
        throw InvalidParameter("energy params: E_r, xi, L and B must be positive");
    }
}

double
expected_attempts(double p_sc)
{
    if (!(p_sc <= 1.0))
    {
        throw InvalidParameter("expected_attempts: p_sc above 1");
    }
    if (!(p_sc > kPscFloor))
    {
        throw SaturationError("expected_attempts: p_sc " + std::to_string(p_sc) + " at or below the usable floor");
    }
    return 1.0 / p_sc;
}

double
expected_cost(double p_ts, int n_rel, double p_sc, const EnergyParams& params)
{
    if (n_rel <= 0)
    {
        throw InvalidParameter("expected_cost: n_rel must be at least 1");
    }
    if (!(p_ts > 0.0))
    {
        throw InvalidParameter("expected_cost: transmission power must be positive");
    }
    expected_attempts(p_sc);
    // E_s = per-attempt energy * (1 / p_sc) expected attempts; the cost divides once more by p_sc.
    const double per_attempt = (static_cast<double>(n_rel) * params.e_r_w + params.xi * p_ts) * params.delta();
    return per_attempt / (p_sc * p_sc);
}

} // namespace erto
