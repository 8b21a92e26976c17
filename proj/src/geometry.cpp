#include "erto/geometry.hpp"

#include "erto/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace erto {

double
distance(Position a, Position b) noexcept
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

void
RangeMap::validate() const
{
    if (!(r_ref > 0.0) || !std::isfinite(r_ref))
    {
        throw InvalidParameter("range map: r_ref must be positive");
    }
    if (!(p_ref > 0.0) || !std::isfinite(p_ref))
    {
        throw InvalidParameter("range map: p_ref must be positive");
    }
    if (!(eta >= 2.0 && eta <= 5.0))
    {
        throw InvalidParameter("range map: eta must lie in [2, 5]");
    }
}

double
range_of_power(double p_watts, const RangeMap& map)
{
    if (!(p_watts > 0.0))
    {
        throw InvalidParameter("range_of_power: power must be positive, got " + std::to_string(p_watts));
    }
    const double ratio = p_watts / map.p_ref;
    return map.r_ref * (map.eta == 2.0 ? std::sqrt(ratio) : std::pow(ratio, 1.0 / map.eta));
}

double
power_of_range(double r_meters, const RangeMap& map)
{
    if (!(r_meters > 0.0))
    {
        throw InvalidParameter("power_of_range: range must be positive");
    }
    return map.p_ref * pow_eta(r_meters / map.r_ref, map.eta);
}

double
candidate_area(double r_s, double d_ds)
{
    if (!(r_s > 0.0) || !(d_ds > 0.0))
    {
        throw InvalidParameter("candidate_area: r_s and d_ds must be positive");
    }
    constexpr double pi = std::numbers::pi;
    if (r_s >= 2.0 * d_ds)
    {
        return pi * d_ds * d_ds;
    }
    const double half_angle = std::acos(r_s / (2.0 * d_ds));
    const double wedge = pi - 2.0 * half_angle;
    return r_s * r_s * half_angle + d_ds * d_ds * (wedge - std::sin(wedge));
}

double
lens_area(double r1, double r2, double d)
{
    constexpr double pi = std::numbers::pi;
    if (d >= r1 + r2)
    {
        return 0.0;
    }
    if (d <= std::abs(r1 - r2))
    {
        const double r = std::min(r1, r2);
        return pi * r * r;
    }
    const double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0));
    const double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0));
    const double kite = 0.5 * std::sqrt(std::max(0.0, (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)));
    return r1 * r1 * a1 + r2 * r2 * a2 - kite;
}

ForwardingRegion
ForwardingRegion::make(Position sender, Position destination, double r_s)
{
    ForwardingRegion region;
    region.sender = sender;
    region.destination = destination;
    region.r_s = r_s;
    region.d_ds = distance(sender, destination);
    if (!(region.d_ds > 0.0))
    {
        throw InvalidParameter("forwarding region: sender and destination coincide");
    }
    region.area = candidate_area(r_s, region.d_ds);
    return region;
}

bool
ForwardingRegion::contains(Position p) const noexcept
{
    return in_forwarding_area(distance(p, sender), distance(p, destination), r_s, d_ds);
}

std::vector<NodeId>
candidate_set(NodeId sender, NodeId destination, std::span<const Position> positions, double r_s)
{
    const auto n = positions.size();
    if (sender >= n || destination >= n)
    {
        throw LookupError("candidate_set: unknown node id");
    }
    if (sender == destination)
    {
        throw InvalidParameter("candidate_set: sender equals destination");
    }
    const Position s = positions[sender];
    const Position d = positions[destination];
    const double d_ds = distance(s, d);

    std::vector<NodeId> out;
    for (NodeId i = 0; i < n; ++i)
    {
        if (i == sender || i == destination)
        {
            continue;
        }
        if (in_forwarding_area(distance(positions[i], s), distance(positions[i], d), r_s, d_ds))
        {
            out.push_back(i);
        }
    }
    return out;
}

} // namespace erto
