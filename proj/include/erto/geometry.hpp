#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace erto {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Planar position in meters.
struct Position
{
    double x{0.0};
    double y{0.0};

    friend bool operator==(const Position&, const Position&) = default;
};

double distance(Position a, Position b) noexcept;

/**
 * Power-to-range scaling r = r_ref * (p / p_ref)^(1/eta).
 *
 * Anchored by default at the maximum power (0.8 W) and the initial
 * transmission range (200 m).
 */
struct RangeMap
{
    double r_ref{200.0};
    double p_ref{0.8};
    double eta{2.0};

    /// Throws InvalidParameter unless r_ref > 0, p_ref > 0 and 2 <= eta <= 5.
    void validate() const;

    friend bool operator==(const RangeMap&, const RangeMap&) = default;
};

/// x^eta with the common integer exponents computed exactly by multiplication.
inline double
pow_eta(double x, double eta) noexcept
{
    if (eta == 2.0)
    {
        return x * x;
    }
    if (eta == 4.0)
    {
        const double x2 = x * x;
        return x2 * x2;
    }
    return std::pow(x, eta);
}

double range_of_power(double p_watts, const RangeMap& map);
double power_of_range(double r_meters, const RangeMap& map);

/**
 * Area of the candidate forwarding region: the intersection of the sender's
 * coverage disk C(s, r_s) with the disk C(d, d_ds) centred on the destination
 * and passing through the sender.
 *
 * Evaluated with the closed form
 *   r_s^2 acos(r_s / 2d) + d^2 [(pi - 2 acos(r_s / 2d)) - sin(pi - 2 acos(r_s / 2d))]
 * for r_s < 2 d_ds, and pi d_ds^2 once the sender disk swallows the
 * destination disk.
 */
double candidate_area(double r_s, double d_ds);

/// Standard intersection area of two disks with radii r1, r2 and centre distance d.
double lens_area(double r1, double r2, double d);

/// Lens-shaped candidate forwarding region for one sender/destination pair.
struct ForwardingRegion
{
    Position sender;
    Position destination;
    double r_s{0.0};
    double d_ds{0.0};
    double area{0.0};

    static ForwardingRegion make(Position sender, Position destination, double r_s);

    /// Inside the sender's range and strictly closer to the destination than the sender.
    bool contains(Position p) const noexcept;
};

/// Membership test shared by every candidate-set computation.
inline bool
in_forwarding_area(double d_from_sender, double d_to_destination, double r_s, double d_ds) noexcept
{
    return d_from_sender <= r_s && d_to_destination < d_ds;
}

/**
 * Nodes inside the candidate forwarding area of sender -> destination with
 * range r_s. Positions are indexed by node id. Sender and destination are
 * excluded; the result is in ascending id order.
 */
std::vector<NodeId> candidate_set(NodeId sender, NodeId destination, std::span<const Position> positions, double r_s);

} // namespace erto
