#pragma once

namespace erto {

/// Below this delivery probability a link is treated as unusable.
inline constexpr double kPscFloor = 1e-6;

struct EnergyParams
{
    double e_r_w{0.05};            ///< reception power
    double xi{1.0};                ///< transmit consumption coefficient
    double packet_bits{1024.0};    ///< L
    double bandwidth_bps{15000.0}; ///< B

    /// Airtime of one data packet, L / B.
    double delta() const noexcept { return packet_bits / bandwidth_bps; }

    void validate() const;

    friend bool operator==(const EnergyParams&, const EnergyParams&) = default;
};

/// Mean number of attempts until the candidate set receives: 1 / p_sc.
double expected_attempts(double p_sc);

/// One-hop expected energy cost (n_rel E_r + xi p_ts) delta / p_sc^2.
double expected_cost(double p_ts, int n_rel, double p_sc, const EnergyParams& params);

} // namespace erto
