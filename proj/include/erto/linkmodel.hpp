#pragma once

#include "erto/geometry.hpp"
#include "erto/random.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace erto {

/// Physical-layer constants of the SINR reception model.
struct RadioParams
{
    double beta{3.16};     ///< SINR decoding threshold (linear)
    double eta{2.0};       ///< path-loss exponent
    double K{6.81e-4};     ///< overall antenna gain G_t G_r lambda^2 / ((4 pi)^2 Gamma)
    double G{10.0};        ///< processing gain applied to interference
    double noise_w{1e-9};  ///< receiver noise power

    /// K from its factors: G_t G_r lambda^2 / ((4 pi)^2 Gamma).
    static double antenna_gain(double g_t, double g_r, double wavelength_m, double system_loss);

    void validate() const;

    friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

/// One potentially active transmitter around a receiver.
struct Interferer
{
    double power_w{0.0};
    double distance_m{0.0};
    double activity{1.0};
    NodeId node{kNoNode};
};

using InterfererSnapshot = std::vector<Interferer>;

/**
 * Closed-form probability that a Rayleigh-faded transmission of power p_ts
 * over d_rs meters clears the SINR threshold:
 *
 *   exp(-beta P_n d^eta / (p K)) * prod_i [a_i / (1 + beta P_i (d / d_i)^eta / (G p)) + (1 - a_i)]
 *
 * where a_i is the interferer's activity probability.
 */
double p_si(double p_ts, double d_rs, std::span<const Interferer> interferers, const RadioParams& params);

struct MonteCarloEstimate
{
    double p{0.0};
    double std_error{0.0};
    std::uint64_t samples{0};
};

/**
 * Sampling estimate of p_si: each sample draws unit-mean exponential fading
 * for the signal and every interferer (the latter included with its activity
 * probability) and tests SINR >= beta.
 */
MonteCarloEstimate p_si_montecarlo(double p_ts,
                                   double d_rs,
                                   std::span<const Interferer> interferers,
                                   const RadioParams& params,
                                   std::uint64_t samples,
                                   std::uint64_t seed);

/// One fading draw: does this particular reception succeed?
bool sample_reception(double p_ts,
                      double d_rs,
                      std::span<const Interferer> interferers,
                      const RadioParams& params,
                      Rng& rng);

/// 1 - prod(1 - p_i); empty input gives 0.
double p_sc(std::span<const double> p_si_values);

/// A neighbor as seen by a sender planning a transmission.
struct CandidateLink
{
    NodeId id{kNoNode};
    Position position;
    InterfererSnapshot interferers;  ///< as reported by the neighbor; may include the sender
};

/// Everything a sender knows when predicting delivery toward a destination.
struct LinkContext
{
    NodeId sender{kNoNode};
    Position sender_position;
    NodeId destination{kNoNode};
    Position destination_position;
    std::vector<CandidateLink> neighbors;
    RangeMap range;

    double d_ds() const { return distance(sender_position, destination_position); }
};

/// Per-candidate prediction at one transmission power.
struct LinkEstimate
{
    std::vector<NodeId> members;               ///< candidate ids, descending p_si
    std::vector<double> p_si;                  ///< aligned with members
    std::vector<InterfererSnapshot> snapshots; ///< interferers used, sender excluded
    double p_sc{0.0};
};

/**
 * Predict delivery from the sender to its candidate set at range_of_power(p_ts).
 * A neighbor is a candidate when it lies in the forwarding area; the
 * destination itself counts when it is within range.
 */
LinkEstimate estimate_links(double p_ts, const LinkContext& ctx, const RadioParams& params);

/// p_sc over the best min(n_rel, |set|) candidates at power p_ts.
double p_sc_predict(double p_ts, int n_rel, const LinkContext& ctx, const RadioParams& params);

} // namespace erto
