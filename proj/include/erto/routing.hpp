#pragma once

#include "erto/node.hpp"
#include "erto/pareto.hpp"

#include <string>
#include <string_view>

namespace erto {

enum class Algorithm
{
    Erto,
    Exor,
};

std::string_view to_string(Algorithm a) noexcept;
Algorithm algorithm_from_string(std::string_view s);

/// Protocol constants shared by every node in a run.
struct ProtocolParams
{
    Algorithm algorithm{Algorithm::Erto};
    RadioParams radio;
    RangeMap range;
    EnergyParams energy;
    double p_min{0.1};
    double p_max{0.8};
    double p_init{0.8};
    double rho{4e-5};
    int n_cap{6};
    GaConfig ga;
    double feasible_tol{0.01};
    double match_tol{0.01};
    std::uint64_t seed{1};
    double slot_s{0.005};
    int hop_limit{32};

    friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

/// Forwarder list for one transmission.
struct ForwardPlan
{
    std::vector<NodeId> candidates;  ///< ascending ETX, ties by id
    std::vector<double> etx;
    double power_w{0.0};
    bool direct{false};              ///< the destination is the only entry
};

/// Expected transmission count 1 / p_si. Throws UnreachableCandidate for p_si == 0.
double etx(double p_si);

/// Link context of a sender toward a destination, built from its neighbor table.
LinkContext link_context(const NodeState& sender, NodeId destination, Position destination_position, const RangeMap& range);

/**
 * Run the topology-control step for one destination: recompute the Pareto
 * front when the inputs changed, then keep or adjust the operating point.
 * Returns the operating point to use. Throws NoRouteError when nothing is
 * reachable.
 */
OperatingPoint control_power(NodeState& sender,
                             NodeId destination,
                             Position destination_position,
                             const ProtocolParams& params,
                             long period);

/**
 * Forwarder list for the next transmission. ERTO adjusts power through
 * control_power first; ExOR uses the fixed initial power. Throws
 * NoRouteError when the candidate set is empty.
 */
ForwardPlan plan_forward(NodeState& sender,
                         NodeId destination,
                         Position destination_position,
                         const ProtocolParams& params,
                         long period);

enum class ReceiveKind
{
    Deliver,    ///< this node is the destination
    Forward,    ///< take custody and forward after `delay`
    Duplicate,  ///< already held this packet; not accepted
    Overheard,  ///< not in the plan; may cancel a pending lower-priority copy
    HopLimit,   ///< accepted but the hop budget is spent
};

struct ReceiveAction
{
    ReceiveKind kind{ReceiveKind::Overheard};
    int rank{0};
    double delay{0.0};
    bool cancels_copy{false};  ///< a lower-priority copy held by this node is now redundant
};

/**
 * A held copy made redundant by overhearing `packet`: the same hop forwarded
 * by a node its plan ranks higher, or the packet already a hop further.
 * The source's own copy (rank 0) is never redundant.
 */
bool redundant_copy(const HeldCopy& copy, const Packet& packet);

/**
 * Reaction of `node` to decoding `packet`. `gap` is the spacing between
 * consecutive priority timers. Marks the packet as seen on custody.
 */
ReceiveAction on_receive(NodeState& node, const Packet& packet, double gap, int hop_limit);

} // namespace erto
