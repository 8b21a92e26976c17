#pragma once

#include "erto/geometry.hpp"
#include "erto/linkmodel.hpp"
#include "erto/topocontrol.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <unordered_set>
#include <vector>

namespace erto {

using PacketId = std::uint64_t;

/// What a node last heard from one of its one-hop neighbors.
struct NeighborEntry
{
    NodeId id{kNoNode};
    Position position;
    double last_timestamp{0.0};
    double power_w{0.0};              ///< neighbor's current data power
    bool active{false};               ///< neighbor is carrying data traffic
    double activity{0.0};             ///< 1 while the neighbor sources or relays data, else 0
    InterfererSnapshot interference;  ///< transmitters whose range covers the neighbor
};

/// Neighbor entries keyed by id; a newer timestamp always wins.
class NeighborTable
{
  public:
    /// Insert or overwrite; returns false when the entry is older than the stored one.
    bool update(NeighborEntry entry);

    /// Drop entries whose timestamp is older than now - window.
    void expire(double now, double window);

    const NeighborEntry* find(NodeId id) const;

    const std::vector<NeighborEntry>& entries() const noexcept { return m_entries; }
    std::size_t size() const noexcept { return m_entries.size(); }

  private:
    std::vector<NeighborEntry> m_entries;  ///< ascending id
};

/// Data packet header as carried over the air.
struct Packet
{
    PacketId id{0};
    std::uint32_t flow{0};
    NodeId source{kNoNode};
    NodeId destination{kNoNode};
    Position destination_position;
    double created{0.0};
    int hops{0};                  ///< transmissions completed before this one
    NodeId sender{kNoNode};       ///< current transmitter
    std::vector<NodeId> plan;     ///< forwarder priority list, best first
};

/// ERTO per-destination control state of one node.
struct DestinationControl
{
    OperatingPoint current;
    std::vector<double> context;  ///< flattened optimization inputs the front was computed from
    ParetoSet front;
    FeasibleSet feasible;
    long period{-1};              ///< hello period of the last decision
    bool has_front{false};
    std::uint64_t recomputations{0};
};

/// A packet copy a node holds custody of.
struct HeldCopy
{
    Packet packet;
    int rank{0};           ///< rank in the plan it was received under, 0 for the source
    int attempts{0};
    int no_route_retries{0};
    bool cancelled{false};
};

/// Full per-node state of the simulated network.
struct NodeState
{
    NodeId id{kNoNode};
    Position position;
    double power_w{0.0};
    double energy_j{0.0};
    double initial_energy_j{0.0};
    NeighborTable neighbors;
    std::unordered_set<PacketId> seen;       ///< packets this node has ever held
    std::deque<HeldCopy> queue;              ///< waiting for the radio
    std::vector<HeldCopy> parked;            ///< waiting for the next hello period (no route)
    std::map<PacketId, HeldCopy> pending;    ///< priority timers not yet fired
    std::map<NodeId, DestinationControl> control;
    double last_data_tx{-1e300};
    bool busy{false};

    bool alive() const noexcept { return energy_j > 0.0; }
};

} // namespace erto
