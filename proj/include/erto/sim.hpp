#pragma once

#include "erto/node.hpp"
#include "erto/routing.hpp"
#include "erto/trace.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace erto {

struct Area
{
    double width{1000.0};
    double height{1000.0};

    double size() const noexcept { return width * height; }

    friend bool operator==(const Area&, const Area&) = default;
};

/// Everything one simulation run needs besides the random seed.
struct SimConfig
{
    ProtocolParams protocol;
    Area area;
    int n_nodes{40};
    int n_cbr{20};
    double duration_s{300.0};
    double initial_energy_j{5.0};
    double cbr_rate_pps{0.2};      ///< packets per second per flow
    double hello_period_s{1.0};
    int staleness_periods{3};
    double hello_bits{128.0};
    int retx_budget{7};            ///< retransmissions after the first attempt
    int no_route_retries{3};       ///< hello periods a copy may wait for a route
    std::size_t queue_capacity{64};
    int backoff_window{8};         ///< initial contention window in slots, doubled per retry up to 2^4
    bool carrier_sense{true};      ///< defer while a transmission covering the node is on the air
    std::uint64_t seed{1};

    void validate() const;

    /// Spacing between consecutive forwarder priority timers.
    double priority_gap() const noexcept { return protocol.energy.delta() + 2.0 * protocol.slot_s; }

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct Flow
{
    std::uint32_t id{0};
    NodeId source{kNoNode};
    NodeId destination{kNoNode};
};

struct World
{
    SimConfig config;
    std::vector<Position> positions;
    std::vector<Flow> flows;
};

/// Uniform placement over the area and distinct random ordered CBR pairs.
World build_scenario(const SimConfig& config);

/// A world with given positions and flows (validated).
World make_world(const SimConfig& config, std::vector<Position> positions, std::vector<Flow> flows);

enum class DropReason : std::uint8_t
{
    QueueOverflow,
    RetxExhausted,
    NoRoute,
    HopLimit,
    NodeDead,
};

inline constexpr std::size_t kDropReasons = 5;

std::string_view to_string(DropReason r) noexcept;

enum class EnergyUse : std::uint8_t
{
    HelloTx,
    HelloRx,
    DataTx,
    DataRx,
};

struct MetricsRecord
{
    std::uint64_t sent{0};
    std::uint64_t delivered{0};
    std::uint64_t in_flight{0};
    double pdr{0.0};             ///< NaN when nothing was sent
    double delay_s{0.0};         ///< mean over first deliveries, NaN when none
    double throughput_bps{0.0};
    double residual_j{0.0};
    double initial_j{0.0};
    double cfs_mean{0.0};        ///< mean forwarder list length over data transmissions
    std::uint64_t duplicates{0};
    std::array<std::uint64_t, kDropReasons> drops{};
    std::uint64_t data_tx{0};
    std::uint64_t hello_tx{0};
    double debited_j{0.0};       ///< sum of every energy debit applied
    std::array<double, 4> energy_by_use{};  ///< indexed by EnergyUse

    std::uint64_t dropped() const noexcept;
};

struct RunResult
{
    MetricsRecord metrics;
    std::vector<TraceEvent> trace;
    std::vector<double> residual_per_node;
    std::vector<double> debited_per_node;
};

/// Called with each front an ERTO node computes and the feasible set taken from it.
using FrontObserver = std::function<void(const ParetoSet& front, const FeasibleSet& feasible)>;

/// Run the discrete-event simulation to config.duration_s.
RunResult run(const World& world, bool record_trace = false, const FrontObserver& observer = {});

/// A data transmission currently or recently on the air.
struct AirTx
{
    NodeId sender{kNoNode};
    Position position;
    double power_w{0.0};
    double start{0.0};
    double end{0.0};
};

/**
 * Interferers seen by a receiver at `rx` for a transmission by `self`
 * occupying [start, end): every other overlapping transmission whose range
 * covers the receiver.
 */
InterfererSnapshot air_interferers(NodeId receiver,
                                   Position rx,
                                   const AirTx& self,
                                   std::span<const AirTx> air,
                                   const RangeMap& range);

/// One reception outcome as the simulator resolves it: a single fading draw.
bool resolve_reception(NodeId receiver,
                       Position rx,
                       const AirTx& self,
                       std::span<const AirTx> air,
                       const RadioParams& radio,
                       const RangeMap& range,
                       Rng& rng);

} // namespace erto
