#include "erto/sim.hpp"

#include "erto/error.hpp"
#include "erto/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <unordered_set>

namespace erto {

void
SimConfig::validate() const
{
    protocol.radio.validate();
    protocol.range.validate();
    protocol.energy.validate();
    protocol.ga.validate();
    if (!(area.width > 0.0) || !(area.height > 0.0))
    {
        throw InvalidParameter("area must be positive");
    }
    if (n_nodes < 2)
    {
        throw InvalidParameter("n_nodes must be at least 2");
    }
    if (n_cbr < 0)
    {
        throw InvalidParameter("n_cbr must be non-negative");
    }
    if (!(duration_s > 0.0))
    {
        throw InvalidParameter("duration must be positive");
    }
    if (!(initial_energy_j > 0.0))
    {
        throw InvalidParameter("initial energy must be positive");
    }
    if (!(cbr_rate_pps > 0.0))
    {
        throw InvalidParameter("cbr rate must be positive");
    }
    if (!(hello_period_s > 0.0) || staleness_periods < 1 || !(hello_bits > 0.0))
    {
        throw InvalidParameter("hello period, staleness and size must be positive");
    }
    if (retx_budget < 0 || no_route_retries < 0 || queue_capacity < 1 || backoff_window < 1)
    {
        throw InvalidParameter("retry budgets must be non-negative and the queue non-empty");
    }
    const auto& p = protocol;
    if (!(p.p_min > 0.0) || !(p.p_max >= p.p_min) || p.p_init < p.p_min || p.p_init > p.p_max)
    {
        throw InvalidParameter("need 0 < p_min <= p_init <= p_max");
    }
    if (!(p.slot_s > 0.0) || p.hop_limit < 1)
    {
        throw InvalidParameter("slot and hop limit must be positive");
    }
    if (!(p.feasible_tol >= 0.0 && p.feasible_tol < 1.0) || !(p.match_tol >= 0.0))
    {
        throw InvalidParameter("tolerances out of range");
    }
}

World
make_world(const SimConfig& config, std::vector<Position> positions, std::vector<Flow> flows)
{
    config.validate();
    const auto n = positions.size();
    for (const auto& f : flows)
    {
        if (f.source >= n || f.destination >= n)
        {
            throw LookupError("flow endpoint outside the node set");
        }
        if (f.source == f.destination)
        {
            throw InvalidParameter("flow source equals destination");
        }
    }
    World w;
    w.config = config;
    w.config.n_nodes = static_cast<int>(n);
    w.config.n_cbr = static_cast<int>(flows.size());
    w.positions = std::move(positions);
    w.flows = std::move(flows);
    return w;
}

World
build_scenario(const SimConfig& config)
{
    config.validate();
    const auto n = static_cast<std::uint64_t>(config.n_nodes);
    const auto pairs = n * (n - 1);
    if (static_cast<std::uint64_t>(config.n_cbr) > pairs)
    {
        throw InvalidParameter("more CBR pairs than distinct ordered node pairs");
    }
    Rng rng(mix_seed(config.seed, 0));
    std::vector<Position> pos(n);
    for (auto& p : pos)
    {
        p.x = rng.uniform(0.0, config.area.width);
        p.y = rng.uniform(0.0, config.area.height);
    }
    // Floyd's sampling of distinct ordered pairs, indexed as s * (n - 1) + j.
    std::set<std::uint64_t> chosen;
    std::vector<std::uint64_t> order;
    for (std::uint64_t j = pairs - static_cast<std::uint64_t>(config.n_cbr); j < pairs; ++j)
    {
        const std::uint64_t t = rng.below(j + 1);
        const std::uint64_t pick = chosen.contains(t) ? j : t;
        chosen.insert(pick);
        order.push_back(pick);
    }
    std::vector<Flow> flows;
    for (std::uint64_t k = 0; k < order.size(); ++k)
    {
        const auto s = order[k] / (n - 1);
        auto d = order[k] % (n - 1);
        if (d >= s)
        {
            ++d;
        }
        flows.push_back({static_cast<std::uint32_t>(k), static_cast<NodeId>(s), static_cast<NodeId>(d)});
    }
    return make_world(config, std::move(pos), std::move(flows));
}

std::string_view
to_string(DropReason r) noexcept
{
    switch (r)
    {
    case DropReason::QueueOverflow: return "queue_overflow";
    case DropReason::RetxExhausted: return "retx_exhausted";
    case DropReason::NoRoute: return "no_route";
    case DropReason::HopLimit: return "hop_limit";
    case DropReason::NodeDead: return "node_dead";
    }
    return "unknown";
}

std::uint64_t
MetricsRecord::dropped() const noexcept
{
    std::uint64_t total = 0;
    for (auto d : drops)
    {
        total += d;
    }
    return total;
}

InterfererSnapshot
air_interferers(NodeId receiver, Position rx, const AirTx& self, std::span<const AirTx> air, const RangeMap& range)
{
    InterfererSnapshot out;
    for (const auto& a : air)
    {
        if (a.sender == self.sender || a.sender == receiver)
        {
            continue;
        }
        if (!(a.start < self.end && a.end > self.start))
        {
            continue;
        }
        const double d = distance(a.position, rx);
        if (d <= range_of_power(a.power_w, range))
        {
            out.push_back({a.power_w, d, 1.0, a.sender});
        }
    }
    return out;
}

bool
resolve_reception(NodeId receiver,
                  Position rx,
                  const AirTx& self,
                  std::span<const AirTx> air,
                  const RadioParams& radio,
                  const RangeMap& range,
                  Rng& rng)
{
    const auto interferers = air_interferers(receiver, rx, self, air, range);
    return sample_reception(self.power_w, distance(self.position, rx), interferers, radio, rng);
}

namespace {

enum class EventKind : std::uint8_t
{
    Hello,
    Emit,
    TxStart,
    TxEnd,
    Timer,
};

struct Event
{
    double time;
    std::uint64_t seq;
    EventKind kind;
    std::uint64_t a;  // node, flow or transmission index
    std::uint64_t b;  // packet id for timers

    bool operator>(const Event& o) const noexcept { return time != o.time ? time > o.time : seq > o.seq; }
};

struct OnAir
{
    AirTx tx;
    HeldCopy copy;
    std::vector<NodeId> plan;
};

struct Fate
{
    int live{0};
    bool delivered{false};
    std::optional<DropReason> last_drop;
    std::uint64_t hop_mask{0};
};

struct NearNode
{
    NodeId id;
    double d;
};

class Simulator
{
  public:
    Simulator(const World& world, bool trace, const FrontObserver& observer)
        : m_cfg(world.config)
        , m_world(world)
        , m_trace_on(trace)
        , m_observer(observer)
        , m_rng(mix_seed(world.config.seed, 1))
        , m_traffic(mix_seed(world.config.seed, 3))
    {
        m_params = m_cfg.protocol;
        m_params.seed = m_cfg.seed;
        m_params.rho = static_cast<double>(world.positions.size()) / m_cfg.area.size();
        m_params.n_cap = default_n_cap(m_params.rho, m_params.range, m_params.p_max);
        const auto n = world.positions.size();
        m_nodes.resize(n);
        m_activity.assign(n, 0.0);
        m_debited.assign(n, 0.0);
        m_handed_off.resize(n);
        m_near.resize(n);
        const double r_max = range_of_power(m_params.p_max, m_params.range);
        for (NodeId i = 0; i < n; ++i)
        {
            auto& s = m_nodes[i];
            s.id = i;
            s.position = world.positions[i];
            s.power_w = m_params.p_init;
            s.energy_j = s.initial_energy_j = m_cfg.initial_energy_j;
            for (NodeId j = 0; j < n; ++j)
            {
                const double d = distance(world.positions[i], world.positions[j]);
                if (j != i && d <= r_max)
                {
                    m_near[i].push_back({j, d});
                }
            }
        }
        m_delta = m_params.energy.delta();
        m_hello_delta = m_cfg.hello_bits / m_params.energy.bandwidth_bps;
    }

    RunResult execute()
    {
        push(0.0, EventKind::Hello, 0);
        for (std::uint32_t k = 0; k < m_world.flows.size(); ++k)
        {
            const double start = m_cfg.hello_period_s + m_traffic.uniform() / m_cfg.cbr_rate_pps;
            push(start, EventKind::Emit, k);
        }
        while (!m_events.empty())
        {
            const Event e = m_events.top();
            if (e.time > m_cfg.duration_s)
            {
                break;
            }
            m_events.pop();
            m_now = e.time;
            switch (e.kind)
            {
            case EventKind::Hello: on_hello(); break;
            case EventKind::Emit: on_emit(static_cast<std::uint32_t>(e.a)); break;
            case EventKind::TxStart: on_tx_start(static_cast<NodeId>(e.a)); break;
            case EventKind::TxEnd: on_tx_end(e.a); break;
            case EventKind::Timer: on_timer(static_cast<NodeId>(e.a), e.b); break;
            }
        }
        return finish();
    }

  private:
    void push(double t, EventKind k, std::uint64_t a, std::uint64_t b = 0)
    {
        m_events.push(Event{t, m_seq++, k, a, b});
    }

    void trace(NodeId node, const char* kind, PacketId pid, double power, int rank)
    {
        if (m_trace_on)
        {
            m_trace.push_back(TraceEvent{m_now, node, kind, pid, power, rank});
        }
    }

    void debit(NodeId i, double amount, EnergyUse use)
    {
        auto& s = m_nodes[i];
        if (!s.alive())
        {
            return;
        }
        const double taken = std::min(amount, s.energy_j);
        s.energy_j -= taken;
        m_debited[i] += taken;
        m_metrics.debited_j += taken;
        m_metrics.energy_by_use[static_cast<int>(use)] += taken;
        if (s.energy_j <= 0.0)
        {
            s.energy_j = 0.0;
            kill(i);
        }
    }

    void kill(NodeId i)
    {
        auto& s = m_nodes[i];
        auto drop_copy = [&](const HeldCopy& c) {
            if (!c.cancelled)
            {
                drop(i, c.packet.id, DropReason::NodeDead);
            }
        };
        for (const auto& c : s.queue)
        {
            drop_copy(c);
        }
        for (const auto& c : s.parked)
        {
            drop_copy(c);
        }
        for (const auto& [pid, c] : s.pending)
        {
            drop_copy(c);
        }
        s.queue.clear();
        s.parked.clear();
        s.pending.clear();
    }

    void drop(NodeId node, PacketId pid, DropReason reason)
    {
        static constexpr const char* names[] = {
            "drop_queue_overflow", "drop_retx_exhausted", "drop_no_route", "drop_hop_limit", "drop_node_dead"};
        trace(node, names[static_cast<int>(reason)], pid, 0.0, 0);
        release(pid, reason);
    }

    void release(PacketId pid, std::optional<DropReason> reason)
    {
        auto& f = m_fates[pid];
        if (reason)
        {
            f.last_drop = reason;
        }
        if (--f.live == 0 && !f.delivered)
        {
            const auto r = f.last_drop.value_or(DropReason::RetxExhausted);
            ++m_metrics.drops[static_cast<int>(r)];
        }
    }

    void enqueue(NodeId i, HeldCopy copy)
    {
        auto& s = m_nodes[i];
        if (s.queue.size() >= m_cfg.queue_capacity)
        {
            drop(i, copy.packet.id, DropReason::QueueOverflow);
            return;
        }
        s.queue.push_back(std::move(copy));
        try_start(i);
    }

    void try_start(NodeId i, int backoff_stage = -1)
    {
        auto& s = m_nodes[i];
        if (s.busy || !s.alive() || s.queue.empty())
        {
            return;
        }
        s.busy = true;
        push(m_now + m_params.slot_s * (1.0 + backoff_slots(backoff_stage)), EventKind::TxStart, i);
    }

    /// Random backoff in whole slots; stage -1 means none.
    double backoff_slots(int stage)
    {
        if (stage < 0)
        {
            return 0.0;
        }
        const auto window = static_cast<std::uint64_t>(m_cfg.backoff_window) << std::min(stage, 4);
        return static_cast<double>(m_rng.below(window));
    }

    /// End time of the latest on-air transmission that covers node i, or a negative value.
    double sensed_until(NodeId i) const
    {
        double until = -1.0;
        for (const auto& a : m_air)
        {
            if (a.sender != i && a.start <= m_now && a.end > m_now
                && distance(a.position, m_nodes[i].position) <= range_of_power(a.power_w, m_params.range))
            {
                until = std::max(until, a.end);
            }
        }
        return until;
    }

    void on_hello()
    {
        const double period = m_cfg.hello_period_s;
        const auto n = m_nodes.size();
        const double window = period * m_cfg.staleness_periods;
        for (std::size_t i = 0; i < n; ++i)
        {
            m_activity[i] = m_now - m_nodes[i].last_data_tx <= window ? 1.0 : 0.0;
        }
        // Every hello reports what its sender knew before this round.
        std::vector<InterfererSnapshot> snapshots(n);
        for (std::size_t j = 0; j < n; ++j)
        {
            const auto& s = m_nodes[j];
            for (const auto& e : s.neighbors.entries())
            {
                if (!e.active)
                {
                    continue;
                }
                const double d = distance(e.position, s.position);
                if (d <= range_of_power(e.power_w, m_params.range))
                {
                    snapshots[j].push_back({e.power_w, d, e.activity, e.id});
                }
            }
        }
        const double p_hello = m_params.p_max;
        for (NodeId i = 0; i < n; ++i)
        {
            if (!m_nodes[i].alive())
            {
                continue;
            }
            debit(i, m_params.energy.xi * p_hello * m_hello_delta, EnergyUse::HelloTx);
            ++m_metrics.hello_tx;
            NeighborEntry entry;
            entry.id = i;
            entry.position = m_nodes[i].position;
            entry.last_timestamp = m_now;
            entry.power_w = m_nodes[i].power_w;
            entry.activity = m_activity[i];
            entry.active = m_activity[i] > 0.0;
            entry.interference = snapshots[i];
            for (const auto& nb : m_near[i])
            {
                if (!m_nodes[nb.id].alive())
                {
                    continue;
                }
                debit(nb.id, m_params.energy.e_r_w * m_hello_delta, EnergyUse::HelloRx);
                if (m_nodes[nb.id].alive())
                {
                    m_nodes[nb.id].neighbors.update(entry);
                }
            }
        }
        for (auto& s : m_nodes)
        {
            s.neighbors.expire(m_now, period * m_cfg.staleness_periods);
        }
        ++m_period;
        for (NodeId i = 0; i < n; ++i)
        {
            auto& s = m_nodes[i];
            if (s.parked.empty() || !s.alive())
            {
                continue;
            }
            auto parked = std::move(s.parked);
            s.parked.clear();
            for (auto& c : parked)
            {
                enqueue(i, std::move(c));
            }
        }
        const double next = m_now + period;
        if (next <= m_cfg.duration_s)
        {
            push(next, EventKind::Hello, 0);
        }
    }

    void on_emit(std::uint32_t flow_index)
    {
        const auto& flow = m_world.flows[flow_index];
        auto& src = m_nodes[flow.source];
        HeldCopy c;
        c.packet.id = m_fates.size();
        c.packet.flow = flow.id;
        c.packet.source = flow.source;
        c.packet.destination = flow.destination;
        c.packet.destination_position = m_nodes[flow.destination].position;
        c.packet.created = m_now;
        c.rank = 0;
        Fate fate;
        fate.live = 1;
        m_fates.push_back(fate);
        ++m_metrics.sent;
        if (src.alive())
        {
            src.seen.insert(c.packet.id);
            trace(flow.source, "gen", c.packet.id, 0.0, 0);
            enqueue(flow.source, std::move(c));
        }
        else
        {
            // The application keeps offering load; a dead source loses it.
            release(c.packet.id, DropReason::NodeDead);
        }
        const double next = m_now + 1.0 / m_cfg.cbr_rate_pps;
        if (next <= m_cfg.duration_s)
        {
            push(next, EventKind::Emit, flow_index);
        }
    }

    void on_tx_start(NodeId i)
    {
        auto& s = m_nodes[i];
        s.busy = false;
        while (!s.queue.empty() && s.queue.front().cancelled)
        {
            s.queue.pop_front();
        }
        if (!s.alive() || s.queue.empty())
        {
            return;
        }
        if (m_cfg.carrier_sense)
        {
            if (const double until = sensed_until(i); until > m_now)
            {
                s.busy = true;
                const int stage = s.queue.front().attempts;
                push(until + m_params.slot_s * (1.0 + backoff_slots(stage)), EventKind::TxStart, i);
                return;
            }
        }
        HeldCopy copy = std::move(s.queue.front());
        s.queue.pop_front();

        ForwardPlan plan;
        const auto ctl = s.control.find(copy.packet.destination);
        const std::uint64_t before = ctl == s.control.end() ? 0 : ctl->second.recomputations;
        try
        {
            plan = plan_forward(s, copy.packet.destination, copy.packet.destination_position, m_params, m_period);
            if (m_observer)
            {
                const auto& after = s.control.find(copy.packet.destination);
                if (after != s.control.end() && after->second.recomputations != before && after->second.has_front)
                {
                    m_observer(after->second.front, after->second.feasible);
                }
            }
        }
        catch (const NoRouteError&)
        {
            if (copy.no_route_retries < m_cfg.no_route_retries)
            {
                ++copy.no_route_retries;
                s.parked.push_back(std::move(copy));
            }
            else
            {
                drop(i, copy.packet.id, DropReason::NoRoute);
            }
            try_start(i);
            return;
        }

        const double energy = m_params.energy.xi * plan.power_w * m_delta;
        if (s.energy_j < energy)
        {
            s.queue.push_front(std::move(copy));
            debit(i, s.energy_j, EnergyUse::DataTx);
            return;
        }
        s.power_w = plan.power_w;
        debit(i, energy, EnergyUse::DataTx);

        if (copy.attempts == 0 && copy.rank > 0)
        {
            auto& f = m_fates[copy.packet.id];
            const std::uint64_t bit = std::uint64_t{1} << std::min(copy.packet.hops, 63);
            if (f.hop_mask & bit)
            {
                ++m_metrics.duplicates;
            }
            f.hop_mask |= bit;
        }
        ++copy.attempts;
        ++m_metrics.data_tx;
        m_cfs_sum += static_cast<double>(plan.candidates.size());
        s.last_data_tx = m_now;
        s.busy = true;

        trace(i, "tx", copy.packet.id, plan.power_w, copy.rank);
        OnAir air;
        air.tx = AirTx{i, s.position, plan.power_w, m_now, m_now + m_delta};
        air.copy = std::move(copy);
        air.plan = std::move(plan.candidates);
        m_air.push_back(air.tx);
        m_onair.push_back(std::move(air));
        push(m_now + m_delta, EventKind::TxEnd, m_onair.size() - 1);
    }

    bool holds_copy(NodeId i, PacketId pid) const
    {
        const auto& s = m_nodes[i];
        auto live = [&](const HeldCopy& c) { return c.packet.id == pid && !c.cancelled; };
        return (s.pending.contains(pid) && !s.pending.at(pid).cancelled) || std::any_of(s.queue.begin(), s.queue.end(), live)
               || std::any_of(s.parked.begin(), s.parked.end(), live);
    }

    void cancel_copies(NodeId i, const Packet& heard)
    {
        auto& s = m_nodes[i];
        if (auto it = s.pending.find(heard.id); it != s.pending.end() && redundant_copy(it->second, heard))
        {
            trace(i, "cancel", heard.id, 0.0, it->second.rank);
            s.pending.erase(it);
            release(heard.id, std::nullopt);
        }
        for (auto& c : s.queue)
        {
            if (c.packet.id == heard.id && redundant_copy(c, heard))
            {
                c.cancelled = true;
                trace(i, "cancel", heard.id, 0.0, c.rank);
                release(heard.id, std::nullopt);
            }
        }
    }

    void on_tx_end(std::uint64_t index)
    {
        OnAir air = std::move(m_onair[index]);
        const NodeId sender = air.tx.sender;

        while (!m_air.empty() && m_air.front().end < m_now - m_delta)
        {
            m_air.pop_front();
        }
        const std::vector<AirTx> air_now(m_air.begin(), m_air.end());

        Packet pkt = air.copy.packet;
        pkt.sender = sender;
        pkt.plan = air.plan;

        bool accepted = false;
        const double range = range_of_power(air.tx.power_w, m_params.range);
        const double gap = m_cfg.priority_gap();
        for (const auto& nb : m_near[sender])
        {
            if (nb.d > range)
            {
                continue;
            }
            const NodeId r = nb.id;
            auto& rs = m_nodes[r];
            if (!rs.alive())
            {
                continue;
            }
            const bool transmitting = std::any_of(air_now.begin(), air_now.end(), [&](const AirTx& a) {
                return a.sender == r && a.start < air.tx.end && a.end > air.tx.start;
            });
            if (transmitting)
            {
                continue;
            }
            debit(r, m_params.energy.e_r_w * m_delta, EnergyUse::DataRx);
            if (!rs.alive())
            {
                continue;
            }
            if (!resolve_reception(r, rs.position, air.tx, air_now, m_params.radio, m_params.range, m_rng))
            {
                continue;
            }
            const ReceiveAction act = on_receive(rs, pkt, gap, m_params.hop_limit);
            if (act.rank > 0 || act.kind == ReceiveKind::Deliver)
            {
                trace(r, "rx", pkt.id, air.tx.power_w, act.rank);
            }
            if (act.cancels_copy)
            {
                cancel_copies(r, pkt);
            }
            switch (act.kind)
            {
            case ReceiveKind::Deliver: {
                accepted = true;
                auto& f = m_fates[pkt.id];
                if (f.delivered)
                {
                    ++m_metrics.duplicates;
                    trace(r, "dup", pkt.id, 0.0, act.rank);
                }
                else
                {
                    f.delivered = true;
                    ++m_metrics.delivered;
                    m_delay_sum += m_now - pkt.created;
                    trace(r, "deliver", pkt.id, 0.0, act.rank);
                }
                break;
            }
            case ReceiveKind::Forward: {
                accepted = true;
                HeldCopy c;
                c.packet = pkt;
                c.packet.hops = pkt.hops + 1;
                c.rank = act.rank;
                ++m_fates[pkt.id].live;
                rs.pending[pkt.id] = std::move(c);
                push(m_now + act.delay, EventKind::Timer, r, pkt.id);
                break;
            }
            case ReceiveKind::HopLimit:
                accepted = true;
                ++m_fates[pkt.id].live;
                drop(r, pkt.id, DropReason::HopLimit);
                break;
            case ReceiveKind::Duplicate:
                accepted = accepted || holds_copy(r, pkt.id) || m_handed_off[r].contains(pkt.id);
                trace(r, "dup", pkt.id, 0.0, act.rank);
                break;
            case ReceiveKind::Overheard: break;
            }
        }

        auto& s = m_nodes[sender];
        s.busy = false;
        if (accepted)
        {
            m_handed_off[sender].insert(pkt.id);
            release(pkt.id, std::nullopt);
        }
        else if (!s.alive())
        {
            drop(sender, pkt.id, DropReason::NodeDead);
        }
        else if (air.copy.attempts > m_cfg.retx_budget)
        {
            drop(sender, pkt.id, DropReason::RetxExhausted);
        }
        else
        {
            const int stage = air.copy.attempts - 1;
            s.queue.push_front(std::move(air.copy));
            try_start(sender, stage);
            return;
        }
        try_start(sender);
    }

    void on_timer(NodeId i, PacketId pid)
    {
        auto& s = m_nodes[i];
        auto it = s.pending.find(pid);
        if (!s.alive() || it == s.pending.end())
        {
            return;
        }
        HeldCopy c = std::move(it->second);
        s.pending.erase(it);
        enqueue(i, std::move(c));
    }

    RunResult finish()
    {
        RunResult out;
        auto& m = m_metrics;
        m.in_flight = m.sent - m.delivered - m.dropped();
        m.pdr = m.sent == 0 ? std::numeric_limits<double>::quiet_NaN()
                            : static_cast<double>(m.delivered) / static_cast<double>(m.sent);
        m.delay_s = m.delivered == 0 ? std::numeric_limits<double>::quiet_NaN()
                                     : m_delay_sum / static_cast<double>(m.delivered);
        m.throughput_bps = static_cast<double>(m.delivered) * m_params.energy.packet_bits / m_cfg.duration_s;
        m.cfs_mean = m.data_tx == 0 ? 0.0 : m_cfs_sum / static_cast<double>(m.data_tx);
        for (const auto& s : m_nodes)
        {
            m.residual_j += s.energy_j;
            m.initial_j += s.initial_energy_j;
            out.residual_per_node.push_back(s.energy_j);
        }
        out.debited_per_node = m_debited;
        out.metrics = m;
        out.trace = std::move(m_trace);
        return out;
    }

    SimConfig m_cfg;
    const World& m_world;
    ProtocolParams m_params;
    bool m_trace_on;
    const FrontObserver& m_observer;
    Rng m_rng;
    Rng m_traffic;
    std::vector<NodeState> m_nodes;
    std::vector<std::vector<NearNode>> m_near;
    std::vector<double> m_activity;
    std::vector<double> m_debited;
    std::vector<std::unordered_set<PacketId>> m_handed_off;  ///< packets whose custody a node passed downstream
    std::priority_queue<Event, std::vector<Event>, std::greater<>> m_events;
    std::uint64_t m_seq{0};
    double m_now{0.0};
    long m_period{0};
    double m_delta{0.0};
    double m_hello_delta{0.0};
    std::deque<AirTx> m_air;
    std::vector<OnAir> m_onair;
    std::vector<Fate> m_fates;
    MetricsRecord m_metrics;
    double m_delay_sum{0.0};
    double m_cfs_sum{0.0};
    std::vector<TraceEvent> m_trace;
};

} // namespace

RunResult
run(const World& world, bool record_trace, const FrontObserver& observer)
{
    world.config.validate();
    Simulator sim(world, record_trace, observer);
    return sim.execute();
}

} // namespace erto
