#include "erto/routing.hpp"

#include "erto/error.hpp"
#include "erto/random.hpp"

#include <algorithm>
#include <cmath>

namespace erto {

bool
NeighborTable::update(NeighborEntry entry)
{
    auto it = std::lower_bound(m_entries.begin(), m_entries.end(), entry.id, [](const NeighborEntry& e, NodeId id) {
        return e.id < id;
    });
    if (it != m_entries.end() && it->id == entry.id)
    {
        if (entry.last_timestamp < it->last_timestamp)
        {
            return false;
        }
        *it = std::move(entry);
        return true;
    }
    m_entries.insert(it, std::move(entry));
    return true;
}

void
NeighborTable::expire(double now, double window)
{
    std::erase_if(m_entries, [&](const NeighborEntry& e) { return e.last_timestamp < now - window; });
}

const NeighborEntry*
NeighborTable::find(NodeId id) const
{
    auto it = std::lower_bound(m_entries.begin(), m_entries.end(), id, [](const NeighborEntry& e, NodeId v) {
        return e.id < v;
    });
    return it != m_entries.end() && it->id == id ? &*it : nullptr;
}

std::string_view
to_string(Algorithm a) noexcept
{
    return a == Algorithm::Erto ? "ERTO" : "ExOR";
}

Algorithm
algorithm_from_string(std::string_view s)
{
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "erto")
    {
        return Algorithm::Erto;
    }
    if (lower == "exor")
    {
        return Algorithm::Exor;
    }
    throw InvalidParameter("unknown algorithm '" + std::string(s) + "'");
}

double
etx(double p_si)
{
    if (!(p_si <= 1.0) || p_si < 0.0)
    {
        throw InvalidParameter("etx: probability outside [0, 1]");
    }
    if (p_si == 0.0)
    {
        throw UnreachableCandidate("etx: candidate unreachable (p_si = 0)");
    }
    return 1.0 / p_si;
}

LinkContext
link_context(const NodeState& sender, NodeId destination, Position destination_position, const RangeMap& range)
{
    LinkContext ctx;
    ctx.sender = sender.id;
    ctx.sender_position = sender.position;
    ctx.destination = destination;
    ctx.destination_position = destination_position;
    ctx.range = range;
    ctx.neighbors.reserve(sender.neighbors.size());
    for (const auto& e : sender.neighbors.entries())
    {
        ctx.neighbors.push_back(CandidateLink{e.id, e.position, e.interference});
    }
    return ctx;
}

namespace {

std::vector<double>
flatten(const LinkContext& ctx)
{
    std::vector<double> key{ctx.sender_position.x,
                            ctx.sender_position.y,
                            ctx.destination_position.x,
                            ctx.destination_position.y,
                            static_cast<double>(ctx.destination)};
    for (const auto& n : ctx.neighbors)
    {
        key.push_back(static_cast<double>(n.id));
        key.push_back(n.position.x);
        key.push_back(n.position.y);
        key.push_back(static_cast<double>(n.interferers.size()));
        for (const auto& i : n.interferers)
        {
            key.push_back(static_cast<double>(i.node));
            key.push_back(i.power_w);
            key.push_back(i.distance_m);
            key.push_back(i.activity);
        }
    }
    return key;
}

int
candidates_at(double p_ts, const LinkContext& ctx, const RadioParams& radio)
{
    return static_cast<int>(estimate_links(p_ts, ctx, radio).members.size());
}

} // namespace

OperatingPoint
control_power(NodeState& sender, NodeId destination, Position destination_position, const ProtocolParams& params, long period)
{
    DestinationControl& ctl = sender.control[destination];
    if (ctl.period == period)
    {
        if (!ctl.has_front)
        {
            throw NoRouteError("no feasible operating point");
        }
        return ctl.current;
    }

    OptContext opt;
    opt.link = link_context(sender, destination, destination_position, params.range);
    opt.radio = params.radio;
    opt.energy = params.energy;
    opt.rho = params.rho;
    opt.p_min = params.p_min;
    opt.p_max = params.p_max;
    opt.n_cap = params.n_cap;

    auto key = flatten(opt.link);
    ctl.period = period;
    if (key != ctl.context || ctl.current.p_ts == 0.0)
    {
        ctl.context = std::move(key);
        GaConfig ga = params.ga;
        ga.seed = mix_seed(mix_seed(params.seed, 2), (static_cast<std::uint64_t>(sender.id) << 32) | destination);
        ++ctl.recomputations;
        try
        {
            ctl.front = nsga2_front(opt, ga);
            ctl.feasible = feasible_set(ctl.front, params.feasible_tol);
            ctl.has_front = true;
        }
        catch (const EmptyFrontError&)
        {
            ctl.has_front = false;
        }
    }
    if (!ctl.has_front)
    {
        throw NoRouteError("no feasible operating point");
    }
    if (ctl.current.p_ts == 0.0)
    {
        ctl.current = {params.p_init, std::min(params.n_cap, candidates_at(params.p_init, opt.link, params.radio))};
    }
    const Decision d = decide(ctl.current, ctl.front, ctl.feasible, params.match_tol);
    if (!d.keep)
    {
        ctl.current = {d.target.p_ts, d.target.n_rel};
    }
    return ctl.current;
}

ForwardPlan
plan_forward(NodeState& sender, NodeId destination, Position destination_position, const ProtocolParams& params, long period)
{
    const double power = params.algorithm == Algorithm::Erto
                             ? control_power(sender, destination, destination_position, params, period).p_ts
                             : params.p_init;

    const LinkContext ctx = link_context(sender, destination, destination_position, params.range);
    const LinkEstimate est = estimate_links(power, ctx, params.radio);

    ForwardPlan plan;
    plan.power_w = power;
    for (std::size_t k = 0; k < est.members.size(); ++k)
    {
        if (est.members[k] == destination && est.p_si[k] > 0.0)
        {
            plan.candidates = {destination};
            plan.etx = {etx(est.p_si[k])};
            plan.direct = true;
            return plan;
        }
    }
    // estimate_links orders by descending p_si then id, which is ascending ETX.
    for (std::size_t k = 0; k < est.members.size(); ++k)
    {
        try
        {
            plan.etx.push_back(etx(est.p_si[k]));
            plan.candidates.push_back(est.members[k]);
        }
        catch (const UnreachableCandidate&)
        {
        }
    }
    if (plan.candidates.empty())
    {
        throw NoRouteError("empty candidate forwarding set");
    }
    return plan;
}

bool
redundant_copy(const HeldCopy& copy, const Packet& packet)
{
    if (copy.cancelled || copy.rank < 1)
    {
        return false;
    }
    if (packet.hops > copy.packet.hops)
    {
        return true;
    }
    if (packet.hops < copy.packet.hops || copy.rank == 1)
    {
        return false;
    }
    const auto& plan = copy.packet.plan;
    const auto it = std::find(plan.begin(), plan.end(), packet.sender);
    return it != plan.end() && static_cast<int>(it - plan.begin()) + 1 < copy.rank;
}

ReceiveAction
on_receive(NodeState& node, const Packet& packet, double gap, int hop_limit)
{
    ReceiveAction action;
    const auto it = std::find(packet.plan.begin(), packet.plan.end(), node.id);
    action.rank = it == packet.plan.end() ? 0 : static_cast<int>(it - packet.plan.begin()) + 1;

    if (node.id == packet.destination)
    {
        action.kind = ReceiveKind::Deliver;
        return action;
    }

    if (const auto p = node.pending.find(packet.id); p != node.pending.end() && redundant_copy(p->second, packet))
    {
        action.cancels_copy = true;
    }
    for (const auto& q : node.queue)
    {
        if (q.packet.id == packet.id && redundant_copy(q, packet))
        {
            action.cancels_copy = true;
        }
    }

    if (action.rank == 0)
    {
        action.kind = ReceiveKind::Overheard;
        return action;
    }
    if (node.seen.contains(packet.id))
    {
        action.kind = ReceiveKind::Duplicate;
        return action;
    }
    node.seen.insert(packet.id);
    if (packet.hops + 1 >= hop_limit)
    {
        action.kind = ReceiveKind::HopLimit;
        return action;
    }
    action.kind = ReceiveKind::Forward;
    action.delay = static_cast<double>(action.rank - 1) * gap;
    return action;
}

} // namespace erto
