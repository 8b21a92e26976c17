#include "erto/error.hpp"
#include "erto/sim.hpp"
#include "erto/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

using namespace erto;

namespace {

SimConfig
quiet(Algorithm a)
{
    SimConfig c;
    c.protocol.algorithm = a;
    c.protocol.radio.noise_w = 1e-15;
    c.protocol.ga.population = 20;
    c.protocol.ga.generations = 20;
    c.duration_s = 20.0;
    return c;
}

std::vector<TraceEvent>
events_of(const std::vector<TraceEvent>& trace, PacketId id)
{
    std::vector<TraceEvent> out;
    for (const auto& e : trace)
    {
        if (e.packet == id && e.kind != "hello")
        {
            out.push_back(e);
        }
    }
    return out;
}

SimConfig
busy(Algorithm a, std::uint64_t seed)
{
    SimConfig c;
    c.protocol.algorithm = a;
    c.protocol.ga.population = 20;
    c.protocol.ga.generations = 20;
    c.n_nodes = 40;
    c.n_cbr = 10;
    c.duration_s = 60.0;
    c.cbr_rate_pps = 1.0;
    c.initial_energy_j = 0.5;
    c.seed = seed;
    return c;
}

} // namespace

TEST_CASE("no traffic")
{
    auto c = quiet(Algorithm::Exor);
    const auto w = make_world(c, {{0, 0}, {100, 0}}, {});
    const auto r = run(w);
    CHECK(r.metrics.sent == 0);
    CHECK(std::isnan(r.metrics.pdr));
    CHECK(std::isnan(r.metrics.delay_s));
    CHECK(r.metrics.energy_by_use[static_cast<int>(EnergyUse::DataTx)] == 0.0);
    CHECK(r.metrics.energy_by_use[static_cast<int>(EnergyUse::DataRx)] == 0.0);
    CHECK(r.metrics.hello_tx > 0);
}

TEST_CASE("one hop in range")
{
    for (auto alg : {Algorithm::Exor, Algorithm::Erto})
    {
        const auto c = quiet(alg);
        const auto w = make_world(c, {{0, 0}, {100, 0}}, {{0, 0, 1}});
        const auto r = run(w);
        CHECK(r.metrics.sent > 0);
        CHECK(r.metrics.pdr == 1.0);
        CHECK(r.metrics.delay_s == doctest::Approx(c.protocol.slot_s + c.protocol.energy.delta()).epsilon(1e-9));
    }
}

TEST_CASE("two hops along a line")
{
    const auto c = quiet(Algorithm::Exor);
    const auto w = make_world(c, {{0, 0}, {150, 0}, {300, 0}}, {{0, 0, 2}});
    const auto r = run(w, true);
    const double slot = c.protocol.slot_s;
    const double delta = c.protocol.energy.delta();

    const auto ev = events_of(r.trace, 0);
    REQUIRE(ev.size() == 6);
    const double t0 = ev[0].time;
    const std::vector<std::pair<std::string, NodeId>> kinds{
        {"gen", 0}, {"tx", 0}, {"rx", 1}, {"tx", 1}, {"rx", 2}, {"deliver", 2}};
    const std::vector<double> times{t0, t0 + slot, t0 + slot + delta, t0 + 2 * slot + delta, t0 + 2 * slot + 2 * delta, t0 + 2 * slot + 2 * delta};
    for (std::size_t k = 0; k < ev.size(); ++k)
    {
        CHECK(ev[k].kind == kinds[k].first);
        CHECK(ev[k].node == kinds[k].second);
        CHECK(ev[k].time == doctest::Approx(times[k]).epsilon(1e-9));
    }
    CHECK(ev[1].power == 0.8);
    CHECK(ev[2].rank == 1);
    CHECK(r.metrics.pdr == 1.0);
    CHECK(r.metrics.delay_s == doctest::Approx(2 * slot + 2 * delta).epsilon(1e-9));
}

TEST_CASE("accounting and energy conservation")
{
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
    {
        for (auto alg : {Algorithm::Erto, Algorithm::Exor})
        {
            const auto r = run(build_scenario(busy(alg, seed)));
            const auto& m = r.metrics;
            CHECK(m.sent > 0);
            CHECK(m.delivered + m.dropped() + m.in_flight == m.sent);

            const double initial = std::accumulate(r.residual_per_node.begin(), r.residual_per_node.end(), 0.0) +
                                   std::accumulate(r.debited_per_node.begin(), r.debited_per_node.end(), 0.0);
            CHECK(initial == doctest::Approx(m.initial_j).epsilon(1e-12));
            CHECK(m.initial_j - m.residual_j == doctest::Approx(m.debited_j).epsilon(1e-9));
            const double by_use = std::accumulate(m.energy_by_use.begin(), m.energy_by_use.end(), 0.0);
            CHECK(by_use == doctest::Approx(m.debited_j).epsilon(1e-9));
            for (std::size_t i = 0; i < r.residual_per_node.size(); ++i)
            {
                CHECK(r.residual_per_node[i] >= 0.0);
            }
        }
    }
}

TEST_CASE("per-flow accounting")
{
    // One flow per run: the aggregate counters are that flow's counters.
    for (std::uint64_t seed = 1; seed <= 4; ++seed)
    {
        auto c = busy(Algorithm::Erto, seed);
        c.n_cbr = 1;
        const auto w = build_scenario(c);
        auto with_load = busy(Algorithm::Erto, seed);
        const auto loaded = build_scenario(with_load);
        for (const auto& f : loaded.flows)
        {
            const auto single = make_world(c, w.positions, {f});
            const auto result = run(single);
            const auto& m = result.metrics;
            CHECK(m.delivered + m.dropped() + m.in_flight == m.sent);
            CHECK(m.delivered <= m.sent);
        }
    }
}

TEST_CASE("runs are deterministic")
{
    for (auto alg : {Algorithm::Erto, Algorithm::Exor})
    {
        const auto w = build_scenario(busy(alg, 5));
        const auto a = run(w, true);
        const auto b = run(w, true);
        CHECK(a.trace == b.trace);
        CHECK(a.residual_per_node == b.residual_per_node);
        CHECK(a.metrics.sent == b.metrics.sent);
        CHECK(a.metrics.delivered == b.metrics.delivered);
        CHECK(a.metrics.drops == b.metrics.drops);
        CHECK(a.metrics.debited_j == b.metrics.debited_j);
    }
}

TEST_CASE("trace is time ordered and relays make progress")
{
    for (auto alg : {Algorithm::Erto, Algorithm::Exor})
    {
        auto c = busy(alg, 7);
        c.n_nodes = 60;
        const auto base = build_scenario(c);
        // Distinct sources so each packet maps to one destination.
        std::vector<Flow> flows;
        std::map<NodeId, NodeId> dest_of;
        for (const auto& f : base.flows)
        {
            if (!dest_of.contains(f.source))
            {
                dest_of[f.source] = f.destination;
                flows.push_back({static_cast<std::uint32_t>(flows.size()), f.source, f.destination});
            }
        }
        const auto w = make_world(c, base.positions, flows);
        const auto r = run(w, true);
        REQUIRE(!r.trace.empty());

        std::map<PacketId, NodeId> dest;
        std::map<PacketId, std::vector<TraceEvent>> tx;
        for (std::size_t k = 0; k < r.trace.size(); ++k)
        {
            const auto& e = r.trace[k];
            if (k > 0)
            {
                CHECK(e.time >= r.trace[k - 1].time);
            }
            if (e.kind == "gen")
            {
                dest[e.packet] = dest_of.at(e.node);
            }
            else if (e.kind == "tx")
            {
                tx[e.packet].push_back(e);
            }
        }

        const double delta = c.protocol.energy.delta();
        int checked = 0;
        for (const auto& e : r.trace)
        {
            if (e.kind != "rx" || e.rank < 1)
            {
                continue;
            }
            const Position d = w.positions[dest.at(e.packet)];
            // Copies of one packet can be on the air together, so the sender is one of
            // the transmissions ending at this instant.
            bool matched = false;
            bool progress = false;
            for (const auto& t : tx[e.packet])
            {
                if (std::abs(t.time + delta - e.time) < 1e-9)
                {
                    matched = true;
                    progress = progress || distance(w.positions[e.node], d) < distance(w.positions[t.node], d);
                }
            }
            CHECK(matched);
            CHECK(progress);
            ++checked;
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("build_scenario")
{
    SimConfig c;
    c.n_nodes = 2;
    c.n_cbr = 1;
    const auto w = build_scenario(c);
    CHECK(w.positions.size() == 2);
    REQUIRE(w.flows.size() == 1);
    CHECK(w.flows[0].source != w.flows[0].destination);

    c.n_cbr = 3;
    CHECK_THROWS_AS(build_scenario(c), InvalidParameter);

    SimConfig big;
    big.n_nodes = 120;
    big.n_cbr = 100;
    const auto a = build_scenario(big);
    const auto b = build_scenario(big);
    CHECK(a.positions == b.positions);
    CHECK(a.flows.size() == 100);
    std::set<std::pair<NodeId, NodeId>> pairs;
    for (const auto& f : a.flows)
    {
        CHECK(f.source != f.destination);
        pairs.insert({f.source, f.destination});
    }
    CHECK(pairs.size() == 100);
    big.seed = 2;
    CHECK(build_scenario(big).positions != a.positions);
}

TEST_CASE("uniform placement has the Poisson nearest-neighbor mean")
{
    SimConfig c;
    c.n_nodes = 120;
    c.n_cbr = 0;
    double sum = 0.0;
    int count = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed)
    {
        c.seed = seed;
        const auto w = build_scenario(c);
        for (std::size_t i = 0; i < w.positions.size(); ++i)
        {
            // Interior nodes only, to keep the border out of the estimate.
            const auto& p = w.positions[i];
            if (p.x < 150 || p.x > 850 || p.y < 150 || p.y > 850)
            {
                continue;
            }
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < w.positions.size(); ++j)
            {
                if (j != i)
                {
                    best = std::min(best, distance(p, w.positions[j]));
                }
            }
            sum += best;
            ++count;
        }
    }
    const double rho = 120.0 / c.area.size();
    const double expected = 0.5 / std::sqrt(rho);
    CHECK(std::abs(sum / count - expected) / expected < 0.1);
}

TEST_CASE("reception draws follow the closed form")
{
    const RadioParams radio;
    const RangeMap range;
    const AirTx self{0, {0, 0}, 0.5, 0.0, 0.07};
    const std::vector<AirTx> air{self, {4, {250, 60}, 0.8, -0.01, 0.06}, {5, {900, 900}, 0.8, 0.0, 0.07}, {6, {120, -40}, 0.3, 0.2, 0.3}};
    const Position rx{140, 30};

    const auto snap = air_interferers(1, rx, self, air, range);
    REQUIRE(snap.size() == 1);
    CHECK(snap[0].node == 4);

    const double p = p_si(self.power_w, distance(rx, self.position), snap, radio);
    Rng rng(2024);
    const int n = 100'000;
    int ok = 0;
    for (int k = 0; k < n; ++k)
    {
        ok += resolve_reception(1, rx, self, air, radio, range, rng) ? 1 : 0;
    }
    const double se = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(static_cast<double>(ok) / n - p) <= 3 * se);
}

TEST_CASE("invalid configs are rejected")
{
    SimConfig c;
    c.n_nodes = 1;
    CHECK_THROWS_AS(c.validate(), InvalidParameter);
    c = SimConfig{};
    c.protocol.p_init = 2.0;
    CHECK_THROWS_AS(c.validate(), InvalidParameter);
    c = SimConfig{};
    CHECK_THROWS_AS(make_world(c, {{0, 0}, {1, 1}}, {{0, 0, 5}}), LookupError);
    CHECK_THROWS_AS(make_world(c, {{0, 0}, {1, 1}}, {{0, 1, 1}}), InvalidParameter);
}
