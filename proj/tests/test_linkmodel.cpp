#include "erto/error.hpp"
#include "erto/linkmodel.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace erto;

namespace {

RadioParams
unit_radio()
{
    RadioParams r;
    r.beta = 1.0;
    r.K = 1.0;
    r.eta = 2.0;
    r.G = 1.0;
    r.noise_w = 0.0;
    return r;
}

} // namespace

TEST_CASE("p_si closed-form examples")
{
    RadioParams r = unit_radio();
    r.noise_w = std::numbers::ln2;
    CHECK(p_si(1.0, 1.0, {}, r) == doctest::Approx(0.5));

    r.noise_w = 0.0;
    const InterfererSnapshot one{{1.0, 10.0, 1.0, 7}};
    CHECK(p_si(1.0, 10.0, one, r) == doctest::Approx(0.5));

    // An interferer that is never active has no effect; half activity blends the factor.
    const InterfererSnapshot idle{{1.0, 10.0, 0.0, 7}};
    CHECK(p_si(1.0, 10.0, idle, r) == doctest::Approx(1.0));
    const InterfererSnapshot half{{1.0, 10.0, 0.5, 7}};
    CHECK(p_si(1.0, 10.0, half, r) == doctest::Approx(0.75));
}

TEST_CASE("p_si agrees with sampling")
{
    RadioParams r;
    r.beta = 3.16;
    r.eta = 3.0;
    r.K = 1e-4;
    r.G = 10.0;
    r.noise_w = 1e-10;
    const InterfererSnapshot snap{{0.3, 250.0, 1.0, 1}, {0.5, 400.0, 1.0, 2}};
    const double exact = p_si(0.4, 120.0, snap, r);
    const auto mc = p_si_montecarlo(0.4, 120.0, snap, r, 1'000'000, 9);
    CHECK(mc.samples == 1'000'000);
    CHECK(std::abs(mc.p - exact) <= 3.0 * std::sqrt(exact * (1 - exact) / 1e6));

    RadioParams noise = unit_radio();
    noise.noise_w = std::numbers::ln2;
    const auto half = p_si_montecarlo(1.0, 1.0, {}, noise, 1'000'000, 4);
    CHECK(std::abs(half.p - 0.5) <= 3.0 * half.std_error);

    RadioParams tiny = r;
    tiny.beta = 1e-12;
    CHECK(p_si_montecarlo(0.4, 120.0, snap, tiny, 100'000, 2).p == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("p_si switches to log space for large snapshots without changing the value")
{
    RadioParams r;
    InterfererSnapshot snap;
    double product = 1.0;
    for (int i = 0; i < 40; ++i)
    {
        const double d = 300.0 + 10.0 * i;
        snap.push_back({0.2, d, 1.0, static_cast<NodeId>(i)});
        product *= 1.0 / (1.0 + r.beta * 0.2 * std::pow(100.0 / d, r.eta) / (r.G * 0.5));
    }
    const double noise = std::exp(-r.beta * r.noise_w * std::pow(100.0, r.eta) / (0.5 * r.K));
    CHECK(p_si(0.5, 100.0, snap, r) == doctest::Approx(noise * product).epsilon(1e-12));
}

TEST_CASE("p_si is monotone in power and distance")
{
    RadioParams r;
    const InterfererSnapshot snap{{0.5, 150.0, 1.0, 1}};
    double prev = 0.0;
    for (double p = 0.1; p <= 0.8; p += 0.01)
    {
        const double v = p_si(p, 120.0, snap, r);
        CHECK(v >= prev);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
    prev = 1.0;
    for (double d = 5.0; d <= 300.0; d += 5.0)
    {
        const double v = p_si(0.5, d, snap, r);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("p_si rejects bad input")
{
    RadioParams r;
    CHECK_THROWS_AS(p_si(0.0, 10.0, {}, r), InvalidParameter);
    CHECK_THROWS_AS(p_si(0.5, -1.0, {}, r), InvalidParameter);
    r.beta = 0.0;
    CHECK_THROWS_AS(r.validate(), InvalidParameter);
}

TEST_CASE("p_sc")
{
    const std::vector<double> two{0.5, 0.5};
    CHECK(p_sc(two) == doctest::Approx(0.75));
    const std::vector<double> single{0.37};
    CHECK(p_sc(single) == doctest::Approx(0.37));
    const std::vector<double> certain{1.0, 0.2};
    CHECK(p_sc(certain) == 1.0);
    CHECK(p_sc({}) == 0.0);
}

TEST_CASE("p_sc_predict clamps to the available candidates")
{
    LinkContext ctx;
    ctx.sender = 0;
    ctx.sender_position = {0, 0};
    ctx.destination = 9;
    ctx.destination_position = {400, 0};
    ctx.neighbors.push_back({1, {100, 0}, {}});
    RadioParams r;
    CHECK(p_sc_predict(0.5, 0, ctx, r) == 0.0);
    const double only = p_si(0.5, 100.0, {}, r);
    CHECK(p_sc_predict(0.5, 1, ctx, r) == doctest::Approx(only));
    CHECK(p_sc_predict(0.5, 5, ctx, r) == doctest::Approx(only));

    ctx.neighbors.push_back({2, {60, 30}, {}});
    const double second = p_si(0.5, distance({60, 30}, {0, 0}), {}, r);
    CHECK(p_sc_predict(0.5, 1, ctx, r) == doctest::Approx(std::max(only, second)));
    CHECK(p_sc_predict(0.5, 2, ctx, r) == doctest::Approx(1 - (1 - only) * (1 - second)));
}

TEST_CASE("estimate_links drops the sender from snapshots and orders by p_si")
{
    LinkContext ctx;
    ctx.sender = 0;
    ctx.sender_position = {0, 0};
    ctx.destination = 9;
    ctx.destination_position = {400, 0};
    ctx.neighbors.push_back({1, {150, 0}, {{0.8, 150.0, 1.0, 0}}});
    ctx.neighbors.push_back({2, {50, 0}, {}});
    ctx.neighbors.push_back({3, {-50, 0}, {}});
    const auto est = estimate_links(0.8, ctx, RadioParams{});
    CHECK(est.members == std::vector<NodeId>{2, 1});
    CHECK(est.snapshots[1].empty());
    CHECK(est.p_si[0] > est.p_si[1]);
}
