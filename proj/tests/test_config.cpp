#include "erto/config.hpp"
#include "erto/error.hpp"

#include <doctest.h>

using namespace erto;

TEST_CASE("empty config gives the defaults")
{
    const auto c = parse_config("");
    CHECK(c == ExperimentConfig{});
    CHECK(c.sim.protocol.radio.eta == 2.0);
    CHECK(c.sim.cbr_rate_pps == 0.2);
}

TEST_CASE("values are read from their sections")
{
    const auto c = parse_config(R"(
radio:
  eta: 3.5
  beta: 4.0
power:
  p_init_w: 0.5
ga:
  population: 40
sweep:
  layout: grid
  nodes: [20, 30]
  cbr_pairs: [5]
  replications: 2
  algorithms: [ExOR]
  seed: 99
output:
  trace: true
)");
    CHECK(c.sim.protocol.radio.eta == 3.5);
    CHECK(c.sim.protocol.range.eta == 3.5);
    CHECK(c.sim.protocol.radio.beta == 4.0);
    CHECK(c.sim.protocol.p_init == 0.5);
    CHECK(c.sim.protocol.ga.population == 40);
    CHECK(c.algorithms == std::vector<Algorithm>{Algorithm::Exor});
    CHECK(c.seed == 99);
    CHECK(c.trace);
    const auto cells = c.cells();
    REQUIRE(cells.size() == 2);
    CHECK(cells[1].n_nodes == 30);
    CHECK(cells[1].n_cbr == 5);

    const auto spec = c.sweep_spec();
    CHECK(spec.base_seed == 99);
    CHECK(spec.replications == 2);
}

TEST_CASE("axes layout crosses each axis with the fixed value")
{
    ExperimentConfig c;
    c.nodes = {40, 100};
    c.cbr_pairs = {20, 60};
    c.fixed_nodes = 100;
    c.fixed_cbr_pairs = 20;
    const auto cells = c.cells();
    // (40,20) (100,20) (100,60); (100,20) appears once.
    REQUIRE(cells.size() == 3);
    CHECK(cells[0].n_nodes == 40);
    CHECK(cells[2].n_cbr == 60);
}

TEST_CASE("bad values name the key and line")
{
    try
    {
        parse_config("radio:\n  beta: 3\n  eta: 7\n");
        FAIL("expected ConfigError");
    }
    catch (const ConfigError& e)
    {
        CHECK(e.key() == "radio.eta");
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("radio.eta") != std::string::npos);
    }

    try
    {
        parse_config("network:\n  width_m: 100\n  hight_m: 100\n");
        FAIL("expected ConfigError");
    }
    catch (const ConfigError& e)
    {
        CHECK(e.key() == "network.hight_m");
        CHECK(e.line() == 3);
    }

    CHECK_THROWS_AS(parse_config("ga:\n  population: lots\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("sweep:\n  algorithms: [AODV]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("radio: [1, 2"), ConfigError);
    CHECK_THROWS_AS(parse_config("power:\n  p_min_w: 0.9\n"), ConfigError);
}

TEST_CASE("to_yaml round-trips")
{
    ExperimentConfig c;
    c.sim.protocol.radio.beta = 0.1 + 0.2;
    c.sim.protocol.energy.xi = 1.0 / 3.0;
    c.nodes = {25, 35};
    c.algorithms = {Algorithm::Exor, Algorithm::Erto};
    c.layout = SweepLayout::Grid;
    c.trace = true;
    c.output_dir = "somewhere/else";
    const auto text = to_yaml(c);
    CHECK(parse_config(text) == c);
    CHECK(to_yaml(parse_config(text)) == text);
}
