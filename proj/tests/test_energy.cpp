#include "erto/energy.hpp"
#include "erto/error.hpp"
#include "erto/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace erto;

TEST_CASE("expected_attempts")
{
    CHECK(expected_attempts(1.0) == 1.0);
    CHECK(expected_attempts(0.25) == doctest::Approx(4.0));

    Rng rng(21);
    std::uint64_t attempts = 0;
    for (int t = 0; t < 100'000; ++t)
    {
        do
        {
            ++attempts;
        } while (!rng.bernoulli(0.3));
    }
    CHECK(std::abs(attempts / 1e5 - expected_attempts(0.3)) / expected_attempts(0.3) < 0.02);
    CHECK_THROWS(expected_attempts(0.0));
}

TEST_CASE("expected_cost")
{
    const EnergyParams e;
    CHECK(e.delta() == doctest::Approx(1024.0 / 15000.0));
    CHECK(expected_cost(0.5, 1, 1.0, e) == doctest::Approx(0.037547).epsilon(1e-4));
    CHECK(expected_cost(0.5, 1, 1.0, e) == doctest::Approx(0.55 * 1024.0 / 15000.0));

    for (double p : {0.9, 0.5, 0.31})
    {
        CHECK(expected_cost(0.4, 3, p / 2, e) == doctest::Approx(4.0 * expected_cost(0.4, 3, p, e)).epsilon(1e-12));
    }
    CHECK_THROWS(expected_cost(0.4, 3, 0.0, e));
}

TEST_CASE("expected_cost matches a data-plus-acknowledgement retransmission process")
{
    const EnergyParams e;
    const double p_ts = 0.5;
    const int n_rel = 3;
    const double psc = 0.3;
    const double per_attempt = (e.xi * p_ts + n_rel * e.e_r_w) * e.delta();
    Rng rng(8);
    double spent = 0.0;
    for (int t = 0; t < 100'000; ++t)
    {
        bool done = false;
        while (!done)
        {
            spent += per_attempt;
            const bool data = rng.bernoulli(psc);
            const bool ack = rng.bernoulli(psc);
            done = data && ack;
        }
    }
    const double expected = expected_cost(p_ts, n_rel, psc, e);
    CHECK(std::abs(spent / 1e5 - expected) / expected < 0.02);
}
