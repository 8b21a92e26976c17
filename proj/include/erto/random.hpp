#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace erto {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t
splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Combine a base seed with a stream label.
constexpr std::uint64_t
mix_seed(std::uint64_t base, std::uint64_t label) noexcept
{
    return splitmix64(splitmix64(base) ^ (label + 0x632BE59BD9B4E019ULL));
}

/**
 * Random stream with host-independent variate transforms.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the
 * standard; the <random> distributions are not, so uniform and exponential
 * variates are derived here from the raw 64-bit words.
 */
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : m_engine(seed) {}

    /// Next raw 64-bit word, e.g. to seed a child stream.
    std::uint64_t next() { return m_engine(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unit-mean exponential.
    double exponential() { return -std::log1p(-uniform()); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n)
    {
        // Lemire's multiply-shift with rejection.
        while (true)
        {
            const std::uint64_t x = m_engine();
            const u128 m = static_cast<u128>(x) * n;
            const auto low = static_cast<std::uint64_t>(m);
            if (low >= n || low >= (-n) % n)
            {
                return static_cast<std::uint64_t>(m >> 64);
            }
        }
    }

    /// Poisson variate by sequential inversion; fine for means up to a few hundred.
    std::uint64_t poisson(double mean)
    {
        if (mean <= 0.0)
        {
            return 0;
        }
        // Start the search at the mode to keep the walk short.
        const auto mode = static_cast<std::uint64_t>(std::floor(mean));
        const double log_pmf_mode =
            static_cast<double>(mode) * std::log(mean) - mean - std::lgamma(static_cast<double>(mode) + 1.0);
        const double pmf_mode = std::exp(log_pmf_mode);
        double cdf_mode = 0.0;
        {
            double term = std::exp(-mean);
            for (std::uint64_t k = 0; k <= mode; ++k)
            {
                if (k > 0)
                {
                    term *= mean / static_cast<double>(k);
                }
                cdf_mode += term;
            }
        }
        const double u = uniform();
        if (u < cdf_mode)
        {
            std::uint64_t k = mode;
            double cdf = cdf_mode;
            double pmf = pmf_mode;
            while (k > 0)
            {
                cdf -= pmf;
                if (u >= cdf)
                {
                    return k;
                }
                pmf *= static_cast<double>(k) / mean;
                --k;
            }
            return 0;
        }
        std::uint64_t k = mode;
        double cdf = cdf_mode;
        double pmf = pmf_mode;
        while (u >= cdf && pmf > 0.0)
        {
            ++k;
            pmf *= mean / static_cast<double>(k);
            cdf += pmf;
        }
        return k;
    }

    std::mt19937_64& engine() noexcept { return m_engine; }

  private:
    __extension__ typedef unsigned __int128 u128;

    std::mt19937_64 m_engine;
};

} // namespace erto
