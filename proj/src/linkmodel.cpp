#include "erto/linkmodel.hpp"

#include "erto/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace erto {

namespace {

constexpr std::size_t kLogSpaceThreshold = 20;

void
check_link(double p_ts, double d_rs)
{
    if (!(p_ts > 0.0))
    {
        throw InvalidParameter("p_si: transmission power must be positive");
    }
    if (!(d_rs > 0.0))
    {
        throw InvalidParameter("p_si: link distance must be positive");
    }
}

void
check_interferer(const Interferer& i)
{
    if (!(i.power_w > 0.0) || !(i.distance_m > 0.0) || !(i.activity >= 0.0 && i.activity <= 1.0))
    {
        throw InvalidParameter("p_si: interferer needs positive power, positive distance and activity in [0,1]");
    }
}

} // namespace

double
RadioParams::antenna_gain(double g_t, double g_r, double wavelength_m, double system_loss)
{
    constexpr double four_pi = 4.0 * std::numbers::pi;
    return g_t * g_r * wavelength_m * wavelength_m / (four_pi * four_pi * system_loss);
}

void
RadioParams::validate() const
{
    if (!(beta > 0.0) || !(K > 0.0) || !(G > 0.0) || !(noise_w >= 0.0))
    {
        throw InvalidParameter("radio params: beta, K and G must be positive, noise non-negative");
    }
    if (!(eta >= 2.0 && eta <= 5.0))
    {
        throw InvalidParameter("radio params: eta must lie in [2, 5]");
    }
}

double
p_si(double p_ts, double d_rs, std::span<const Interferer> interferers, const RadioParams& params)
{
    check_link(p_ts, d_rs);
    const double d_eta = pow_eta(d_rs, params.eta);
    const double noise_term = params.beta * params.noise_w * d_eta / (p_ts * params.K);
    const double scale = params.beta / (params.G * p_ts);

    auto factor = [&](const Interferer& i) {
        check_interferer(i);
        const double x = scale * i.power_w * d_eta / pow_eta(i.distance_m, params.eta);
        return i.activity / (1.0 + x) + (1.0 - i.activity);
    };

    if (interferers.size() > kLogSpaceThreshold)
    {
        double log_p = -noise_term;
        for (const auto& i : interferers)
        {
            log_p += std::log(factor(i));
        }
        return std::exp(log_p);
    }
    double p = std::exp(-noise_term);
    for (const auto& i : interferers)
    {
        p *= factor(i);
    }
    return p;
}

bool
sample_reception(double p_ts, double d_rs, std::span<const Interferer> interferers, const RadioParams& params, Rng& rng)
{
    // SINR >= beta rearranged to avoid dividing by a possibly zero denominator:
    //   alpha_s^2 p / d^eta >= beta (sum_i alpha_i^2 P_i / (G d_i^eta) + P_n / K)
    const double signal = rng.exponential() * p_ts / pow_eta(d_rs, params.eta);
    double disturbance = params.noise_w / params.K;
    for (const auto& i : interferers)
    {
        if (i.activity >= 1.0 || rng.bernoulli(i.activity))
        {
            disturbance += rng.exponential() * i.power_w / (params.G * pow_eta(i.distance_m, params.eta));
        }
    }
    return signal >= params.beta * disturbance;
}

MonteCarloEstimate
p_si_montecarlo(double p_ts,
                double d_rs,
                std::span<const Interferer> interferers,
                const RadioParams& params,
                std::uint64_t samples,
                std::uint64_t seed)
{
    if (samples == 0)
    {
        throw InvalidParameter("p_si_montecarlo: need at least one sample");
    }
    check_link(p_ts, d_rs);
    for (const auto& i : interferers)
    {
        check_interferer(i);
    }
    Rng rng(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t k = 0; k < samples; ++k)
    {
        hits += sample_reception(p_ts, d_rs, interferers, params, rng) ? 1 : 0;
    }
    MonteCarloEstimate est;
    est.samples = samples;
    est.p = static_cast<double>(hits) / static_cast<double>(samples);
    est.std_error = std::sqrt(est.p * (1.0 - est.p) / static_cast<double>(samples));
    return est;
}

double
p_sc(std::span<const double> p_si_values)
{
    double miss = 1.0;
    for (double p : p_si_values)
    {
        if (!(p >= 0.0 && p <= 1.0))
        {
            throw InvalidParameter("p_sc: probability outside [0, 1]");
        }
        miss *= 1.0 - p;
    }
    return 1.0 - miss;
}

LinkEstimate
estimate_links(double p_ts, const LinkContext& ctx, const RadioParams& params)
{
    const double r_s = range_of_power(p_ts, ctx.range);
    const double d_ds = ctx.d_ds();

    struct Row
    {
        NodeId id;
        double p;
        InterfererSnapshot snapshot;
    };
    std::vector<Row> rows;
    for (const auto& n : ctx.neighbors)
    {
        if (n.id == ctx.sender)
        {
            continue;
        }
        const double d_sr = distance(n.position, ctx.sender_position);
        const bool is_destination = n.id == ctx.destination;
        if (!is_destination && !in_forwarding_area(d_sr, distance(n.position, ctx.destination_position), r_s, d_ds))
        {
            continue;
        }
        if (is_destination && d_sr > r_s)
        {
            continue;
        }
        InterfererSnapshot snap;
        snap.reserve(n.interferers.size());
        for (const auto& i : n.interferers)
        {
            if (i.node != ctx.sender)
            {
                snap.push_back(i);
            }
        }
        const double p = p_si(p_ts, d_sr, snap, params);
        rows.push_back({n.id, p, std::move(snap)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.p != b.p ? a.p > b.p : a.id < b.id;
    });

    LinkEstimate est;
    for (auto& r : rows)
    {
        est.members.push_back(r.id);
        est.p_si.push_back(r.p);
        est.snapshots.push_back(std::move(r.snapshot));
    }
    est.p_sc = p_sc(est.p_si);
    return est;
}

double
p_sc_predict(double p_ts, int n_rel, const LinkContext& ctx, const RadioParams& params)
{
    if (n_rel < 0)
    {
        throw InvalidParameter("p_sc_predict: n_rel must be non-negative");
    }
    if (n_rel == 0)
    {
        return 0.0;
    }
    const LinkEstimate est = estimate_links(p_ts, ctx, params);
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(n_rel), est.p_si.size());
    return p_sc(std::span<const double>(est.p_si.data(), take));
}

} // namespace erto
