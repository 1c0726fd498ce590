#include "lqes/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace lqes {

namespace {

// Michael-Schucany-Haas transform sampler for the inverse Gaussian law
// IG(mu, shape). Exact; one squared normal, one uniform, one branch.
double draw_inverse_gaussian(double mu, double shape, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double y = normal(rng);
    y *= y;
    double x = mu + mu * mu * y / (2.0 * shape) -
               (mu / (2.0 * shape)) * std::sqrt(4.0 * mu * shape * y + mu * mu * y * y);
    if (x <= 0.0) x = std::numeric_limits<double>::min();  // roundoff guard
    return unif(rng) <= mu / (mu + x) ? x : mu * mu / x;
}

// log of the unnormalized GIG density w^{lambda-1} exp(-(chi/w + kappa w)/2)
double gig_log_kernel(double w, double lambda, double chi, double kappa) {
    return (lambda - 1.0) * std::log(w) - 0.5 * (chi / w + kappa * w);
}

double gig_mode(double lambda, double chi, double kappa) {
    double lm1 = lambda - 1.0;
    return (lm1 + std::sqrt(lm1 * lm1 + chi * kappa)) / kappa;
}

constexpr std::size_t kShards = 16;

}  // namespace

MixtureSampler::MixtureSampler(const GHParams& params, std::uint64_t seed)
    : params_(params), rng_(seed) {
    params_.validate();
    bool needs_rou = params_.family == Family::Hyp ||
                     (params_.family == Family::GIG && params_.lambda != -0.5);
    if (needs_rou) {
        // mode-shifted ratio-of-uniforms bounds for h(w) / h(mode):
        //   u in (0, 1],  v in [vlo, vhi],  accept w = mode + v/u when
        //   u^2 <= h(w)/h(mode)
        double lambda = params_.lambda, chi = params_.chi, kappa = params_.kappa;
        gig_mode_ = gig_mode(lambda, chi, kappa);
        double lh_mode = gig_log_kernel(gig_mode_, lambda, chi, kappa);
        gig_umax_ = 1.0;
        // scan (w - mode) sqrt(h(w)/h(mode)) on a wide log grid around the
        // mode; a 5% margin keeps the rectangle a true bound
        auto v_of = [&](double w) {
            return (w - gig_mode_) *
                   std::exp(0.5 * (gig_log_kernel(w, lambda, chi, kappa) - lh_mode));
        };
        gig_vlo_ = 0.0;
        gig_vhi_ = 0.0;
        for (int i = 0; i <= 4096; ++i) {
            double f = std::exp((i / 4096.0 - 0.5) * 2.0 * std::log(1e8));
            double v = v_of(gig_mode_ * f);
            gig_vlo_ = std::fmin(gig_vlo_, v);
            gig_vhi_ = std::fmax(gig_vhi_, v);
        }
        gig_vlo_ *= 1.05;
        gig_vhi_ *= 1.05;
        gig_ready_ = true;
    }
}

double MixtureSampler::draw_w(std::mt19937_64& rng) const {
    switch (params_.family) {
        case Family::Gauss:
            return 1.0;
        case Family::StudentT: {
            // inverse gamma IG(nu/2, nu/2) as the reciprocal of a gamma
            std::gamma_distribution<double> gamma(params_.nu / 2.0, 1.0);
            return (params_.nu / 2.0) / gamma(rng);
        }
        case Family::VG: {
            std::gamma_distribution<double> gamma(params_.lambda, 1.0);
            return gamma(rng);
        }
        case Family::NIG:
            // lambda = -1/2 is the inverse Gaussian law itself
            return draw_inverse_gaussian(std::sqrt(params_.chi / params_.kappa), params_.chi,
                                         rng);
        case Family::Hyp:
        case Family::GIG: {
            if (params_.lambda == -0.5)
                return draw_inverse_gaussian(std::sqrt(params_.chi / params_.kappa),
                                             params_.chi, rng);
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            double lh_mode = gig_log_kernel(gig_mode_, params_.lambda, params_.chi,
                                            params_.kappa);
            for (int tries = 0; tries < 100000; ++tries) {
                double u = unif(rng) * gig_umax_;
                double v = gig_vlo_ + unif(rng) * (gig_vhi_ - gig_vlo_);
                if (u <= 0.0) continue;
                double w = gig_mode_ + v / u;
                if (w <= 0.0) continue;
                if (2.0 * std::log(u) <=
                    gig_log_kernel(w, params_.lambda, params_.chi, params_.kappa) - lh_mode)
                    return w;
            }
            throw std::runtime_error("MixtureSampler: ratio-of-uniforms did not accept");
        }
    }
    throw std::invalid_argument("MixtureSampler: unknown family");
}

std::vector<double> MixtureSampler::sample_w(std::size_t count) {
    std::vector<double> out(count);
    for (auto& w : out) w = draw_w(rng_);
    return out;
}

std::vector<double> simulate_losses(const LiquiditySpec& spec, const GHParams& params,
                                    std::size_t paths, std::uint64_t seed) {
    spec.validate();
    BucketLoads loads = build_loads(spec);
    Matrix chol = cholesky_lower(spec.dispersion);
    std::size_t d = spec.factors();
    int total_steps = spec.horizons.back();

    // projection vector per time step: gamma_t' X = sqrt(W) (A' beta_k)' V
    // with k the bucket whose increment covers step t
    std::vector<std::vector<double>> proj(total_steps, std::vector<double>(d, 0.0));
    {
        std::size_t k = 0;
        for (int t = 0; t < total_steps; ++t) {
            if (t >= spec.horizons[k]) ++k;
            for (std::size_t i = 0; i < d; ++i) {
                double c = 0.0;
                for (std::size_t r = i; r < d; ++r) c += chol(r, i) * loads.betas[k][r];
                proj[t][i] = c;
            }
        }
    }

    MixtureSampler proto(params, seed);
    std::vector<double> losses(paths);
    std::size_t shards = std::min<std::size_t>(kShards, std::max<std::size_t>(paths, 1));
    auto run_shard = [&](std::size_t shard) {
        std::seed_seq seq{seed, static_cast<std::uint64_t>(shard)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::size_t begin = paths * shard / shards, end = paths * (shard + 1) / shards;
        for (std::size_t p = begin; p < end; ++p) {
            double loss = 0.0;
            for (int t = 0; t < total_steps; ++t) {
                double w = proto.draw_w(rng);  // one W shared by all coordinates
                double root_w = std::sqrt(w);
                double dot = 0.0;
                for (std::size_t i = 0; i < d; ++i) dot += proj[t][i] * normal(rng);
                loss += root_w * dot;
            }
            losses[p] = loss;
        }
    };
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::size_t workers = std::min<std::size_t>(hw, shards);
    if (workers <= 1) {
        for (std::size_t s = 0; s < shards; ++s) run_shard(s);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t s = next++; s < shards; s = next++) run_shard(s);
            });
        for (auto& th : pool) th.join();
    }
    return losses;
}

McEstimate estimate_loss_es(const LiquiditySpec& spec, const GHParams& params, double alpha,
                            std::size_t paths, std::uint64_t seed) {
    if (!(alpha > 0.5 && alpha < 1.0))
        throw std::invalid_argument("estimate_loss_es: alpha must lie in (0.5, 1)");
    if (paths < 10000)
        throw std::invalid_argument("estimate_loss_es: needs at least 1e4 paths");
    // ceil of the exact tail count; the epsilon absorbs binary dust in 1-alpha
    std::size_t m = static_cast<std::size_t>(
        std::ceil((1.0 - alpha) * static_cast<double>(paths) - 1e-9));
    if (m < 100)
        throw std::invalid_argument("estimate_loss_es: fewer than 100 tail observations");

    std::vector<double> losses = simulate_losses(spec, params, paths, seed);
    std::nth_element(losses.begin(), losses.end() - m, losses.end());
    double q = losses[paths - m];  // empirical quantile threshold
    double tail_sum = std::accumulate(losses.end() - m, losses.end(), 0.0);

    // influence-function variance: var(ES_hat) ~ var((L-q)+) / ((1-alpha)^2 N)
    double s1 = 0.0, s2 = 0.0;
    for (double l : losses) {
        double e = l > q ? l - q : 0.0;
        s1 += e;
        s2 += e * e;
    }
    double n = static_cast<double>(paths);
    double var_plus = s2 / n - (s1 / n) * (s1 / n);
    McEstimate est;
    est.es = tail_sum / static_cast<double>(m);
    est.std_error = std::sqrt(std::fmax(var_plus, 0.0) / n) / (1.0 - alpha);
    est.n_tail = m;
    return est;
}

}  // namespace lqes
