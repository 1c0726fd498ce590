#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lqes/generator.hpp"
#include "lqes/liquidity.hpp"

// Brute-force oracle: samples the normal variance-mixture representation
// Y = sqrt(W) V directly and estimates VaR/ES empirically, independent of
// the Fourier engine it validates.

namespace lqes {

// Draws from the mixing law W of a GH family. Deterministic given the seed.
class MixtureSampler {
public:
    MixtureSampler(const GHParams& params, std::uint64_t seed);

    // iid draws from the mixing law; sample mean converges to var(Y).
    std::vector<double> sample_w(std::size_t count);

    // One draw using an external engine (used by the loss simulation).
    double draw_w(std::mt19937_64& rng) const;

    const GHParams& params() const { return params_; }

private:
    GHParams params_;
    std::mt19937_64 rng_;
    // mode-shifted ratio-of-uniforms bounds for the general GIG case
    double gig_mode_ = 0.0, gig_umax_ = 0.0, gig_vlo_ = 0.0, gig_vhi_ = 0.0;
    bool gig_ready_ = false;
};

struct McEstimate {
    double es = 0.0;
    double std_error = 0.0;
    std::size_t n_tail = 0;
};

// Simulated losses over the full liquidation horizon, one per path.
// Each time step draws one shared W for all d coordinates (that is what
// makes the step elliptical) plus d standard normals mapped through the
// Cholesky factor of the dispersion matrix. Paths are sharded over a fixed
// number of substreams seeded by (seed, shard); results are identical for
// equal seeds regardless of thread scheduling.
std::vector<double> simulate_losses(const LiquiditySpec& spec, const GHParams& params,
                                    std::size_t paths, std::uint64_t seed);

// Empirical ES at level alpha: mean of the ceil((1-alpha) N) largest losses,
// with the influence-function asymptotic standard error. Requires
// paths >= 1e4 and at least 100 tail observations.
McEstimate estimate_loss_es(const LiquiditySpec& spec, const GHParams& params,
                            double alpha, std::size_t paths, std::uint64_t seed);

}  // namespace lqes
