#pragma once

#include <string>
#include <vector>

#include "lqes/fourier.hpp"
#include "lqes/generator.hpp"
#include "lqes/linalg.hpp"

// Liquidity buckets, cumulative weight vectors, the square-root-of-time
// aggregation formula, and its elliptical generalization via the scaling
// ratio of shortfall-to-sd constants.

namespace lqes {

// Buckets k = 1..n with horizons h_1 < ... < h_n in base-horizon units
// (h = 1 is the 10-day base horizon), per-bucket weight vectors b_k over d
// risk factors (zero outside bucket k), and a dispersion matrix over the
// factors. Covariance of one base-horizon step is var(Y) * dispersion.
struct LiquiditySpec {
    std::vector<int> horizons;
    std::vector<std::vector<double>> weights;  // n vectors of length d
    Matrix dispersion;                         // d x d, symmetric positive definite
    std::string descriptor;                    // e.g. "rho=0.5"

    std::size_t buckets() const { return horizons.size(); }
    std::size_t factors() const { return dispersion.dim(); }
    int horizon_increment(std::size_t k) const {
        return horizons[k] - (k ? horizons[k - 1] : 0);
    }
    void validate() const;  // throws std::invalid_argument
};

// d x d matrix with unit diagonal and constant off-diagonal rho.
// Positive definite for rho in (-1/(d-1), 1); throws outside that range.
Matrix equicorrelation(std::size_t d, double rho);

// One factor per bucket (d = n, b_k = e_k) with an equicorrelated
// dispersion matrix: the configuration of the benchmark experiments.
LiquiditySpec make_single_factor_spec(const std::vector<int>& horizons, double rho);

// Cumulative loads beta_k = sum_{j>=k} b_j and their dispersion quadratic
// forms w_k = beta_k' Omega beta_k.
struct BucketLoads {
    std::vector<std::vector<double>> betas;
    std::vector<double> quadforms;
};

BucketLoads build_loads(const LiquiditySpec& spec);

// sd of the full-horizon loss: sd_Y * sqrt(sum_k (h_k - h_{k-1}) w_k).
double sd_of_loss(const BucketLoads& loads, const LiquiditySpec& spec, double sd_y);

// sqrt( sum_k ((h_k - h_{k-1})/h_1) * ES_k^2 ): the square-root-of-time
// aggregation of per-bucket base-horizon shortfalls.
double basel_aggregate(const std::vector<double>& es_components,
                       const std::vector<int>& horizons);

// Characteristic generator of the full-horizon loss L: the product over
// buckets of phi^{h_k - h_{k-1}} evaluated at s * sqrt(beta_k' Omega beta_k).
CharacteristicGenerator loss_generator(const LiquiditySpec& spec,
                                       const CharacteristicGenerator& g);

struct RiskReport {
    std::string model;
    double alpha = 0.0;
    std::string omega_descriptor;
    double c_base = 0.0;          // ES/sd for the one-step base-horizon law
    double c_agg = 0.0;           // ES/sd for the aggregate loss law
    double ratio = 0.0;           // c_agg / c_base
    double es_basel = 0.0;        // square-root-of-time aggregate
    double es_generalized = 0.0;  // ratio * es_basel = exact elliptical ES
    std::vector<double> component_es;  // ES of beta_k' X over the base horizon
};

// Full pipeline: base-law ES and sd, aggregate-law ES and sd (the aggregate
// characteristic function is the product of horizon-increment powers of the
// base one evaluated at s*sqrt(w_k)), the two constants, their ratio, and
// both aggregate shortfalls. Engine errors are re-thrown with the pipeline
// step that produced them.
RiskReport scaling_ratio(const LiquiditySpec& spec, const CharacteristicGenerator& g,
                         double alpha, const InversionSettings& cfg = {});

// Same pipeline with the base-law shortfall supplied by the caller; the
// experiment runner computes it once per (model, alpha, h1) and reuses it
// across correlation columns and bucket grids.
RiskReport scaling_ratio(const LiquiditySpec& spec, const CharacteristicGenerator& g,
                         double alpha, double es_base, const InversionSettings& cfg);

}  // namespace lqes
