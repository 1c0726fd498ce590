#pragma once

#include <stdexcept>
#include <string>

#include "lqes/generator.hpp"

// Density, distribution function, truncated first moment, VaR and expected
// shortfall of a symmetric law given only its characteristic function, by
// one-dimensional Fourier inversion (Gil-Pelaez form for the distribution
// function). The truncated-moment integrand oscillates at the truncation
// frequency, so integration walks half-period panels with an adaptive
// Gauss-Kronrod rule per panel and compensated summation across panels.

namespace lqes {

struct InversionSettings {
    // Truncate the s-integral once the alternating-tail envelope bound of
    // the remainder drops below this.
    double trunc_eps = 1e-12;
    // Per-panel Gauss-Kronrod acceptance: err <= max(abs, rel*|panel|, noise floor).
    double quad_rel_tol = 1e-11;
    double quad_abs_tol = 1e-14;
    // Upper-limit schedule for the expected-shortfall integral:
    // b_m = b_initial * b_growth^m * max(1, |VaR|).
    double b_growth = 2.0;
    double b_initial = 4.0;
    // Stop once two successive estimates differ by less than
    // b_stop_tol / (1 - alpha).
    double b_stop_tol = 1e-7;
    // VaR bracketing interval width.
    double root_tol = 1e-12;
    // Cap on bisection iterations and on b-schedule steps.
    int max_iter = 60;

    void validate() const;  // throws std::invalid_argument
};

// Quadrature failed to reach its tolerance; carries the achieved estimate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved, double required)
        : std::runtime_error(what), achieved_error(achieved), required_tol(required) {}
    double achieved_error;
    double required_tol;
};

// VaR root bracketing failed; carries the last bracket.
class BracketingError : public std::runtime_error {
public:
    BracketingError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
    double bracket_lo;
    double bracket_hi;
};

// f(y) = (1/pi) int_0^inf cos(sy) phi(s) ds
double density(const CharacteristicGenerator& g, double y,
               const InversionSettings& cfg = {});

// F(y) = 1/2 + (1/pi) int_0^inf sin(sy)/s phi(s) ds.
// F(0) = 1/2 exactly and F(-y) = 1 - F(y) by construction.
double cdf(const CharacteristicGenerator& g, double y,
           const InversionSettings& cfg = {});

// E(Y 1{a <= Y <= b}) for finite a < b.
double truncated_mean(const CharacteristicGenerator& g, double a, double b,
                      const InversionSettings& cfg = {});

// Quantile at alpha in (0.5, 1): bisection on the inverted distribution
// function, then one secant polish.
double value_at_risk(const CharacteristicGenerator& g, double alpha,
                     const InversionSettings& cfg = {});

// ES_alpha = lim_{b->inf} E(Y 1{VaR <= Y <= b}) / (1 - alpha), taken along
// the geometric b-schedule until two confirming steps agree.
double expected_shortfall(const CharacteristicGenerator& g, double alpha,
                          const InversionSettings& cfg = {});

namespace detail {
// Trigonometric numerator of the truncated-mean integrand divided by s^2;
// switches to its quartic Taylor form at small phase. Exposed for tests.
double shortfall_kernel(double s, double a, double b);
}  // namespace detail

}  // namespace lqes
