#pragma once

// Special functions used by the generalized hyperbolic characteristic
// functions. Thin wrappers that add order symmetry, domain checking and a
// log-space variant suited to the large-argument ratios taken elsewhere.

namespace lqes::specfun {

// Modified Bessel function of the third kind, K_nu(x), for any finite real
// order. Symmetric in the order: K_nu = K_{-nu}. Underflows to 0 for large x
// instead of raising. Throws std::domain_error for x <= 0 or non-finite input.
double bessel_k(double order, double x);

// ln K_nu(x). Stays representable far beyond the underflow point of
// bessel_k (K_nu(x) ~ sqrt(pi/2x) e^{-x} for large x).
double log_bessel_k(double order, double x);

// ln Gamma(x), x > 0.
double log_gamma(double x);

}  // namespace lqes::specfun
