#pragma once

#include <functional>

// Test-only reference implementations, kept independent of the code paths
// they validate: brute-force quadrature, the Bessel-K integral
// representation, closed-form normal and Student t quantities, and the
// closed-form GH densities obtained by integrating the variance mixture
// analytically.

namespace oracles {

// adaptive Simpson on [a, b]
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt
double bessel_k_integral(double nu, double x);

double normal_pdf(double x);
double normal_cdf(double x);
double normal_quantile(double p);  // Acklam + one Halley polish
// ES of the standard normal: pdf(quantile(a)) / (1 - a)
double normal_es(double alpha);

double t_pdf(double nu, double x);
double t_cdf(double nu, double x);       // via the incomplete beta function
double t_quantile(double nu, double p);  // bisection on t_cdf
// closed form: f(q) (nu + q^2) / ((1 - alpha)(nu - 1))
double t_es(double nu, double alpha);

// densities of the symmetric GH families at unit scale conventions
double vg_density(double lambda, double y);                          // kappa = 2
double gig_mixture_density(double lambda, double chi, double kappa, double y);

}  // namespace oracles
