#include "lqes/specfun.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>
#include <gsl/gsl_sf_gamma.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace lqes::specfun {

namespace {

// GSL aborts by default; the wrappers below check status codes themselves.
const int g_handler_off = [] {
    gsl_set_error_handler_off();
    return 0;
}();

void check_domain(double order, double x) {
    if (!std::isfinite(order) || !std::isfinite(x))
        throw std::domain_error("bessel_k: non-finite input");
    if (x <= 0.0)
        throw std::domain_error("bessel_k: requires x > 0, got x=" + std::to_string(x));
}

}  // namespace

double log_bessel_k(double order, double x) {
    check_domain(order, x);
    gsl_sf_result r;
    // K is even in the order
    int status = gsl_sf_bessel_lnKnu_e(std::fabs(order), x, &r);
    if (status != GSL_SUCCESS)
        throw std::domain_error(std::string("bessel_k: ") + gsl_strerror(status));
    return r.val;
}

double bessel_k(double order, double x) {
    double l = log_bessel_k(order, x);
    // exp underflows cleanly to 0 for x beyond ~740
    return std::exp(l);
}

double log_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("log_gamma: requires x > 0");
    gsl_sf_result r;
    int status = gsl_sf_lngamma_e(x, &r);
    if (status != GSL_SUCCESS)
        throw std::domain_error(std::string("log_gamma: ") + gsl_strerror(status));
    return r.val;
}

}  // namespace lqes::specfun
