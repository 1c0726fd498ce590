#include "lqes/generator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "lqes/specfun.hpp"

namespace lqes {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Below this value of var(Y)*s^2 the exact log-space formulas lose the
// signal to cancellation between large logarithms; the quadratic Taylor
// term of ln phi is exact enough there.
constexpr double kTaylorCut = 1e-10;

}  // namespace

GHParams GHParams::gauss() {
    GHParams p;
    p.family = Family::Gauss;
    return p;
}

GHParams GHParams::student_t(double nu) {
    GHParams p;
    p.family = Family::StudentT;
    p.nu = nu;
    p.lambda = -nu / 2.0;
    p.chi = nu;
    p.kappa = 0.0;
    return p;
}

GHParams GHParams::vg(double lambda) {
    GHParams p;
    p.family = Family::VG;
    p.lambda = lambda;
    p.chi = 0.0;
    p.kappa = 2.0;
    return p;
}

GHParams GHParams::nig(double theta) {
    GHParams p;
    p.family = Family::NIG;
    p.lambda = -0.5;
    p.theta = theta;
    p.chi = 1.0;
    p.kappa = theta * theta;
    return p;
}

GHParams GHParams::hyp(double theta) {
    GHParams p;
    p.family = Family::Hyp;
    p.lambda = 1.0;
    p.theta = theta;
    p.chi = 1.0;
    p.kappa = theta * theta;
    return p;
}

GHParams GHParams::gig(double lambda, double chi, double kappa) {
    GHParams p;
    p.family = Family::GIG;
    p.lambda = lambda;
    p.chi = chi;
    p.kappa = kappa;
    if (chi > 0.0 && kappa > 0.0) p.theta = std::sqrt(chi * kappa);
    return p;
}

void GHParams::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("GHParams: " + msg); };
    switch (family) {
        case Family::Gauss:
            return;
        case Family::StudentT:
            if (!(nu > 2.0)) fail("StudentT needs nu > 2 for a finite variance, got nu=" + fmt(nu));
            return;
        case Family::VG:
            if (!(lambda > 0.0)) fail("VG needs lambda > 0, got lambda=" + fmt(lambda));
            return;
        case Family::NIG:
            if (!(theta > 0.0)) fail("NIG needs theta > 0, got theta=" + fmt(theta));
            return;
        case Family::Hyp:
            if (!(theta > 0.0)) fail("Hyp needs theta > 0, got theta=" + fmt(theta));
            return;
        case Family::GIG:
            if (!std::isfinite(lambda) || !std::isfinite(chi) || !std::isfinite(kappa))
                fail("non-finite GIG parameters");
            if (lambda < 0.0 && !(chi > 0.0 && kappa >= 0.0))
                fail("lambda < 0 needs chi > 0, kappa >= 0");
            if (lambda == 0.0 && !(chi > 0.0 && kappa > 0.0))
                fail("lambda = 0 needs chi > 0, kappa > 0");
            if (lambda > 0.0 && !(chi >= 0.0 && kappa > 0.0))
                fail("lambda > 0 needs chi >= 0, kappa > 0");
            if (chi == 0.0 || kappa == 0.0)
                fail("boundary chi=0 or kappa=0 is handled by the VG/StudentT families");
            return;
    }
    fail("unknown family");
}

double GHParams::variance() const {
    validate();
    switch (family) {
        case Family::Gauss:
            return 1.0;
        case Family::StudentT:
            return nu / (nu - 2.0);
        case Family::VG:
            return lambda;
        case Family::NIG:
            return 1.0 / theta;
        case Family::Hyp: {
            // theta^{-1} K_2(theta) / K_1(theta)
            double r = specfun::log_bessel_k(2.0, theta) - specfun::log_bessel_k(1.0, theta);
            return std::exp(r) / theta;
        }
        case Family::GIG: {
            double omega = std::sqrt(chi * kappa);
            double r = specfun::log_bessel_k(lambda + 1.0, omega) - specfun::log_bessel_k(lambda, omega);
            return std::sqrt(chi / kappa) * std::exp(r);
        }
    }
    throw std::invalid_argument("GHParams: unknown family");
}

std::string GHParams::label() const {
    switch (family) {
        case Family::Gauss:
            return "gauss";
        case Family::StudentT:
            return "t(nu=" + fmt(nu) + ")";
        case Family::VG:
            return "vg(lambda=" + fmt(lambda) + ")";
        case Family::NIG:
            return "nig(theta=" + fmt(theta) + ")";
        case Family::Hyp:
            return "hyp(theta=" + fmt(theta) + ")";
        case Family::GIG:
            return "gig(lambda=" + fmt(lambda) + ",chi=" + fmt(chi) + ",kappa=" + fmt(kappa) + ")";
    }
    return "?";
}

CharacteristicGenerator::CharacteristicGenerator(std::function<double(double)> log_eval,
                                                 double sd, std::string label)
    : log_eval_(std::move(log_eval)), sd_(sd), label_(std::move(label)) {
    if (!(sd_ > 0.0) || !std::isfinite(sd_))
        throw std::invalid_argument("CharacteristicGenerator: sd must be positive and finite");
}

double CharacteristicGenerator::log_eval(double s) const {
    s = std::fabs(s);
    if (s == 0.0) return 0.0;
    double l = log_eval_(s);
    return l < 0.0 ? l : 0.0;
}

double CharacteristicGenerator::eval(double s) const {
    double l = log_eval(s);
    return l < -745.0 ? 0.0 : std::exp(l);
}

CharacteristicGenerator make_generator(const GHParams& p) {
    p.validate();
    double var = p.variance();
    double sd = std::sqrt(var);

    std::function<double(double)> log_eval;
    switch (p.family) {
        case Family::Gauss:
            log_eval = [](double s) { return -0.5 * s * s; };
            break;
        case Family::StudentT: {
            double nu = p.nu;
            log_eval = [nu, var](double s) {
                if (var * s * s < kTaylorCut) return -0.5 * var * s * s;
                return (nu / 4.0) * std::log(nu * s * s) - (nu / 2.0 - 1.0) * M_LN2 -
                       specfun::log_gamma(nu / 2.0) +
                       specfun::log_bessel_k(nu / 2.0, std::sqrt(nu) * s);
            };
            break;
        }
        case Family::VG: {
            double lambda = p.lambda;
            log_eval = [lambda](double s) { return -lambda * std::log1p(0.5 * s * s); };
            break;
        }
        case Family::NIG: {
            // closed form: K_{1/2}(x) = sqrt(pi/2x) e^{-x} collapses the
            // Bessel ratio to exp(theta - sqrt(theta^2 + s^2))
            double theta = p.theta;
            log_eval = [theta](double s) { return theta - std::hypot(theta, s); };
            break;
        }
        case Family::Hyp: {
            double theta = p.theta;
            double log_k1_theta = specfun::log_bessel_k(1.0, theta);
            log_eval = [theta, var, log_k1_theta](double s) {
                if (var * s * s < kTaylorCut) return -0.5 * var * s * s;
                double z = std::hypot(theta, s);
                return std::log(theta / z) + specfun::log_bessel_k(1.0, z) - log_k1_theta;
            };
            break;
        }
        case Family::GIG: {
            double lambda = p.lambda, chi = p.chi, kappa = p.kappa;
            double log_k_omega = specfun::log_bessel_k(lambda, std::sqrt(chi * kappa));
            log_eval = [lambda, chi, kappa, var, log_k_omega](double s) {
                if (var * s * s < kTaylorCut) return -0.5 * var * s * s;
                double z2 = s * s + kappa;
                return 0.5 * lambda * std::log(kappa / z2) +
                       specfun::log_bessel_k(lambda, std::sqrt(chi * z2)) - log_k_omega;
            };
            break;
        }
    }
    return CharacteristicGenerator(std::move(log_eval), sd, p.label());
}

CharacteristicGenerator power_generator(const CharacteristicGenerator& g, int m) {
    if (m < 1) throw std::invalid_argument("power_generator: m must be >= 1");
    if (m == 1) return g;
    auto inner = g;
    return CharacteristicGenerator(
        [inner, m](double s) { return m * inner.log_eval(s); },
        std::sqrt(static_cast<double>(m)) * g.sd(), g.label() + "^" + std::to_string(m));
}

CharacteristicGenerator scale_generator(const CharacteristicGenerator& g, double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("scale_generator: c must be positive and finite");
    if (c == 1.0) return g;
    auto inner = g;
    double root_c = std::sqrt(c);
    std::ostringstream label;
    label << g.label() << "*s" << c;
    return CharacteristicGenerator(
        [inner, root_c](double s) { return inner.log_eval(s * root_c); },
        root_c * g.sd(), label.str());
}

CharacteristicGenerator product_generator(const std::vector<CharacteristicGenerator>& gs) {
    if (gs.empty()) throw std::invalid_argument("product_generator: empty list");
    if (gs.size() == 1) return gs.front();
    double var = 0.0;
    std::string label;
    for (const auto& g : gs) {
        var += g.sd() * g.sd();
        label += label.empty() ? g.label() : "*" + g.label();
    }
    auto inner = gs;
    return CharacteristicGenerator(
        [inner](double s) {
            double l = 0.0;
            for (const auto& g : inner) l += g.log_eval(s);
            return l;
        },
        std::sqrt(var), label);
}

}  // namespace lqes
