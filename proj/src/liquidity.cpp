#include "lqes/liquidity.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lqes {

void LiquiditySpec::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("LiquiditySpec: " + msg); };
    std::size_t n = horizons.size();
    std::size_t d = dispersion.dim();
    if (n == 0) fail("no buckets");
    if (weights.size() != n) fail("one weight vector per bucket required");
    int prev = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (horizons[k] <= prev) fail("horizons must be strictly increasing positive integers");
        prev = horizons[k];
        if (weights[k].size() != d) fail("weight vector length must equal the factor count");
    }
    // each factor belongs to at most one bucket
    for (std::size_t i = 0; i < d; ++i) {
        int owners = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (weights[k][i] != 0.0) ++owners;
        if (owners > 1) fail("factor " + std::to_string(i) + " appears in more than one bucket");
    }
    if (!dispersion.symmetric()) fail("dispersion matrix must be symmetric");
    cholesky_lower(dispersion);  // positive definiteness
}

Matrix equicorrelation(std::size_t d, double rho) {
    if (d == 0) throw std::invalid_argument("equicorrelation: d must be positive");
    double lower = d > 1 ? -1.0 / (static_cast<double>(d) - 1.0) : -1.0;
    if (!(rho > lower && rho < 1.0)) {
        std::ostringstream msg;
        msg << "equicorrelation: rho=" << rho << " outside (" << lower << ", 1) for d=" << d;
        throw std::invalid_argument(msg.str());
    }
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = (i == j) ? 1.0 : rho;
    return m;
}

LiquiditySpec make_single_factor_spec(const std::vector<int>& horizons, double rho) {
    LiquiditySpec spec;
    spec.horizons = horizons;
    std::size_t n = horizons.size();
    spec.weights.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) spec.weights[k][k] = 1.0;
    spec.dispersion = equicorrelation(n, rho);
    std::ostringstream descr;
    descr << "rho=" << rho;
    spec.descriptor = descr.str();
    spec.validate();
    return spec;
}

BucketLoads build_loads(const LiquiditySpec& spec) {
    spec.validate();
    std::size_t n = spec.buckets(), d = spec.factors();
    BucketLoads loads;
    loads.betas.assign(n, std::vector<double>(d, 0.0));
    loads.quadforms.assign(n, 0.0);
    // beta_k = sum_{j >= k} b_j, built backwards so beta_k = beta_{k+1} + b_k
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t i = 0; i < d; ++i)
            loads.betas[k][i] = spec.weights[k][i] + (k + 1 < n ? loads.betas[k + 1][i] : 0.0);
    }
    for (std::size_t k = 0; k < n; ++k) {
        bool zero = true;
        for (double v : loads.betas[k])
            if (v != 0.0) zero = false;
        if (zero)
            throw std::invalid_argument("build_loads: beta_" + std::to_string(k + 1) +
                                        " is the zero vector");
        loads.quadforms[k] = quadratic_form(spec.dispersion, loads.betas[k]);
        if (!(loads.quadforms[k] > 0.0))
            throw std::invalid_argument("build_loads: nonpositive quadratic form at bucket " +
                                        std::to_string(k + 1));
    }
    return loads;
}

double sd_of_loss(const BucketLoads& loads, const LiquiditySpec& spec, double sd_y) {
    if (!(sd_y > 0.0)) throw std::invalid_argument("sd_of_loss: sd_y must be positive");
    if (loads.quadforms.size() != spec.buckets())
        throw std::invalid_argument("sd_of_loss: loads do not match the spec");
    double acc = 0.0;
    for (std::size_t k = 0; k < spec.buckets(); ++k)
        acc += spec.horizon_increment(k) * loads.quadforms[k];
    return sd_y * std::sqrt(acc);
}

double basel_aggregate(const std::vector<double>& es_components,
                       const std::vector<int>& horizons) {
    if (es_components.size() != horizons.size())
        throw std::invalid_argument("basel_aggregate: component/horizon length mismatch");
    if (horizons.empty()) throw std::invalid_argument("basel_aggregate: empty input");
    double h1 = horizons.front();
    double acc = 0.0;
    int prev = 0;
    for (std::size_t k = 0; k < horizons.size(); ++k) {
        if (es_components[k] < 0.0)
            throw std::invalid_argument("basel_aggregate: negative ES component");
        double scale = (horizons[k] - prev) / h1;
        acc += scale * es_components[k] * es_components[k];
        prev = horizons[k];
    }
    return std::sqrt(acc);
}

CharacteristicGenerator loss_generator(const LiquiditySpec& spec,
                                       const CharacteristicGenerator& g) {
    BucketLoads loads = build_loads(spec);
    std::vector<CharacteristicGenerator> parts;
    parts.reserve(spec.buckets());
    for (std::size_t k = 0; k < spec.buckets(); ++k)
        parts.push_back(scale_generator(power_generator(g, spec.horizon_increment(k)),
                                        loads.quadforms[k]));
    return product_generator(parts);
}

namespace {

std::string step_context(int step, const CharacteristicGenerator& g, double alpha,
                         const LiquiditySpec& spec, const char* what) {
    std::ostringstream msg;
    msg << "scaling_ratio step " << step << " (" << g.label() << ", alpha=" << alpha << ", "
        << spec.descriptor << "): " << what;
    return msg.str();
}

}  // namespace

RiskReport scaling_ratio(const LiquiditySpec& spec, const CharacteristicGenerator& g,
                         double alpha, double es_base, const InversionSettings& cfg) {
    if (!(alpha > 0.5 && alpha < 1.0))
        throw std::invalid_argument("scaling_ratio: alpha must lie in (0.5, 1)");
    BucketLoads loads = build_loads(spec);

    RiskReport rep;
    rep.model = g.label();
    rep.alpha = alpha;
    rep.omega_descriptor = spec.descriptor;

    int h1 = spec.horizons.front();
    double sd_z = std::sqrt(static_cast<double>(h1)) * g.sd();  // step 2
    rep.c_base = es_base / sd_z;                                // step 3

    int step = 4;  // ES of the aggregate loss, phi_L(s) = prod phi^{dh_k}(s sqrt(w_k))
    try {
        CharacteristicGenerator loss = loss_generator(spec, g);
        double es_l = expected_shortfall(loss, alpha, cfg);

        step = 5;
        double sd_l = sd_of_loss(loads, spec, g.sd());
        step = 6;
        rep.c_agg = es_l / sd_l;
        step = 7;
        rep.ratio = rep.c_agg / rep.c_base;
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(step_context(step, g, alpha, spec, e.what()),
                               e.achieved_error, e.required_tol);
    } catch (const BracketingError& e) {
        throw BracketingError(step_context(step, g, alpha, spec, e.what()), e.bracket_lo,
                              e.bracket_hi);
    }

    // component shortfalls over the base horizon: beta_k' X_{[0,h1]} is
    // sqrt(w_k) Z in law, so its ES scales exactly
    rep.component_es.reserve(spec.buckets());
    for (double w : loads.quadforms) rep.component_es.push_back(std::sqrt(w) * es_base);
    rep.es_basel = basel_aggregate(rep.component_es, spec.horizons);
    rep.es_generalized = rep.ratio * rep.es_basel;
    return rep;
}

RiskReport scaling_ratio(const LiquiditySpec& spec, const CharacteristicGenerator& g,
                         double alpha, const InversionSettings& cfg) {
    if (!(alpha > 0.5 && alpha < 1.0))
        throw std::invalid_argument("scaling_ratio: alpha must lie in (0.5, 1)");
    spec.validate();
    double es_base;
    try {  // step 1: ES of the base-horizon law Z, phi_Z = phi^{h1}
        es_base = expected_shortfall(power_generator(g, spec.horizons.front()), alpha, cfg);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(step_context(1, g, alpha, spec, e.what()), e.achieved_error,
                               e.required_tol);
    } catch (const BracketingError& e) {
        throw BracketingError(step_context(1, g, alpha, spec, e.what()), e.bracket_lo,
                              e.bracket_hi);
    }
    return scaling_ratio(spec, g, alpha, es_base, cfg);
}

}  // namespace lqes
