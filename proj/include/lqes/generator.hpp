#pragma once

#include <functional>
#include <string>
#include <vector>

// Characteristic generators of symmetric univariate laws from the
// generalized hyperbolic family, plus the composition rules (convolution
// powers, scaling, independent products) used to assemble the loss law of a
// multi-horizon portfolio.

namespace lqes {

enum class Family { Gauss, StudentT, VG, NIG, Hyp, GIG };

// Parameter set for the GH sub-families. Only the fields relevant to the
// chosen family are read; the named constructors fill the redundant ones
// (e.g. StudentT stores lambda = -nu/2, chi = nu, kappa = 0).
struct GHParams {
    Family family = Family::Gauss;
    double lambda = 0.0;  // GIG shape
    double chi = 0.0;     // GIG parameter (coefficient of 1/w)
    double kappa = 0.0;   // GIG parameter (coefficient of w)
    double nu = 0.0;      // StudentT degrees of freedom, = -2 lambda
    double theta = 0.0;   // NIG/Hyp reparameterization, = sqrt(chi*kappa)

    static GHParams gauss();
    static GHParams student_t(double nu);
    static GHParams vg(double lambda);   // kappa fixed at 2
    static GHParams nig(double theta);   // lambda = -1/2, chi = 1
    static GHParams hyp(double theta);   // lambda = 1, chi = 1
    static GHParams gig(double lambda, double chi, double kappa);

    // Throws std::invalid_argument when the parameter domain is violated
    // (lambda<0 needs chi>0, kappa>=0; lambda=0 needs chi>0, kappa>0;
    // lambda>0 needs chi>=0, kappa>0; StudentT needs nu>2).
    void validate() const;

    // var(Y) = E(W) of the mixing law.
    double variance() const;

    std::string label() const;
};

// A symmetric univariate law represented by its characteristic function
// phi(s) = psi(s^2) (real, even, positive for the supported mixtures) and
// its standard deviation. Immutable; cheap to copy; safe to share across
// threads.
class CharacteristicGenerator {
public:
    CharacteristicGenerator(std::function<double(double)> log_eval, double sd,
                            std::string label);

    // phi(|s|). Exactly 1 at s = 0.
    double eval(double s) const;
    // ln phi(|s|), clamped to <= 0 so |phi| <= 1 holds to the last bit.
    double log_eval(double s) const;

    double sd() const { return sd_; }
    const std::string& label() const { return label_; }

private:
    std::function<double(double)> log_eval_;
    double sd_;
    std::string label_;
};

// Characteristic function of the family at the given parameters, with the
// family's standard deviation attached.
CharacteristicGenerator make_generator(const GHParams& p);

// m-fold convolution of iid copies: phi^m, sd' = sqrt(m) sd.
CharacteristicGenerator power_generator(const CharacteristicGenerator& g, int m);

// Law of sqrt(c) Y: phi'(s) = phi(s sqrt(c)), sd' = sqrt(c) sd.
CharacteristicGenerator scale_generator(const CharacteristicGenerator& g, double c);

// Sum of independent variables: pointwise product of the characteristic
// functions, variances add.
CharacteristicGenerator product_generator(const std::vector<CharacteristicGenerator>& gs);

}  // namespace lqes
