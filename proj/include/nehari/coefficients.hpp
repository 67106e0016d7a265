#pragma once

#include <string>

namespace nehari {

/// Parametric radial coefficient family. Every admissible profile is
/// nonnegative, bounded, continuous and tends to zero at infinity, so the
/// decay/integrability hypotheses can be checked in closed form instead of
/// by numerical tail integration.
enum class ProfileFamily { zero, compact_bump, exponential, power_exponential };

std::string family_name(ProfileFamily f);
ProfileFamily family_from_name(const std::string& name);

struct CoefficientProfile {
    ProfileFamily family = ProfileFamily::zero;
    double amplitude = 0.0;  ///< A >= 0
    double rate = 0.0;       ///< exponential rate kappa (1/length)
    double power = 0.0;      ///< algebraic exponent q >= 0
    double radius = 1.0;     ///< bump support radius R0 > 0

    double operator()(double r) const;

    /// True when the profile is identically zero.
    bool vanishes() const;
    /// True when the profile is exactly A*exp(-rate*r) with A, rate > 0.
    bool pure_exponential() const;
    /// True when the support is compact ({r <= R0} or empty).
    bool compact_support() const;

    void validate() const;

    static CoefficientProfile zero();
    static CoefficientProfile compact_bump(double amplitude, double radius);
    static CoefficientProfile exponential(double amplitude, double rate);
    static CoefficientProfile power_exponential(double amplitude, double rate, double power);
};

/// Pointwise evaluation at radius r >= 0.
///   zero              -> 0
///   compact_bump      -> A * max(0, 1-(r/R0)^2)^2
///   exponential       -> A * exp(-kappa r)
///   power_exponential -> A * (1+r)^-q * exp(-kappa r)
double eval_coefficient(const CoefficientProfile& profile, double r);

struct ProblemParams {
    int dim = 2;        ///< space dimension N >= 1
    double p = 3.0;     ///< superlinear exponent, p > 1, subcritical for N >= 3
    double a_inf = 1.0; ///< limit of the linear coefficient, > 0
    double b_inf = 1.0; ///< limit of the nonlinear coefficient, > 0
    double lambda = 0.0;

    void validate() const;
    double kappa() const; ///< sqrt(a_inf), the far-field decay rate
};

enum class Regime { fast_a, slow_a, unclassified };
std::string regime_name(Regime r);

/// Outcome of the closed-form hypothesis checks for a coefficient pair.
/// alpha/beta are the decay exponents of a and b, in units of sqrt(a_inf)
/// when the fast-a condition applies and units of sqrt(sigma) for slow-a.
/// Infinite exponents (compact support) are reported as +inf.
struct HypothesisReport {
    bool h1 = false; ///< a admissible: integrable class, a >= 0, a != 0, a -> 0
    bool h2 = false; ///< b admissible: bounded, b >= 0, b != 0, b -> 0
    bool h3 = false; ///< a decays faster than b, with beta < min(2, alpha)
    bool h4 = false; ///< a decays slower/equal, with alpha <= min(p+1, beta)
    bool h5 = false; ///< a integrable against |x|^{N-1} e^{2 sqrt(a_inf)|x|}
    double alpha = 0.0;
    double beta = 0.0;
    double sigma = 0.0;
    Regime regime = Regime::unclassified;
};

/// Deterministic, pure classification of a pair against the hypotheses.
/// Throws std::invalid_argument unless sigma lies in (0, a_inf).
HypothesisReport classify_hypotheses(const CoefficientProfile& a,
                                     const CoefficientProfile& b,
                                     const ProblemParams& params, double sigma);

} // namespace nehari
