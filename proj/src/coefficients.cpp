#include "nehari/coefficients.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nehari {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

std::string family_name(ProfileFamily f)
{
    switch (f) {
        case ProfileFamily::zero: return "zero";
        case ProfileFamily::compact_bump: return "compact_bump";
        case ProfileFamily::exponential: return "exponential";
        case ProfileFamily::power_exponential: return "power_exponential";
    }
    throw std::logic_error("unknown profile family");
}

ProfileFamily family_from_name(const std::string& name)
{
    if (name == "zero") return ProfileFamily::zero;
    if (name == "compact_bump") return ProfileFamily::compact_bump;
    if (name == "exponential") return ProfileFamily::exponential;
    if (name == "power_exponential") return ProfileFamily::power_exponential;
    throw std::invalid_argument("unknown coefficient family '" + name + "'");
}

double CoefficientProfile::operator()(double r) const
{
    return eval_coefficient(*this, r);
}

bool CoefficientProfile::vanishes() const
{
    return family == ProfileFamily::zero || amplitude == 0.0;
}

bool CoefficientProfile::pure_exponential() const
{
    if (vanishes() || rate <= 0.0) return false;
    if (family == ProfileFamily::exponential) return true;
    return family == ProfileFamily::power_exponential && power == 0.0;
}

bool CoefficientProfile::compact_support() const
{
    return vanishes() || family == ProfileFamily::compact_bump;
}

void CoefficientProfile::validate() const
{
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
        throw std::invalid_argument("coefficient amplitude must be finite and >= 0");
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("coefficient rate must be finite and >= 0");
    if (!(power >= 0.0) || !std::isfinite(power))
        throw std::invalid_argument("coefficient power must be finite and >= 0");
    if (family == ProfileFamily::compact_bump && !(radius > 0.0))
        throw std::invalid_argument("compact_bump radius must be > 0");
}

CoefficientProfile CoefficientProfile::zero()
{
    return {};
}

CoefficientProfile CoefficientProfile::compact_bump(double amplitude, double radius)
{
    CoefficientProfile p;
    p.family = ProfileFamily::compact_bump;
    p.amplitude = amplitude;
    p.radius = radius;
    p.validate();
    return p;
}

CoefficientProfile CoefficientProfile::exponential(double amplitude, double rate)
{
    CoefficientProfile p;
    p.family = ProfileFamily::exponential;
    p.amplitude = amplitude;
    p.rate = rate;
    p.validate();
    return p;
}

CoefficientProfile CoefficientProfile::power_exponential(double amplitude, double rate, double power)
{
    CoefficientProfile p;
    p.family = ProfileFamily::power_exponential;
    p.amplitude = amplitude;
    p.rate = rate;
    p.power = power;
    p.validate();
    return p;
}

double eval_coefficient(const CoefficientProfile& profile, double r)
{
    switch (profile.family) {
        case ProfileFamily::zero:
            return 0.0;
        case ProfileFamily::compact_bump: {
            const double s = r / profile.radius;
            const double q = 1.0 - s * s;
            return q > 0.0 ? profile.amplitude * q * q : 0.0;
        }
        case ProfileFamily::exponential:
            return profile.amplitude * std::exp(-profile.rate * r);
        case ProfileFamily::power_exponential:
            return profile.amplitude * std::pow(1.0 + r, -profile.power) *
                   std::exp(-profile.rate * r);
    }
    throw std::logic_error("unknown profile family");
}

void ProblemParams::validate() const
{
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(p > 1.0)) throw std::invalid_argument("exponent p must be > 1");
    if (dim >= 3) {
        const double critical = (dim + 2.0) / (dim - 2.0);
        if (!(p < critical))
            throw std::invalid_argument("exponent p must be subcritical: p < (N+2)/(N-2) = " +
                                        std::to_string(critical) + " for N = " + std::to_string(dim));
    }
    if (!(a_inf > 0.0)) throw std::invalid_argument("a_inf must be > 0");
    if (!(b_inf > 0.0)) throw std::invalid_argument("b_inf must be > 0");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
}

double ProblemParams::kappa() const
{
    return std::sqrt(a_inf);
}

std::string regime_name(Regime r)
{
    switch (r) {
        case Regime::fast_a: return "fast_a";
        case Regime::slow_a: return "slow_a";
        case Regime::unclassified: return "unclassified";
    }
    throw std::logic_error("unknown regime");
}

namespace {

// Largest mu such that the profile integrates against e^{mu |x|} over R^N.
// Returns the supremum and whether it is attained.
struct ExpMoment {
    double sup;
    bool attained;
};

ExpMoment exp_integrability(const CoefficientProfile& p, int dim)
{
    if (p.compact_support()) return {inf, true};
    // exponential tails: finite iff mu < rate, with equality admissible only
    // when the algebraic factor decays fast enough ((1+r)^-q r^{N-1} integrable).
    const bool at_rate = p.family == ProfileFamily::power_exponential &&
                         p.power > static_cast<double>(dim);
    return {p.rate, at_rate};
}

// Whether liminf profile(r) e^{mu r} is a positive constant; true only for
// pure exponential tails evaluated exactly at their own rate.
bool liminf_positive_at(const CoefficientProfile& p, double mu)
{
    return p.pure_exponential() && p.rate == mu;
}

bool admissible_a(const CoefficientProfile& a, int dim)
{
    if (a.vanishes()) return false;
    switch (a.family) {
        case ProfileFamily::zero: return false;
        case ProfileFamily::compact_bump: return true;
        case ProfileFamily::exponential: return a.rate > 0.0;
        case ProfileFamily::power_exponential:
            // purely algebraic tails (1+r)^-q lie in L^{N/2} iff q > 2
            return a.rate > 0.0 || a.power > 2.0;
    }
    (void)dim;
    return false;
}

bool admissible_b(const CoefficientProfile& b)
{
    if (b.vanishes()) return false;
    switch (b.family) {
        case ProfileFamily::zero: return false;
        case ProfileFamily::compact_bump: return true;
        case ProfileFamily::exponential: return b.rate > 0.0;
        case ProfileFamily::power_exponential: return b.rate > 0.0 || b.power > 0.0;
    }
    return false;
}

} // namespace

HypothesisReport classify_hypotheses(const CoefficientProfile& a,
                                     const CoefficientProfile& b,
                                     const ProblemParams& params, double sigma)
{
    params.validate();
    a.validate();
    b.validate();
    if (!(sigma > 0.0) || !(sigma < params.a_inf))
        throw std::invalid_argument("sigma must lie in (0, a_inf)");

    HypothesisReport rep;
    rep.sigma = sigma;

    rep.h1 = admissible_a(a, params.dim);
    rep.h2 = admissible_b(b);

    const double sqa = std::sqrt(params.a_inf);
    const double sqs = std::sqrt(sigma);

    // Fast-a condition: a integrable against e^{alpha sqrt(a_inf)|x|} for some
    // alpha, b with exact exponential tail at rate beta sqrt(a_inf), and
    // beta < min(2, alpha).
    const ExpMoment a_mom = exp_integrability(a, params.dim);
    const double alpha_fast = a.compact_support() ? inf : a_mom.sup / sqa;
    double beta_fast = 0.0;
    bool b_tail_exact = b.pure_exponential();
    if (b_tail_exact) beta_fast = b.rate / sqa;
    const bool h3 = rep.h1 && rep.h2 && b_tail_exact &&
                    beta_fast < 2.0 && beta_fast < alpha_fast;

    // Slow-a condition at decay scale sqrt(sigma): a with exact exponential
    // tail at rate alpha sqrt(sigma), b integrable against e^{beta sqrt(sigma)|x|},
    // and alpha <= min(p+1, beta).
    bool h4 = false;
    double alpha_slow = 0.0;
    double beta_slow = 0.0;
    if (rep.h1 && rep.h2 && a.pure_exponential()) {
        alpha_slow = a.rate / sqs;
        const ExpMoment b_mom = exp_integrability(b, params.dim);
        beta_slow = b.compact_support() ? inf : b_mom.sup / sqs;
        const bool beta_reaches = b.compact_support()
                                      ? true
                                      : (alpha_slow < beta_slow ||
                                         (alpha_slow == beta_slow && b_mom.attained));
        h4 = alpha_slow <= params.p + 1.0 && beta_reaches && liminf_positive_at(a, alpha_slow * sqs);
    }

    rep.h3 = h3;
    rep.h4 = h4;

    // Extra integrability of a against |x|^{N-1} e^{2 sqrt(a_inf)|x|}.
    rep.h5 = !a.vanishes() && (a.compact_support() || a.rate > 2.0 * sqa);

    if (rep.h3) {
        rep.alpha = alpha_fast;
        rep.beta = beta_fast;
        rep.regime = Regime::fast_a;
    } else if (rep.h4) {
        rep.alpha = alpha_slow;
        rep.beta = beta_slow;
        rep.regime = Regime::slow_a;
    } else {
        rep.alpha = a.compact_support() && !a.vanishes() ? inf : (a.vanishes() ? 0.0 : a.rate / sqa);
        rep.beta = b.compact_support() && !b.vanishes() ? inf : (b.vanishes() ? 0.0 : b.rate / sqa);
        rep.regime = Regime::unclassified;
    }
    return rep;
}

} // namespace nehari
