#pragma once

#include <array>
#include <vector>

#include "nehari/ground_state.hpp"
#include "nehari/sweep.hpp"

namespace nehari {

/// Projection data of a soliton translated to y: the projection scale, the
/// constrained energy, and the signed competition integral
/// (lambda/2) int a w_y^2 - (t^{p-1}/(p+1)) int b w_y^{p+1}
/// whose sign decides whether the translated bump beats the limit level.
struct BumpProbe {
    std::array<double, 3> y{0.0, 0.0, 0.0};
    double t = 0.0;
    double energy = 0.0;
    double competition = 0.0;
};

BumpProbe translated_bump_energy(const EnergyModel<BoxGrid>& model,
                                 const LimitGroundState& limit, std::array<double, 3> y);

/// Overlap of two normalized solitons at distance 2*rho:
/// eps = int unit_{rho z}^p unit_{rho xi}; eps_swapped exchanges the power.
struct InteractionSample {
    double rho = 0.0;
    double eps = 0.0;
    double eps_swapped = 0.0;
};

InteractionSample interaction_integral(std::shared_ptr<const BoxGrid> grid,
                                       const LimitGroundState& limit, double rho,
                                       std::array<double, 3> z, std::array<double, 3> xi);

struct InteractionFit {
    double rate = 0.0;  ///< fitted exponential rate in rho (expected 2 sqrt(a_inf))
    double power = 0.0; ///< fitted algebraic correction exponent
    std::vector<InteractionSample> samples;
};

InteractionFit interaction_ladder(std::shared_ptr<const BoxGrid> grid,
                                  const LimitGroundState& limit,
                                  const std::vector<double>& rhos, std::array<double, 3> z,
                                  std::array<double, 3> xi);

/// Two-bump surface levels at radius rho: s_rho maximizes the constrained
/// energy over single bumps on the sphere section, t_rho over the full
/// interpolation surface; both are sampled maxima (lower bounds).
struct PsiSurfaceReport {
    double rho = 0.0;
    double epsilon_rho = 0.0;
    double s_rho = 0.0;
    double t_rho = 0.0;
    double b0_estimate = 0.0; ///< filled by the diagnostics battery; 0 when absent
    double two_m_inf = 0.0;   ///< 2x the same-grid limit level
};

PsiSurfaceReport psi_surface(const EnergyModel<BoxGrid>& model, const LimitGroundState& limit,
                             double rho, std::array<double, 3> xi, std::size_t res_z,
                             std::size_t res_s, const SolverOptions& opts = {});

/// Penalized estimate of the centered level: minimizes the constrained
/// energy plus weight * |mass center|^2 (a differentiable centering
/// surrogate); the ball-average barycenter of the final iterate is reported.
/// Heuristic upper estimate by construction.
struct B0Estimate {
    double value = 0.0;
    std::array<double, 3> barycenter{0.0, 0.0, 0.0};
    bool converged = false;
};

enum class B0Init { centered, two_bump };

B0Estimate estimate_b0(const EnergyModel<BoxGrid>& model, const LimitGroundState& limit,
                       double penalty_weight, const SolverOptions& opts,
                       B0Init init = B0Init::centered, double bump_offset = 0.0);

/// Levels of the radially constrained problem along a lambda ladder,
/// warm-started in order.
std::vector<double> radial_level(const ProblemParams& params, const CoefficientProfile& a,
                                 const CoefficientProfile& b,
                                 std::shared_ptr<const RadialGrid> grid,
                                 const LimitGroundState& limit,
                                 const std::vector<double>& lambdas, const SolverOptions& opts);

/// Asymptotic overlap check: the ratio of int g(x + rho z) h(x) dx, blown up
/// by the decay of g, against its analytic limit gamma int h e^{-alpha x.z/|z|}.
struct OverlapSample {
    double rho = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

std::vector<OverlapSample> check_overlap_lemma(const CoefficientProfile& g,
                                               const CoefficientProfile& h,
                                               std::array<double, 3> z,
                                               const std::vector<double>& rhos, int dim,
                                               double spacing);

/// Three-parameter decay fit (rate and algebraic power) on the interior
/// window of a radial profile.
DecayFit decay_fit(const RadialField& u, double kappa);
/// Box variant, fitted against the distance from the field maximum.
DecayFit decay_fit(const BoxField& u, double kappa);

} // namespace nehari
