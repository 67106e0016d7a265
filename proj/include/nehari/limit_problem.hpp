#pragma once

#include <memory>

#include "nehari/coefficients.hpp"
#include "nehari/grid.hpp"

namespace nehari {

/// The constant-coefficient ground state: the positive radial decaying
/// solution of -lap w + a_inf w = b_inf |w|^{p-1} w, together with its level
/// and the normalized profile used by the two-bump diagnostics.
struct LimitGroundState {
    ProblemParams params;     ///< lambda is ignored here
    RadialField w;            ///< profile on the solve grid, positive, decreasing
    RadialField unit_profile; ///< w / ||w||_{p+1}
    double level = 0.0;       ///< (1/2 - 1/(p+1)) ||w||^2
    double peak = 0.0;        ///< w(0)
    double shoot_param = 0.0; ///< bisected initial height
    double decay_coeff = 0.0; ///< fitted prefactor of r^{-(N-1)/2} e^{-kappa r}
    double decay_rate = 0.0;  ///< fitted exponential rate (expected sqrt(a_inf))
    double unit_coupling = 0.0; ///< M with -lap(unit) + a_inf unit = M unit^p
    double residual = 0.0;    ///< weighted discrete PDE residual of w

    /// Linear interpolation of the profile; zero beyond the grid.
    double sample(double r) const;
    double sample_unit(double r) const;
};

/// Shooting on the initial height classifies trajectories into the branch
/// that crosses zero (height above the separatrix) and the branch that turns
/// back upward (height below it); bisection isolates the separatrix and a
/// damped Newton pass on the discrete equations then drives the nodal
/// residual below tol. Throws SolveError when no bracket exists or the
/// iteration caps are hit.
LimitGroundState solve_limit(const ProblemParams& params,
                             std::shared_ptr<const RadialGrid> grid, double tol = 1e-10);

/// Level predicted for general coefficients from a unit-coefficient solve:
/// m(a,b) = (a/b)^{2/(p-1)} a^{1-N/2} m(1,1).
double rescaled_level(int dim, double p, double unit_level, double a_inf, double b_inf);

/// Profile predicted on `grid` from a unit solve via
/// w(x) = (a/b)^{1/(p-1)} W(sqrt(a) x).
RadialField rescaled_profile(const LimitGroundState& unit,
                             std::shared_ptr<const RadialGrid> grid, double a_inf,
                             double b_inf);

} // namespace nehari
