#pragma once

#include <cmath>
#include <random>

#include "nehari/limit_problem.hpp"

namespace testing {

// Shared expensive solves, computed once per binary run.
inline const nehari::LimitGroundState& sech_state()
{
    static const nehari::LimitGroundState st = [] {
        nehari::ProblemParams par;
        par.dim = 1;
        par.p = 3.0;
        par.a_inf = par.b_inf = 1.0;
        return nehari::solve_limit(par, nehari::make_radial_grid(1, 24.0, 4801));
    }();
    return st;
}

inline const nehari::LimitGroundState& planar_state()
{
    static const nehari::LimitGroundState st = [] {
        nehari::ProblemParams par;
        par.dim = 2;
        par.p = 3.0;
        par.a_inf = par.b_inf = 1.0;
        return nehari::solve_limit(par, nehari::make_radial_grid(2, 20.0, 2001));
    }();
    return st;
}

// Adaptive Simpson quadrature, the independent oracle for grid integrals.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-12, int depth = 24)
{
    const auto simpson = [&](double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
    };
    struct Rec {
        double lo, hi, whole;
        int depth;
    };
    const double whole = simpson(a, b);
    std::vector<Rec> stack{{a, b, whole, depth}};
    double total = 0.0;
    while (!stack.empty()) {
        const Rec r = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (r.lo + r.hi);
        const double left = simpson(r.lo, mid);
        const double right = simpson(mid, r.hi);
        if (r.depth <= 0 || std::abs(left + right - r.whole) < 15.0 * tol) {
            total += left + right + (left + right - r.whole) / 15.0;
        } else {
            stack.push_back({r.lo, mid, left, r.depth - 1});
            stack.push_back({mid, r.hi, right, r.depth - 1});
        }
    }
    return total;
}

inline std::mt19937_64 test_rng(unsigned long seed = 2024)
{
    return std::mt19937_64(seed);
}

// Smooth random fields (sums of gaussian bumps) keep the discrete energy
// at O(1) so finite-difference probes are not drowned by roundoff.
inline nehari::RadialField random_smooth_field(std::shared_ptr<const nehari::RadialGrid> grid,
                                               std::mt19937_64& rng, double amplitude = 1.0)
{
    std::uniform_real_distribution<double> center(0.0, 0.6 * grid->r_max());
    std::uniform_real_distribution<double> width(0.6, 1.6);
    std::uniform_real_distribution<double> amp(0.2, 1.0);
    nehari::RadialField u(std::move(grid));
    for (int b = 0; b < 3; ++b) {
        const double c = center(rng), s = width(rng), a = amplitude * amp(rng);
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            const double d = (u.grid->r(i) - c) / s;
            u.v[i] += a * std::exp(-0.5 * d * d);
        }
    }
    return u;
}

} // namespace testing
