#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <ostream>
#include <span>
#include <string>

#include "nehari/energy.hpp"
#include "nehari/errors.hpp"
#include "nehari/fit.hpp"
#include "nehari/geometry.hpp"
#include "nehari/limit_problem.hpp"

namespace nehari {

struct SolverOptions {
    std::size_t max_iters = 20000;
    double step = 1.0;              ///< initial descent step
    double armijo_c = 1e-4;         ///< sufficient-decrease constant
    double backtrack = 0.5;         ///< step shrink factor
    std::size_t max_backtracks = 40;
    double tol_grad = 1e-6;         ///< stop when the full weighted gradient norm falls below
    bool positivity = true;         ///< replace the iterate by |u| each step
    double blowup_factor = 1e6;     ///< abort when max|u| exceeds this multiple of the seed peak
    std::size_t shift_every = 25;   ///< probe whole-lattice translations this often (0 = off)
    std::ostream* trace = nullptr;  ///< optional CSV stream: iter,energy,grad,bary,boundary
};

template <class G>
struct GroundStateResult {
    Field<G> u;
    double m = 0.0;
    double grad_norm = 0.0;
    double pde_residual = 0.0;
    double nehari_res = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::array<double, 3> barycenter{0.0, 0.0, 0.0};
    double boundary_mass = 0.0;
    double decay_rate = 0.0;
};

/// Optional additive term for constrained variants (e.g. a barycenter
/// penalty). value() must be invariant under field scaling so the manifold
/// projection leaves it unchanged.
template <class G>
struct PenaltyHooks {
    std::function<double(const Field<G>&)> value;
    std::function<void(const Field<G>&, Field<G>&)> add_gradient;
};

// -- seeds -------------------------------------------------------------

inline RadialField soliton_seed(std::shared_ptr<const RadialGrid> grid,
                                const LimitGroundState& w)
{
    RadialField f(std::move(grid));
    const RadialGrid& g = *f.grid;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) f.v[i] = w.sample(g.r(i));
    return f;
}

inline BoxField soliton_seed(std::shared_ptr<const BoxGrid> grid, const LimitGroundState& w,
                             std::array<double, 3> center = {0.0, 0.0, 0.0})
{
    BoxField f(std::move(grid));
    const BoxGrid& g = *f.grid;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.on_boundary(i)) continue;
        const auto x = g.point(i);
        double r2 = 0.0;
        for (int d = 0; d < g.dim(); ++d) {
            const double c = x[static_cast<std::size_t>(d)] - center[static_cast<std::size_t>(d)];
            r2 += c * c;
        }
        f.v[i] = w.sample(std::sqrt(r2));
    }
    return f;
}

template <class G>
Field<G> gaussian_seed(std::shared_ptr<const G> grid, std::array<double, 3> center, double width)
{
    Field<G> f(std::move(grid));
    const G& g = *f.grid;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.on_boundary(i)) continue;
        double r2 = 0.0;
        if constexpr (std::is_same_v<G, RadialGrid>) {
            const double c = g.r(i) - center[0];
            r2 = c * c;
        } else {
            const auto x = g.point(i);
            for (int d = 0; d < g.dim(); ++d) {
                const double c = x[static_cast<std::size_t>(d)] - center[static_cast<std::size_t>(d)];
                r2 += c * c;
            }
        }
        f.v[i] = std::exp(-0.5 * r2 / (width * width));
    }
    return f;
}

// -- diagnostics helpers ------------------------------------------------

template <class G>
double fit_decay_rate(const Field<G>& u, double kappa);

template <>
inline double fit_decay_rate<RadialGrid>(const RadialField& u, double kappa)
{
    const RadialGrid& g = *u.grid;
    std::vector<double> rr(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) rr[i] = g.r(i);
    const double pad = 5.0 / kappa;
    const DecayFit f = fit_log_decay(rr, u.v, pad, g.r_max() - pad, false,
                                     0.5 * (g.dim() - 1.0));
    return f.ok ? f.rate : 0.0;
}

template <>
inline double fit_decay_rate<BoxGrid>(const BoxField& u, double kappa)
{
    const BoxGrid& g = *u.grid;
    std::size_t imax = 0;
    for (std::size_t i = 1; i < g.size(); ++i)
        if (std::abs(u.v[i]) > std::abs(u.v[imax])) imax = i;
    const auto c = g.point(imax);
    double margin = g.half_width();
    for (int d = 0; d < g.dim(); ++d)
        margin = std::min(margin, g.half_width() - std::abs(c[static_cast<std::size_t>(d)]));
    std::vector<double> rr, uu;
    rr.reserve(g.size());
    uu.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.point(i);
        double r2 = 0.0;
        for (int d = 0; d < g.dim(); ++d) {
            const double dd = x[static_cast<std::size_t>(d)] - c[static_cast<std::size_t>(d)];
            r2 += dd * dd;
        }
        rr.push_back(std::sqrt(r2));
        uu.push_back(std::abs(u.v[i]));
    }
    const DecayFit f = fit_log_decay(rr, uu, 3.0 / kappa, margin - 2.0 / kappa, false,
                                     0.5 * (g.dim() - 1.0));
    return f.ok ? f.rate : 0.0;
}

template <class G>
void fill_barycenter(GroundStateResult<G>& res)
{
    if constexpr (std::is_same_v<G, BoxGrid>) {
        res.barycenter = barycenter_point(res.u);
    } else {
        res.barycenter = {0.0, 0.0, 0.0};
    }
}

/// One-node lattice translations (the flat directions of translated bumps;
/// representable exactly on the mesh). `dir` enumerates +/- along each axis.
inline void lattice_shift(const RadialGrid&, const std::vector<double>& in,
                          std::vector<double>& out, int dir)
{
    const std::size_t m = in.size();
    if (dir >= 0) {
        out[0] = in[0];
        for (std::size_t i = 1; i + 1 < m; ++i) out[i] = in[i - 1];
    } else {
        for (std::size_t i = 0; i + 1 < m; ++i) out[i] = in[i + 1];
    }
    out[m - 1] = 0.0;
}

inline int lattice_shift_dirs(const RadialGrid&) { return 2; }

inline void lattice_shift(const BoxGrid& g, const std::vector<double>& in,
                          std::vector<double>& out, int dir)
{
    const int axis = dir / 2;
    const bool up = (dir % 2) == 0;
    const std::size_t s = g.stride(axis);
    const std::size_t n = g.per_axis();
    for (std::size_t i = 0; i < in.size(); ++i) {
        const std::size_t id = g.axis_index(i, axis);
        if (g.on_boundary(i)) {
            out[i] = 0.0;
        } else if (up) {
            out[i] = id >= 1 ? in[i - s] : 0.0;
        } else {
            out[i] = id + 1 < n ? in[i + s] : 0.0;
        }
    }
}

inline int lattice_shift_dirs(const BoxGrid& g) { return 2 * g.dim(); }

// -- the minimizer -------------------------------------------------------

/// Projected gradient descent on the natural constraint: descend along the
/// tangential gradient, reproject with the closed-form scale, accept on
/// Armijo decrease of the constrained energy. The step is adapted by a
/// Barzilai-Borwein estimate clamped by backtracking, which keeps the energy
/// monotone. Non-convergence is reported through `converged`, never thrown;
/// NaN or amplitude blowup aborts with BlowupError.
template <class G>
GroundStateResult<G> minimize(const EnergyModel<G>& model, const Field<G>& init,
                              const SolverOptions& opts,
                              const PenaltyHooks<G>* penalty = nullptr)
{
    if (init.grid != model.grid_ptr())
        throw std::invalid_argument("seed grid does not match the model");
    const ProblemParams& par = model.params();
    const double p = par.p;

    Field<G> u = init;
    for (std::size_t i = 0; i < u.v.size(); ++i) {
        if (model.grid().on_boundary(i)) u.v[i] = 0.0;
        else if (opts.positivity) u.v[i] = std::abs(u.v[i]);
    }
    double peak0 = 0.0;
    for (double x : u.v) peak0 = std::max(peak0, std::abs(x));
    if (!(peak0 > 0.0)) throw std::invalid_argument("minimize: seed is the zero field");
    {
        const auto pr = model.project(u);
        for (double& x : u.v) x *= pr.t;
        peak0 *= pr.t;
    }

    const auto pen_value = [&](const Field<G>& f) {
        return penalty && penalty->value ? penalty->value(f) : 0.0;
    };

    double energy_now = model.energy(u) + pen_value(u);

    Field<G> lin = model.make_field(), nl = model.make_field(), grad = model.make_field();
    Field<G> gtan = model.make_field(), trial = model.make_field();
    Field<G> u_prev, gtan_prev;
    bool have_prev = false;

    GroundStateResult<G> res;
    double eta = opts.step;
    std::size_t it = 0;
    bool converged = false;

    Field<G> shifted = model.make_field();
    // Lattice translations are exact moves along the nearly flat drift
    // directions that plain descent crawls along; accept while they lower
    // the constrained energy.
    const auto probe_shifts = [&]() {
        bool any = false;
        for (std::size_t guard = 0; guard < 4 * u.v.size(); ++guard) {
            bool improved = false;
            for (int dir = 0; dir < lattice_shift_dirs(model.grid()); ++dir) {
                lattice_shift(model.grid(), u.v, shifted.v, dir);
                const EnergyBreakdown eb = model.breakdown(shifted);
                if (!(eb.b_total > 0.0) || !(eb.q_lambda > 0.0)) continue;
                const double t = std::pow(eb.q_lambda / eb.b_total, 1.0 / (p - 1.0));
                const double cand = 0.5 * t * t * eb.q_lambda -
                                    std::pow(t, p + 1.0) * eb.b_total / (p + 1.0) +
                                    pen_value(shifted);
                if (cand < energy_now) {
                    for (std::size_t i = 0; i < u.v.size(); ++i) u.v[i] = t * shifted.v[i];
                    energy_now = cand;
                    improved = true;
                    any = true;
                    break;
                }
            }
            if (!improved) break;
        }
        if (any) have_prev = false;
        return any;
    };

    for (; it < opts.max_iters; ++it) {
        if (opts.shift_every > 0 && it > 0 && it % opts.shift_every == 0) probe_shifts();
        model.gradient_parts(u, lin, nl);
        for (std::size_t i = 0; i < grad.v.size(); ++i) grad.v[i] = lin.v[i] - nl.v[i];
        if (penalty && penalty->add_gradient) penalty->add_gradient(u, grad);

        // tangential part: remove the component along the constraint normal
        double gn = 0.0, nn = 0.0;
        {
            const auto& w = model.grid().weights();
            for (std::size_t i = 0; i < w.size(); ++i) {
                const double ni = 2.0 * lin.v[i] - (p + 1.0) * nl.v[i];
                gn += w[i] * grad.v[i] * ni;
                nn += w[i] * ni * ni;
            }
        }
        double gt2 = 0.0;
        {
            const double c = nn > 0.0 ? gn / nn : 0.0;
            const auto& w = model.grid().weights();
            for (std::size_t i = 0; i < w.size(); ++i) {
                gtan.v[i] = grad.v[i] - c * (2.0 * lin.v[i] - (p + 1.0) * nl.v[i]);
                gt2 += w[i] * gtan.v[i] * gtan.v[i];
            }
        }
        const double gnorm = model.weighted_norm(grad);
        if (!std::isfinite(gnorm) || !std::isfinite(energy_now))
            throw BlowupError("minimize: non-finite iterate");

        if (opts.trace) {
            // center norm: the L2 mass center (zero on radial grids)
            double cnorm = 0.0;
            if constexpr (std::is_same_v<G, BoxGrid>) {
                const auto& gr = model.grid();
                double mass = 0.0;
                std::array<double, 3> c{0.0, 0.0, 0.0};
                for (std::size_t i = 0; i < u.v.size(); ++i) {
                    const double mi = gr.weight(i) * u.v[i] * u.v[i];
                    mass += mi;
                    const auto x = gr.point(i);
                    for (int d = 0; d < gr.dim(); ++d)
                        c[static_cast<std::size_t>(d)] += mi * x[static_cast<std::size_t>(d)];
                }
                if (mass > 0.0)
                    for (int d = 0; d < gr.dim(); ++d)
                        cnorm += c[static_cast<std::size_t>(d)] * c[static_cast<std::size_t>(d)] /
                                 (mass * mass);
                cnorm = std::sqrt(cnorm);
            }
            *opts.trace << it << ',' << energy_now << ',' << gnorm << ',' << cnorm << ','
                        << boundary_mass_fraction(u) << '\n';
        }
        if (gnorm <= opts.tol_grad) {
            converged = true;
            break;
        }

        // Barzilai-Borwein step estimate from the last accepted move
        if (have_prev) {
            double ss = 0.0, sy = 0.0;
            const auto& w = model.grid().weights();
            for (std::size_t i = 0; i < w.size(); ++i) {
                const double s = u.v[i] - u_prev.v[i];
                const double y = gtan.v[i] - gtan_prev.v[i];
                ss += w[i] * s * s;
                sy += w[i] * s * y;
            }
            if (sy > 0.0 && ss > 0.0) eta = std::min(std::max(ss / sy, 1e-10), 1e6);
        }

        bool accepted = false;
        double trial_scale = 1.0, trial_energy = 0.0;
        const double slack = 8.0 * 2.2e-16 * std::abs(energy_now); // roundoff floor
        for (std::size_t bt = 0; bt <= opts.max_backtracks; ++bt) {
            for (std::size_t i = 0; i < trial.v.size(); ++i) {
                double x = u.v[i] - eta * gtan.v[i];
                if (opts.positivity) x = std::abs(x);
                trial.v[i] = model.grid().on_boundary(i) ? 0.0 : x;
            }
            const EnergyBreakdown eb = model.breakdown(trial);
            if (eb.b_total > 0.0 && eb.q_lambda > 0.0) {
                const double t = std::pow(eb.q_lambda / eb.b_total, 1.0 / (p - 1.0));
                const double t2 = t * t;
                const double e_new = 0.5 * t2 * eb.q_lambda -
                                     std::pow(t, p + 1.0) * eb.b_total / (p + 1.0);
                const double cand = e_new + pen_value(trial);
                if (cand <= energy_now - opts.armijo_c * eta * gt2 + slack) {
                    trial_scale = t;
                    trial_energy = cand;
                    accepted = true;
                    break;
                }
            }
            eta *= opts.backtrack;
        }
        if (!accepted) break; // stall: report not converged unless gradient already small

        u_prev = u;
        gtan_prev = gtan;
        have_prev = true;
        for (std::size_t i = 0; i < u.v.size(); ++i) u.v[i] = trial_scale * trial.v[i];
        energy_now = trial_energy;
        eta /= opts.backtrack; // allow regrowth after successful steps

        double peak = 0.0;
        for (double x : u.v) peak = std::max(peak, std::abs(x));
        if (peak > opts.blowup_factor * peak0)
            throw BlowupError("minimize: iterate amplitude blew up");
    }

    res.u = u;
    res.m = model.energy(u);
    res.grad_norm = model.weighted_norm(model.gradient(u));
    res.pde_residual = model.pde_residual(u);
    res.nehari_res = model.nehari_residual(u);
    res.iterations = it;
    res.converged = converged;
    res.boundary_mass = boundary_mass_fraction(u);
    res.decay_rate = fit_decay_rate(u, par.kappa());
    fill_barycenter(res);
    return res;
}

// -- escape diagnosis ----------------------------------------------------

enum class EscapeKind { localized, escaping, inconclusive };
std::string escape_name(EscapeKind k);

struct BoxLevel {
    double extent = 0.0;        ///< box half width (or truncation radius)
    double m = 0.0;             ///< computed level on that box
    double boundary_mass = 0.0; ///< outer-shell mass fraction of the minimizer
};

struct EscapeDiagnosis {
    EscapeKind kind = EscapeKind::inconclusive;
    double extrapolated_m = 0.0;
    std::string note;
};

/// Classify a ladder of box solves. Escaping when the outer-shell mass is
/// large on the biggest box, or the levels approach the reference limit
/// level as the boxes grow; localized when the shell mass is negligible and
/// the level is stable under box growth; otherwise inconclusive.
EscapeDiagnosis detect_escape(std::span<const BoxLevel> levels, double m_inf_ref, double delta);

} // namespace nehari
