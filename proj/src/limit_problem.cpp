#include "nehari/limit_problem.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nehari/energy.hpp"
#include "nehari/errors.hpp"
#include "nehari/fit.hpp"

namespace nehari {

namespace {

struct Rhs {
    int dim;
    double a_inf, b_inf, p;

    // y = (w, v); w' = v, v' = a w - b |w|^{p-1} w - (N-1)/r v
    void operator()(double r, double w, double v, double& dw, double& dv) const
    {
        const double f = a_inf * w - b_inf * std::pow(std::abs(w), p - 1.0) * w;
        dw = v;
        if (r > 1e-12) {
            dv = f - (dim - 1.0) / r * v;
        } else {
            // symmetric origin: w''(0) = f(w)/N
            dv = f / static_cast<double>(dim);
        }
    }
};

enum class ShotEvent { crossed, turned, none };

struct ShotResult {
    ShotEvent event = ShotEvent::none;
    double r_event = 0.0;
};

// Integrate the shooting ODE with classical RK4. When `record` is non-null
// it receives the value of w at every grid node (by nearest substep).
ShotResult shoot(const Rhs& rhs, double height, double r_end, double dr,
                 double u_star, std::vector<double>* record, double record_h)
{
    double r = 0.0, w = height, v = 0.0;
    if (record) {
        record->clear();
        record->push_back(w);
    }
    std::size_t next_node = 1;
    const double turn_level = 0.5 * u_star;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(r_end / dr));
    for (std::size_t k = 0; k < steps; ++k) {
        const double h = std::min(dr, r_end - r);
        double k1w, k1v, k2w, k2v, k3w, k3v, k4w, k4v;
        rhs(r, w, v, k1w, k1v);
        rhs(r + 0.5 * h, w + 0.5 * h * k1w, v + 0.5 * h * k1v, k2w, k2v);
        rhs(r + 0.5 * h, w + 0.5 * h * k2w, v + 0.5 * h * k2v, k3w, k3v);
        rhs(r + h, w + h * k3w, v + h * k3v, k4w, k4v);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        r += h;
        if (record) {
            while (next_node * record_h <= r + 1e-12 && record->size() < 1 + next_node) {
                record->push_back(w);
                ++next_node;
            }
        }
        if (!std::isfinite(w) || !std::isfinite(v))
            return {ShotEvent::crossed, r};
        if (w <= 0.0) return {ShotEvent::crossed, r};
        if (v > 0.0 && w < turn_level) return {ShotEvent::turned, r};
        if (w > 4.0 * height) return {ShotEvent::turned, r};
    }
    return {ShotEvent::none, r};
}

// Nodal residual of the discrete radial equation (the exact derivative of
// the discrete energy with zero coefficient profiles); u[m-1] is pinned.
void nodal_residual(const RadialGrid& g, const ProblemParams& par,
                    const std::vector<double>& u, std::vector<double>& res)
{
    const std::size_t m = g.size();
    res.assign(m - 1, 0.0);
    const double p = par.p;
    for (std::size_t j = 0; j + 1 < m; ++j) {
        double flux = 0.0;
        if (j > 0) flux += g.face_coeff(j - 1) * (u[j] - u[j - 1]);
        const double right = j + 1 < m ? u[j + 1] : 0.0;
        flux += g.face_coeff(j) * (u[j] - right);
        const double react =
            par.a_inf * u[j] - par.b_inf * std::pow(std::abs(u[j]), p - 1.0) * u[j];
        res[j] = flux + g.weight(j) * react;
    }
}

double scaled_residual_norm(const RadialGrid& g, const std::vector<double>& res)
{
    double s = 0.0;
    for (std::size_t j = 0; j < res.size(); ++j) s += res[j] * res[j] / g.weight(j);
    return std::sqrt(s);
}

// Damped Newton on the discrete equations; tridiagonal Jacobian solved by
// the Thomas algorithm. Returns the achieved scaled residual norm.
double newton_polish(const RadialGrid& g, const ProblemParams& par, std::vector<double>& u,
                     double tol_abs)
{
    const std::size_t m = g.size();
    const std::size_t n = m - 1; // unknowns
    std::vector<double> res, diag(n), lower(n, 0.0), upper(n, 0.0), rhs(n), du(n);
    std::vector<double> trial(m, 0.0);
    nodal_residual(g, par, u, res);
    double rn = scaled_residual_norm(g, res);
    for (int it = 0; it < 60 && rn > tol_abs; ++it) {
        const double p = par.p;
        for (std::size_t j = 0; j < n; ++j) {
            double d = g.face_coeff(j);
            if (j > 0) {
                d += g.face_coeff(j - 1);
                lower[j] = -g.face_coeff(j - 1);
            }
            if (j + 1 < n) upper[j] = -g.face_coeff(j);
            d += g.weight(j) *
                 (par.a_inf - p * par.b_inf * std::pow(std::abs(u[j]), p - 1.0));
            diag[j] = d;
            rhs[j] = -res[j];
        }
        // Thomas forward sweep
        for (std::size_t j = 1; j < n; ++j) {
            const double f = lower[j] / diag[j - 1];
            diag[j] -= f * upper[j - 1];
            rhs[j] -= f * rhs[j - 1];
        }
        du[n - 1] = rhs[n - 1] / diag[n - 1];
        for (std::size_t j = n - 1; j-- > 0;) du[j] = (rhs[j] - upper[j] * du[j + 1]) / diag[j];

        double step = 1.0;
        double rn_new = rn;
        for (int bt = 0; bt < 12; ++bt) {
            for (std::size_t j = 0; j < n; ++j) trial[j] = u[j] + step * du[j];
            trial[m - 1] = 0.0;
            nodal_residual(g, par, trial, res);
            rn_new = scaled_residual_norm(g, res);
            if (std::isfinite(rn_new) && rn_new < rn) break;
            step *= 0.5;
        }
        if (!(rn_new < rn)) break; // stalled
        for (std::size_t j = 0; j < n; ++j) u[j] = trial[j];
        rn = rn_new;
    }
    return rn;
}

} // namespace

double LimitGroundState::sample(double r) const
{
    const RadialGrid& g = *w.grid;
    if (r < 0.0) r = -r;
    if (r >= g.r_max()) return 0.0;
    const double s = r / g.spacing();
    const std::size_t i = std::min(static_cast<std::size_t>(s), g.size() - 2);
    const double f = s - static_cast<double>(i);
    return (1.0 - f) * w.v[i] + f * w.v[i + 1];
}

double LimitGroundState::sample_unit(double r) const
{
    const RadialGrid& g = *unit_profile.grid;
    if (r < 0.0) r = -r;
    if (r >= g.r_max()) return 0.0;
    const double s = r / g.spacing();
    const std::size_t i = std::min(static_cast<std::size_t>(s), g.size() - 2);
    const double f = s - static_cast<double>(i);
    return (1.0 - f) * unit_profile.v[i] + f * unit_profile.v[i + 1];
}

LimitGroundState solve_limit(const ProblemParams& params,
                             std::shared_ptr<const RadialGrid> grid, double tol)
{
    params.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (grid->dim() != params.dim)
        throw std::invalid_argument("grid dimension does not match the problem");

    const RadialGrid& g = *grid;
    const double kappa = params.kappa();
    const double u_star = std::pow(params.a_inf / params.b_inf, 1.0 / (params.p - 1.0));

    const Rhs rhs{params.dim, params.a_inf, params.b_inf, params.p};
    const double dr = std::min(g.spacing(), 0.02 / kappa);
    const double r_end = g.r_max();

    // Bracket the separatrix: low heights turn back upward, high ones cross.
    double lo = u_star;
    double hi = 4.0 * u_star;
    {
        int widen = 0;
        while (shoot(rhs, hi, r_end, dr, u_star, nullptr, 0.0).event != ShotEvent::crossed) {
            hi *= 2.0;
            if (++widen > 10) throw SolveError("limit solve: no crossing bracket found");
        }
        if (shoot(rhs, lo, r_end, dr, u_star, nullptr, 0.0).event == ShotEvent::crossed)
            throw SolveError("limit solve: lower bracket unexpectedly crosses zero");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (shoot(rhs, mid, r_end, dr, u_star, nullptr, 0.0).event == ShotEvent::crossed)
            hi = mid;
        else
            lo = mid;
    }
    const double height = lo;

    // Record the profile at the grid nodes; extend past the first event with
    // the matched far-field tail r^{-(N-1)/2} e^{-kappa r}.
    std::vector<double> prof;
    shoot(rhs, height, r_end, dr, u_star, &prof, g.spacing());
    prof.resize(g.size(), 0.0);
    const double graft_level = 1e-5 * height;
    std::size_t last_good = 0;
    for (std::size_t i = 1; i < g.size(); ++i) {
        if (prof[i] > graft_level && prof[i] < prof[i - 1])
            last_good = i;
        else
            break;
    }
    if (last_good > 0) {
        const double half_nm1 = 0.5 * (params.dim - 1.0);
        const double r_ref = g.r(last_good);
        const double w_ref = prof[last_good];
        for (std::size_t i = last_good + 1; i < g.size(); ++i) {
            const double r = g.r(i);
            prof[i] = w_ref * std::pow(r_ref / r, half_nm1) * std::exp(-kappa * (r - r_ref));
        }
    }
    prof[g.size() - 1] = 0.0;

    const double rn = newton_polish(g, params, prof, tol);
    if (rn > 10.0 * tol)
        throw SolveError("limit solve: discrete residual did not reach tolerance");

    LimitGroundState st;
    st.params = params;
    st.params.lambda = 0.0;
    st.w = RadialField(grid);
    st.w.v = prof;
    st.peak = prof[0];
    st.shoot_param = height;

    const double nsq = h_norm_sq(st.w, params.a_inf);
    st.level = (0.5 - 1.0 / (params.p + 1.0)) * nsq;

    const double pnorm = lp_norm(st.w, params.p + 1.0);
    st.unit_profile = RadialField(grid);
    for (std::size_t i = 0; i < g.size(); ++i) st.unit_profile.v[i] = st.w.v[i] / pnorm;

    st.unit_coupling = std::pow(params.b_inf, 2.0 / (params.p + 1.0)) *
                       std::pow(2.0 * (params.p + 1.0) / (params.p - 1.0) * st.level,
                                (params.p - 1.0) / (params.p + 1.0));

    // decay fit on the interior window, far-field power frozen at (N-1)/2
    {
        std::vector<double> rr(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) rr[i] = g.r(i);
        const double pad = 5.0 / kappa;
        const DecayFit fit = fit_log_decay(rr, st.w.v, pad, g.r_max() - pad, false,
                                           0.5 * (params.dim - 1.0));
        st.decay_rate = fit.ok ? fit.rate : 0.0;
        st.decay_coeff = fit.ok ? std::exp(fit.offset) : 0.0;
    }

    {
        EnergyModel<RadialGrid> model(grid, st.params, CoefficientProfile::zero(),
                                      CoefficientProfile::zero());
        st.residual = model.pde_residual(st.w);
    }
    return st;
}

double rescaled_level(int dim, double p, double unit_level, double a_inf, double b_inf)
{
    return std::pow(a_inf / b_inf, 2.0 / (p - 1.0)) *
           std::pow(a_inf, 1.0 - 0.5 * static_cast<double>(dim)) * unit_level;
}

RadialField rescaled_profile(const LimitGroundState& unit,
                             std::shared_ptr<const RadialGrid> grid, double a_inf,
                             double b_inf)
{
    RadialField out(std::move(grid));
    const double amp = std::pow(a_inf / b_inf, 1.0 / (unit.params.p - 1.0));
    const double s = std::sqrt(a_inf);
    const RadialGrid& g = *out.grid;
    for (std::size_t i = 0; i < g.size(); ++i) out.v[i] = amp * unit.sample(s * g.r(i));
    out.v[g.size() - 1] = 0.0;
    return out;
}

} // namespace nehari
