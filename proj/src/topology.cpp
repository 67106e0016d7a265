#include "nehari/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nehari {

namespace {

double dist(const std::array<double, 3>& a, const std::array<double, 3>& b, int dim)
{
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
        const double c = a[static_cast<std::size_t>(d)] - b[static_cast<std::size_t>(d)];
        s += c * c;
    }
    return std::sqrt(s);
}

void check_clearance(const BoxGrid& g, const std::array<double, 3>& y, double kappa)
{
    double norm = 0.0;
    for (int d = 0; d < g.dim(); ++d) {
        const double c = y[static_cast<std::size_t>(d)];
        norm += c * c;
    }
    norm = std::sqrt(norm);
    if (norm + 4.0 / kappa > g.half_width())
        throw std::invalid_argument("bump center violates the box clearance");
}

BoxField sampled_bump(std::shared_ptr<const BoxGrid> grid, const LimitGroundState& limit,
                      const std::array<double, 3>& y, bool normalized)
{
    BoxField f(std::move(grid));
    const BoxGrid& g = *f.grid;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.on_boundary(i)) continue;
        const double r = dist(g.point(i), y, g.dim());
        f.v[i] = normalized ? limit.sample_unit(r) : limit.sample(r);
    }
    return f;
}

// Points of the sphere section: centers z with |z - xi| = 2.
std::vector<std::array<double, 3>> sphere_section(int dim, const std::array<double, 3>& xi,
                                                  std::size_t res)
{
    std::vector<std::array<double, 3>> zs;
    if (dim == 1) {
        zs.push_back({xi[0] - 2.0, 0.0, 0.0});
        zs.push_back({xi[0] + 2.0, 0.0, 0.0});
        return zs;
    }
    if (dim == 2) {
        for (std::size_t k = 0; k < res; ++k) {
            const double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(res);
            zs.push_back({xi[0] + 2.0 * std::cos(th), xi[1] + 2.0 * std::sin(th), 0.0});
        }
        return zs;
    }
    // dim == 3: Fibonacci points
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < res; ++k) {
        const double yk = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(res);
        const double rk = std::sqrt(std::max(0.0, 1.0 - yk * yk));
        const double th = golden * static_cast<double>(k);
        zs.push_back({xi[0] + 2.0 * rk * std::cos(th), xi[1] + 2.0 * yk,
                      xi[2] + 2.0 * rk * std::sin(th)});
    }
    return zs;
}

} // namespace

BumpProbe translated_bump_energy(const EnergyModel<BoxGrid>& model,
                                 const LimitGroundState& limit, std::array<double, 3> y)
{
    const BoxGrid& g = model.grid();
    check_clearance(g, y, model.params().kappa());

    const BoxField wy = sampled_bump(model.grid_ptr(), limit, y, false);
    const EnergyBreakdown e = model.breakdown(wy);
    const NehariProjection pr = model.project(e);

    BumpProbe probe;
    probe.y = y;
    probe.t = pr.t;
    const double t2 = pr.t * pr.t;
    const double p = model.params().p;
    probe.energy = 0.5 * t2 * e.q_lambda - std::pow(pr.t, p + 1.0) * e.b_total / (p + 1.0);
    probe.competition = 0.5 * model.params().lambda * e.mass_a -
                        std::pow(pr.t, p - 1.0) / (p + 1.0) * e.nonlin_b;
    return probe;
}

InteractionSample interaction_integral(std::shared_ptr<const BoxGrid> grid,
                                       const LimitGroundState& limit, double rho,
                                       std::array<double, 3> z, std::array<double, 3> xi)
{
    const BoxGrid& g = *grid;
    const double kappa = limit.params.kappa();
    std::array<double, 3> cz{rho * z[0], rho * z[1], rho * z[2]};
    std::array<double, 3> cx{rho * xi[0], rho * xi[1], rho * xi[2]};
    check_clearance(g, cz, kappa);
    check_clearance(g, cx, kappa);

    const BoxField wa = sampled_bump(grid, limit, cz, true);
    const BoxField wb = sampled_bump(grid, limit, cx, true);
    const double p = limit.params.p;

    InteractionSample s;
    s.rho = rho;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w = g.weight(i);
        s.eps += w * std::pow(wa.v[i], p) * wb.v[i];
        s.eps_swapped += w * wa.v[i] * std::pow(wb.v[i], p);
    }
    return s;
}

InteractionFit interaction_ladder(std::shared_ptr<const BoxGrid> grid,
                                  const LimitGroundState& limit,
                                  const std::vector<double>& rhos, std::array<double, 3> z,
                                  std::array<double, 3> xi)
{
    if (rhos.size() < 3) throw std::invalid_argument("interaction fit needs >= 3 rho values");
    InteractionFit fit;
    std::vector<double> sep, val;
    for (double rho : rhos) {
        fit.samples.push_back(interaction_integral(grid, limit, rho, z, xi));
        sep.push_back(rho);
        val.push_back(fit.samples.back().eps);
    }
    const bool with_power = rhos.size() >= 4 && limit.params.dim > 1;
    const DecayFit f = fit_log_decay(sep, val, sep.front() - 1e-9, sep.back() + 1e-9,
                                     with_power, 0.0);
    fit.rate = f.rate;
    fit.power = f.power;
    return fit;
}

namespace {

// Copy `in` translated by whole lattice steps, zero fill and pinned boundary.
void translate_lattice(const BoxGrid& g, const std::vector<double>& in,
                       std::vector<double>& out, const std::array<long, 3>& steps)
{
    const std::size_t n = g.per_axis();
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (g.on_boundary(i)) {
            out[i] = 0.0;
            continue;
        }
        long src = static_cast<long>(i);
        bool inside = true;
        for (int d = 0; d < g.dim(); ++d) {
            const long id = static_cast<long>(g.axis_index(i, d)) - steps[static_cast<std::size_t>(d)];
            if (id < 0 || id >= static_cast<long>(n)) {
                inside = false;
                break;
            }
            src += (id - static_cast<long>(g.axis_index(i, d))) * static_cast<long>(g.stride(d));
        }
        out[i] = inside ? in[static_cast<std::size_t>(src)] : 0.0;
    }
}

} // namespace

PsiSurfaceReport psi_surface(const EnergyModel<BoxGrid>& model, const LimitGroundState& limit,
                             double rho, std::array<double, 3> xi, std::size_t res_z,
                             std::size_t res_s, const SolverOptions& opts)
{
    if (res_z < 8 && model.grid().dim() > 1)
        throw std::invalid_argument("psi surface needs at least 8 sphere samples");
    if (res_s < 8) throw std::invalid_argument("psi surface needs at least 8 s samples");

    const BoxGrid& g = model.grid();
    const auto zs = sphere_section(g.dim(), xi, res_z);
    const double kappa = model.params().kappa();
    for (const auto& z : zs) {
        std::array<double, 3> c{rho * z[0], rho * z[1], rho * z[2]};
        check_clearance(g, c, kappa);
    }

    PsiSurfaceReport rep;
    rep.rho = rho;

    // The bump template is the minimized limit soliton of this very box,
    // normalized; translating it on the lattice keeps the single-bump level
    // exactly at the discrete limit level, so the surface levels compare
    // against two_m_inf without sampling bias.
    BoxField base(model.grid_ptr());
    {
        ProblemParams lp = model.params();
        lp.lambda = 0.0;
        EnergyModel<BoxGrid> m0(model.grid_ptr(), lp, CoefficientProfile::zero(),
                                CoefficientProfile::zero());
        auto r = minimize(m0, soliton_seed(model.grid_ptr(), limit), opts);
        rep.two_m_inf = 2.0 * r.m;
        const double nrm = lp_norm(r.u, model.params().p + 1.0);
        base = std::move(r.u);
        for (double& x : base.v) x /= nrm;
    }

    const auto lattice_steps = [&](const std::array<double, 3>& c) {
        std::array<long, 3> k{0, 0, 0};
        for (int d = 0; d < g.dim(); ++d)
            k[static_cast<std::size_t>(d)] = std::lround(c[static_cast<std::size_t>(d)] / g.spacing());
        return k;
    };

    BoxField fixed(model.grid_ptr()), moving(model.grid_ptr()), psi(model.grid_ptr());
    translate_lattice(g, base.v, fixed.v, lattice_steps({rho * xi[0], rho * xi[1], rho * xi[2]}));

    for (const auto& z : zs) {
        translate_lattice(g, base.v, moving.v,
                          lattice_steps({rho * z[0], rho * z[1], rho * z[2]}));
        for (std::size_t k = 0; k < res_s; ++k) {
            const double s = static_cast<double>(k) / static_cast<double>(res_s - 1);
            for (std::size_t i = 0; i < psi.v.size(); ++i)
                psi.v[i] = (1.0 - s) * moving.v[i] + s * fixed.v[i];
            const double val = model.reduced_energy(psi);
            rep.t_rho = std::max(rep.t_rho, val);
            if (k == 0) rep.s_rho = std::max(rep.s_rho, val);
        }
    }

    {
        std::array<double, 3> anti{-xi[0], -xi[1], -xi[2]};
        rep.epsilon_rho = interaction_integral(model.grid_ptr(), limit, rho, anti, xi).eps;
    }
    return rep;
}

B0Estimate estimate_b0(const EnergyModel<BoxGrid>& model, const LimitGroundState& limit,
                       double penalty_weight, const SolverOptions& opts, B0Init init,
                       double bump_offset)
{
    if (!(penalty_weight > 0.0)) throw std::invalid_argument("penalty weight must be > 0");
    const BoxGrid& g = model.grid();

    BoxField seed(model.grid_ptr());
    if (init == B0Init::centered) {
        seed = soliton_seed(model.grid_ptr(), limit);
    } else {
        const double off = bump_offset > 0.0 ? bump_offset : 0.45 * g.half_width();
        const BoxField a = sampled_bump(model.grid_ptr(), limit, {off, 0.0, 0.0}, false);
        const BoxField b = sampled_bump(model.grid_ptr(), limit, {-off, 0.0, 0.0}, false);
        for (std::size_t i = 0; i < seed.v.size(); ++i) seed.v[i] = a.v[i] + b.v[i];
    }

    // scale-invariant centering surrogate: the L2 mass center of the field
    const auto mass_center = [&g](const BoxField& u, double& mass, std::array<double, 3>& c) {
        mass = 0.0;
        c = {0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double m = g.weight(i) * u.v[i] * u.v[i];
            mass += m;
            const auto x = g.point(i);
            for (int d = 0; d < g.dim(); ++d) c[static_cast<std::size_t>(d)] += m * x[static_cast<std::size_t>(d)];
        }
        if (mass > 0.0)
            for (int d = 0; d < g.dim(); ++d) c[static_cast<std::size_t>(d)] /= mass;
    };

    PenaltyHooks<BoxGrid> hooks;
    hooks.value = [&, penalty_weight](const BoxField& u) {
        double mass;
        std::array<double, 3> c;
        mass_center(u, mass, c);
        double c2 = 0.0;
        for (int d = 0; d < g.dim(); ++d) c2 += c[static_cast<std::size_t>(d)] * c[static_cast<std::size_t>(d)];
        return penalty_weight * c2;
    };
    hooks.add_gradient = [&, penalty_weight](const BoxField& u, BoxField& grad) {
        double mass;
        std::array<double, 3> c;
        mass_center(u, mass, c);
        if (!(mass > 0.0)) return;
        const double f = 4.0 * penalty_weight / mass;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g.on_boundary(i)) continue;
            const auto x = g.point(i);
            double proj = 0.0;
            for (int d = 0; d < g.dim(); ++d)
                proj += c[static_cast<std::size_t>(d)] * (x[static_cast<std::size_t>(d)] - c[static_cast<std::size_t>(d)]);
            grad.v[i] += f * u.v[i] * proj;
        }
    };

    const auto r = minimize(model, seed, opts, &hooks);
    B0Estimate est;
    est.value = r.m;
    est.converged = r.converged;
    est.barycenter = barycenter_point(r.u);
    return est;
}

std::vector<double> radial_level(const ProblemParams& params, const CoefficientProfile& a,
                                 const CoefficientProfile& b,
                                 std::shared_ptr<const RadialGrid> grid,
                                 const LimitGroundState& limit,
                                 const std::vector<double>& lambdas, const SolverOptions& opts)
{
    std::vector<double> ls = lambdas;
    std::sort(ls.begin(), ls.end());
    EnergyModel<RadialGrid> model(grid, params, a, b);
    const double kappa = params.kappa();

    // ring seed: the soliton profile recentered at radius R
    const auto ring_seed = [&](double R) {
        RadialField f(grid);
        for (std::size_t i = 0; i + 1 < grid->size(); ++i)
            f.v[i] = limit.sample(std::abs(grid->r(i) - R));
        return f;
    };

    std::vector<double> out;
    RadialField warm = soliton_seed(grid, limit);
    bool have_warm = false;
    for (double l : ls) {
        model.set_lambda(l);

        // scan ring radii by projected energy to seed the descent
        double best_R = 0.0, best_val = 0.0;
        bool first = true;
        const double R_max = grid->r_max() - 5.0 / kappa;
        for (double R = 0.0; R <= R_max; R += 2.0) {
            const double val = model.reduced_energy(ring_seed(R));
            if (first || val < best_val) {
                best_val = val;
                best_R = R;
                first = false;
            }
        }

        std::vector<RadialField> seeds;
        if (best_R > 0.0) seeds.push_back(ring_seed(best_R));
        seeds.push_back(soliton_seed(grid, limit));
        if (have_warm) seeds.push_back(warm);

        SolverOptions probe_opts = opts;
        probe_opts.max_iters = std::min<std::size_t>(opts.max_iters, 2000);
        bool have = false;
        GroundStateResult<RadialGrid> best;
        for (const auto& s : seeds) {
            auto r = minimize(model, s, probe_opts);
            if (!have || r.m < best.m) {
                best = std::move(r);
                have = true;
            }
        }
        if (!best.converged) {
            auto r = minimize(model, best.u, opts);
            if (r.m <= best.m || r.converged) best = std::move(r);
        }
        out.push_back(best.m);
        warm = best.u;
        have_warm = true;
        double peak = 0.0;
        for (double x : warm.v) peak = std::max(peak, std::abs(x));
        if (!(peak > 0.0)) have_warm = false;
    }
    return out;
}

std::vector<OverlapSample> check_overlap_lemma(const CoefficientProfile& g,
                                               const CoefficientProfile& h,
                                               std::array<double, 3> z,
                                               const std::vector<double>& rhos, int dim,
                                               double spacing)
{
    if (rhos.size() < 3) throw std::invalid_argument("overlap check needs >= 3 rho values");
    g.validate();
    h.validate();
    if (!h.compact_support())
        throw std::invalid_argument("overlap check needs a compactly supported h");

    // decay triple (alpha, bpow, gamma) of g against e^{alpha r} r^{bpow}
    double alpha = 0.0, bpow = 0.0, gamma = 0.0;
    switch (g.family) {
        case ProfileFamily::zero: break;
        case ProfileFamily::compact_bump: break; // gamma = 0
        case ProfileFamily::exponential:
            alpha = g.rate;
            gamma = g.amplitude;
            break;
        case ProfileFamily::power_exponential:
            alpha = g.rate;
            bpow = g.power;
            gamma = g.amplitude;
            break;
    }

    double zn = 0.0;
    for (int d = 0; d < dim; ++d) zn += z[static_cast<std::size_t>(d)] * z[static_cast<std::size_t>(d)];
    zn = std::sqrt(zn);
    if (!(zn > 0.0)) throw std::invalid_argument("overlap check needs z != 0");

    const double Lh = h.radius + 0.5;
    auto box = make_box_grid_spacing(dim, Lh, spacing);
    const BoxGrid& bg = *box;

    double rhs = 0.0;
    for (std::size_t i = 0; i < bg.size(); ++i) {
        const auto x = bg.point(i);
        double xdotz = 0.0;
        for (int d = 0; d < dim; ++d) xdotz += x[static_cast<std::size_t>(d)] * z[static_cast<std::size_t>(d)];
        rhs += bg.weight(i) * eval_coefficient(h, bg.radius(i)) *
               std::exp(-alpha * xdotz / zn);
    }
    rhs *= gamma;

    std::vector<OverlapSample> out;
    for (double rho : rhos) {
        OverlapSample s;
        s.rho = rho;
        double lhs = 0.0;
        for (std::size_t i = 0; i < bg.size(); ++i) {
            const auto x = bg.point(i);
            double r2 = 0.0;
            for (int d = 0; d < dim; ++d) {
                const double c = x[static_cast<std::size_t>(d)] + rho * z[static_cast<std::size_t>(d)];
                r2 += c * c;
            }
            lhs += bg.weight(i) * eval_coefficient(g, std::sqrt(r2)) *
                   eval_coefficient(h, bg.radius(i));
        }
        const double blowup = std::exp(alpha * rho * zn) * std::pow(rho * zn, bpow);
        s.lhs = lhs * blowup;
        s.rhs = rhs;
        s.ratio = rhs != 0.0 ? s.lhs / rhs : std::numeric_limits<double>::quiet_NaN();
        out.push_back(s);
    }
    return out;
}

DecayFit decay_fit(const RadialField& u, double kappa)
{
    const RadialGrid& g = *u.grid;
    std::vector<double> rr(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) rr[i] = g.r(i);
    const double pad = 5.0 / kappa;
    return fit_log_decay(rr, u.v, pad, g.r_max() - pad, true);
}

DecayFit decay_fit(const BoxField& u, double kappa)
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
    return fit_log_decay(rr, uu, 3.0 / kappa, margin - 2.0 / kappa, true);
}

} // namespace nehari
