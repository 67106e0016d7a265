#include "nehari/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "nehari/parallel.hpp"

namespace nehari {

std::vector<double> SweepResult::lambdas() const
{
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.lambda);
    return out;
}

std::vector<double> SweepResult::m_values() const
{
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.m);
    return out;
}

SweepEngine::SweepEngine(ProblemParams params, CoefficientProfile a, CoefficientProfile b,
                         std::vector<std::shared_ptr<const BoxGrid>> grid_ladder,
                         SolverOptions solver, double delta)
    : par_(params), a_(a), b_(b), grids_(std::move(grid_ladder)), opts_(solver), delta_(delta)
{
    par_.validate();
    if (grids_.empty()) throw std::invalid_argument("sweep needs at least one grid");
    std::sort(grids_.begin(), grids_.end(),
              [](const auto& x, const auto& y) { return x->half_width() < y->half_width(); });

    // soliton source covering the largest box diagonal
    const double kappa = par_.kappa();
    const auto& big = *grids_.back();
    const double r_need =
        big.half_width() * std::sqrt(static_cast<double>(big.dim())) + 6.0 / kappa;
    const double r_max = std::max(16.0 / kappa, r_need);
    const std::size_t nodes =
        static_cast<std::size_t>(std::ceil(r_max / std::min(0.01 / kappa, 0.02))) + 1;
    limit_ = solve_limit(par_, make_radial_grid(par_.dim, r_max, nodes));

    models_.reserve(grids_.size());
    for (const auto& g : grids_) models_.emplace_back(g, par_, a_, b_);

    // same-grid limit levels and the Richardson budget on the largest grid
    ProblemParams limit_par = par_;
    limit_par.lambda = 0.0;
    GroundStateResult<BoxGrid> big_ref;
    for (std::size_t gi = 0; gi < grids_.size(); ++gi) {
        EnergyModel<BoxGrid> m0(grids_[gi], limit_par, CoefficientProfile::zero(),
                                CoefficientProfile::zero());
        auto r = minimize(m0, soliton_seed(grids_[gi], limit_), opts_);
        m_inf_.push_back(r.m);
        if (gi + 1 == grids_.size()) big_ref = std::move(r);
    }
    {
        const auto& g = *grids_.back();
        auto fine = make_box_grid(g.dim(), g.half_width(), 2 * g.per_axis() - 1);
        EnergyModel<BoxGrid> m0(fine, limit_par, CoefficientProfile::zero(),
                                CoefficientProfile::zero());
        SolverOptions fine_opts = opts_;
        fine_opts.tol_grad = std::max(opts_.tol_grad, 1e-4 * std::abs(m_inf_.back()));
        auto r = minimize(m0, prolong(big_ref.u, fine), fine_opts);
        delta_h_ = std::abs(m_inf_.back() - r.m);
    }
}

SweepEntry SweepEngine::solve_entry(double lambda, const BoxField* warm)
{
    SweepEntry entry;
    entry.lambda = lambda;
    entry.m_per_grid.resize(grids_.size());

    std::vector<BoxLevel> ladder;
    GroundStateResult<BoxGrid> winner;
    for (std::size_t gi = 0; gi < grids_.size(); ++gi) {
        auto& model = models_[gi];
        model.set_lambda(lambda);
        const auto& g = grids_[gi];

        // cheap scan of translated-bump energies picks the off-center seed
        double best_off = 0.0, best_val = 0.0;
        {
            const double off_max = g->half_width() - 4.0 / par_.kappa();
            bool first = true;
            for (double off = 0.0; off <= off_max; off += 1.0) {
                BoxField probe = soliton_seed(g, limit_, {off, 0.0, 0.0});
                const double val = model.reduced_energy(probe);
                if (first || val < best_val) {
                    best_val = val;
                    best_off = off;
                    first = false;
                }
            }
        }

        std::vector<BoxField> seeds;
        if (best_off > 0.0) seeds.push_back(soliton_seed(g, limit_, {best_off, 0.0, 0.0}));
        seeds.push_back(soliton_seed(g, limit_));
        if (warm && gi + 1 == grids_.size() && warm->grid == g) seeds.push_back(*warm);

        // exploration pass with a capped budget, then finish the winner
        SolverOptions probe_opts = opts_;
        probe_opts.max_iters = std::min<std::size_t>(opts_.max_iters, 2000);
        std::vector<GroundStateResult<BoxGrid>> stage(seeds.size());
        parallel_for_each(seeds.size(),
                          [&](std::size_t k) { stage[k] = minimize(model, seeds[k], probe_opts); });
        bool have = false;
        GroundStateResult<BoxGrid> best;
        for (auto& r : stage) {
            if (!have || r.m < best.m) {
                best = std::move(r);
                have = true;
            }
        }
        if (!best.converged) {
            auto r = minimize(model, best.u, opts_);
            if (r.m <= best.m || r.converged) best = std::move(r);
        }
        entry.m_per_grid[gi] = best.m;
        ladder.push_back({g->half_width(), best.m, best.boundary_mass});
        if (gi + 1 == grids_.size()) winner = std::move(best);
    }

    entry.m = winner.m;
    entry.converged = winner.converged;
    entry.boundary_mass = winner.boundary_mass;
    entry.iterations = winner.iterations;
    entry.escape = detect_escape(ladder, m_inf_.back(), delta_).kind;

    warm_ = std::move(winner.u);
    have_warm_ = true;
    return entry;
}

SweepResult SweepEngine::run(const std::vector<double>& lambdas)
{
    if (lambdas.size() < 2) throw std::invalid_argument("sweep needs at least two lambdas");
    std::vector<double> ls = lambdas;
    std::sort(ls.begin(), ls.end());

    SweepResult out;
    out.m_inf = m_inf_.back();
    out.delta_h = delta_h_;
    out.epsilon_mono = 1e-6 * std::abs(out.m_inf);

    have_warm_ = false;
    for (double l : ls)
        out.entries.push_back(solve_entry(l, have_warm_ ? &warm_ : nullptr));

    out.monotone_ok = true;
    out.max_backward_jump = 0.0;
    out.continuity_modulus = 0.0;
    for (std::size_t i = 0; i + 1 < out.entries.size(); ++i) {
        if (!out.entries[i].converged || !out.entries[i + 1].converged) continue;
        const double jump = out.entries[i].m - out.entries[i + 1].m;
        out.max_backward_jump = std::max(out.max_backward_jump, jump);
        out.continuity_modulus =
            std::max(out.continuity_modulus, std::abs(jump));
        if (jump > out.epsilon_mono) out.monotone_ok = false;
    }
    out.lambda_star = estimate_lambda_star(out, delta_);
    return out;
}

bool SweepEngine::trigger(const SweepEntry& e, double delta) const
{
    return e.converged && e.m >= m_inf_.back() - delta && e.escape == EscapeKind::escaping;
}

LambdaStarEstimate SweepEngine::estimate_lambda_star(const SweepResult& sweep, double delta)
{
    if (!(delta > delta_h_))
        throw std::invalid_argument("lambda-star delta must exceed the refinement budget");

    LambdaStarEstimate est;
    est.lambda_max = sweep.entries.empty() ? 0.0 : sweep.entries.back().lambda;

    std::size_t first = sweep.entries.size();
    for (std::size_t i = 0; i < sweep.entries.size(); ++i) {
        if (!sweep.entries[i].converged) continue; // treated as missing
        if (trigger(sweep.entries[i], delta)) {
            first = i;
            break;
        }
    }
    if (first == sweep.entries.size()) return est; // not observed up to lambda_max

    double hi = sweep.entries[first].lambda;
    double lo = 0.0;
    for (std::size_t i = first; i-- > 0;) {
        if (sweep.entries[i].converged) {
            lo = sweep.entries[i].lambda;
            break;
        }
    }

    while (hi - lo > 0.01 * hi) {
        const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        const SweepEntry e = solve_entry(mid, nullptr);
        if (trigger(e, delta))
            hi = mid;
        else
            lo = mid;
    }

    est.observed = true;
    est.value = hi;
    const SweepEntry twice = solve_entry(2.0 * hi, nullptr);
    est.persistent = trigger(twice, delta);
    return est;
}

AuditReport audit_map_properties(const SweepResult& sweep)
{
    if (sweep.entries.size() < 3)
        throw std::invalid_argument("audit needs at least three sweep entries");
    AuditReport rep;
    for (std::size_t i = 0; i + 1 < sweep.entries.size(); ++i) {
        const auto& a = sweep.entries[i];
        const auto& b = sweep.entries[i + 1];
        if (!a.converged || !b.converged) continue;
        const double jump = a.m - b.m;
        rep.max_backward_jump = std::max(rep.max_backward_jump, jump);
        rep.continuity_modulus = std::max(rep.continuity_modulus, std::abs(jump));
        if (jump > sweep.epsilon_mono) ++rep.monotonicity_violations;
    }
    rep.lambda_star_positive = !sweep.lambda_star.observed || sweep.lambda_star.value > 0.0;
    return rep;
}

} // namespace nehari
