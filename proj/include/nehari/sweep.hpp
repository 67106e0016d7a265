#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "nehari/ground_state.hpp"

namespace nehari {

struct LambdaStarEstimate {
    bool observed = false;
    double value = 0.0;      ///< refined threshold when observed
    double lambda_max = 0.0; ///< largest lambda probed when not observed
    bool persistent = false; ///< trigger still holds at twice the candidate
};

struct SweepEntry {
    double lambda = 0.0;
    bool converged = false;
    double m = 0.0;              ///< level on the largest grid of the ladder
    double boundary_mass = 0.0;  ///< of the winning minimizer on the largest grid
    std::size_t iterations = 0;
    EscapeKind escape = EscapeKind::inconclusive;
    std::vector<double> m_per_grid;
};

struct SweepResult {
    std::vector<SweepEntry> entries;
    double m_inf = 0.0;           ///< limit level on the largest grid
    double delta_h = 0.0;         ///< Richardson refinement budget for m_inf
    double epsilon_mono = 0.0;    ///< monotonicity slack used by the audit
    LambdaStarEstimate lambda_star;
    bool monotone_ok = true;
    double max_backward_jump = 0.0;
    double continuity_modulus = 0.0;

    std::vector<double> lambdas() const;
    std::vector<double> m_values() const;
};

struct AuditReport {
    std::size_t monotonicity_violations = 0;
    double max_backward_jump = 0.0;
    double continuity_modulus = 0.0;
    bool lambda_star_positive = true;
};

/// Runs the lambda ladder over a ladder of box grids. Every entry is solved
/// by multistart (centered soliton, offset soliton, and the warm start from
/// the previous lambda) and the best level wins; escape is diagnosed from
/// the grid ladder against the same-grid limit level.
class SweepEngine {
public:
    SweepEngine(ProblemParams params, CoefficientProfile a, CoefficientProfile b,
                std::vector<std::shared_ptr<const BoxGrid>> grid_ladder,
                SolverOptions solver, double delta);

    /// Saturation margin guidance: delta must exceed the refinement budget.
    double delta_h() const { return delta_h_; }
    double m_inf() const { return m_inf_.back(); }
    const std::vector<double>& m_inf_per_grid() const { return m_inf_; }
    const LimitGroundState& limit_state() const { return limit_; }

    SweepEntry solve_entry(double lambda, const BoxField* warm);
    SweepResult run(const std::vector<double>& lambdas);

    /// Smallest lambda with level saturation and escape, refined by bisection
    /// to a 1% relative bracket and checked for persistence at twice the
    /// candidate. Extra solves are performed as needed.
    LambdaStarEstimate estimate_lambda_star(const SweepResult& sweep, double delta);

private:
    bool trigger(const SweepEntry& e, double delta) const;

    ProblemParams par_;
    CoefficientProfile a_, b_;
    std::vector<std::shared_ptr<const BoxGrid>> grids_;
    SolverOptions opts_;
    double delta_;
    LimitGroundState limit_;
    std::vector<double> m_inf_;
    double delta_h_ = 0.0;
    std::vector<EnergyModel<BoxGrid>> models_;
    BoxField warm_;
    bool have_warm_ = false;
};

/// Monotonicity violations beyond epsilon_mono, the continuity modulus, and
/// the sign of the lambda-star estimate. Requires at least three entries.
AuditReport audit_map_properties(const SweepResult& sweep);

} // namespace nehari
