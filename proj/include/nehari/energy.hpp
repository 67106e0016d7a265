#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nehari/coefficients.hpp"
#include "nehari/grid.hpp"

namespace nehari {

/// Primitive integrals of the energy functional for a given field.
/// q_lambda = kinetic + mass_inf + lambda * mass_a is the quadratic part,
/// b_total = nonlin_inf + nonlin_b the nonlinear mass; the energy is
/// q_lambda/2 - b_total/(p+1).
struct EnergyBreakdown {
    double kinetic = 0.0;    ///< integral of |grad u|^2
    double mass_inf = 0.0;   ///< a_inf * integral of u^2
    double mass_a = 0.0;     ///< integral of a(x) u^2 (lambda not included)
    double nonlin_inf = 0.0; ///< b_inf * integral of |u|^{p+1}
    double nonlin_b = 0.0;   ///< integral of b(x) |u|^{p+1}
    double q_lambda = 0.0;
    double b_total = 0.0;
};

struct NehariProjection {
    double t = 0.0;              ///< unique positive scale with t*u on the constraint
    double residual_after = 0.0; ///< |G(t u)| / q(t u), relative feasibility defect
};

/// Energy algebra for one problem instance on one grid. Coefficient values
/// are tabulated per node at construction so repeated evaluations inside the
/// descent loops cost one pass over the nodes. lambda may be changed after
/// construction; the tables do not depend on it.
template <class G>
class EnergyModel {
public:
    EnergyModel(std::shared_ptr<const G> grid, ProblemParams params,
                const CoefficientProfile& a, const CoefficientProfile& b)
        : grid_(std::move(grid)), par_(params)
    {
        par_.validate();
        a.validate();
        b.validate();
        const std::size_t n = grid_->size();
        a_.resize(n);
        b_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = grid_->radius(i);
            a_[i] = eval_coefficient(a, r);
            b_[i] = eval_coefficient(b, r);
        }
    }

    const std::shared_ptr<const G>& grid_ptr() const { return grid_; }
    const G& grid() const { return *grid_; }
    const ProblemParams& params() const { return par_; }
    void set_lambda(double lambda)
    {
        if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
        par_.lambda = lambda;
    }
    const std::vector<double>& a_table() const { return a_; }
    const std::vector<double>& b_table() const { return b_; }

    Field<G> make_field() const { return Field<G>(grid_); }

    EnergyBreakdown breakdown(const Field<G>& u) const
    {
        check(u);
        EnergyBreakdown e;
        grid_->for_each_face([&](std::size_t i, std::size_t j, double c) {
            const double d = u.v[j] - u.v[i];
            e.kinetic += c * d * d;
        });
        const auto& w = grid_->weights();
        const double pp1 = par_.p + 1.0;
        const bool cubic = par_.p == 3.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double ui = u.v[i];
            const double u2 = ui * ui;
            const double up = cubic ? u2 * u2 : std::pow(std::abs(ui), pp1);
            e.mass_inf += w[i] * u2;
            e.mass_a += w[i] * a_[i] * u2;
            e.nonlin_inf += w[i] * up;
            e.nonlin_b += w[i] * b_[i] * up;
        }
        e.mass_inf *= par_.a_inf;
        e.nonlin_inf *= par_.b_inf;
        e.q_lambda = e.kinetic + e.mass_inf + par_.lambda * e.mass_a;
        e.b_total = e.nonlin_inf + e.nonlin_b;
        return e;
    }

    double energy(const EnergyBreakdown& e) const
    {
        return 0.5 * e.q_lambda - e.b_total / (par_.p + 1.0);
    }
    double energy(const Field<G>& u) const { return energy(breakdown(u)); }

    /// G(u) = I'(u)[u] = q_lambda - b_total. Rejects the zero field.
    double nehari_residual(const EnergyBreakdown& e) const
    {
        if (e.q_lambda == 0.0 && e.b_total == 0.0)
            throw std::domain_error("nehari residual undefined for the zero field");
        return e.q_lambda - e.b_total;
    }
    double nehari_residual(const Field<G>& u) const { return nehari_residual(breakdown(u)); }

    /// Closed-form projection scale t = (q_lambda / b_total)^{1/(p-1)}.
    NehariProjection project(const EnergyBreakdown& e) const
    {
        if (!(e.b_total > 0.0))
            throw std::domain_error("nehari projection undefined: nonlinear mass vanishes");
        NehariProjection pr;
        pr.t = std::pow(e.q_lambda / e.b_total, 1.0 / (par_.p - 1.0));
        const double t2 = pr.t * pr.t;
        const double q_after = t2 * e.q_lambda;
        const double g_after = q_after - std::pow(pr.t, par_.p + 1.0) * e.b_total;
        pr.residual_after = q_after > 0.0 ? std::abs(g_after) / q_after : 0.0;
        return pr;
    }
    NehariProjection project(const Field<G>& u) const { return project(breakdown(u)); }

    /// Energy of the projected field, 0-homogeneous in u:
    /// ((p-1)/(2(p+1))) (q_lambda / b_total^{2/(p+1)})^{(p+1)/(p-1)}.
    double reduced_energy(const EnergyBreakdown& e) const
    {
        if (!(e.b_total > 0.0))
            throw std::domain_error("reduced energy undefined: nonlinear mass vanishes");
        const double p = par_.p;
        const double base = e.q_lambda / std::pow(e.b_total, 2.0 / (p + 1.0));
        return (p - 1.0) / (2.0 * (p + 1.0)) * std::pow(base, (p + 1.0) / (p - 1.0));
    }
    double reduced_energy(const Field<G>& u) const { return reduced_energy(breakdown(u)); }

    /// Nodal representative of I'(u) in the weighted inner product
    /// <f,g> = sum_i w_i f_i g_i: the two parts written separately,
    ///   linear_j    = [flux_j + w_j (a_inf + lambda a_j) u_j] / w_j
    ///   nonlinear_j = (b_inf + b_j) |u_j|^{p-1} u_j
    /// with gradient = linear - nonlinear, zero at Dirichlet nodes. The sum
    /// identity <gradient, v> = d/de I(u + e v) holds to machine precision,
    /// and <gradient, u> = nehari_residual(u).
    void gradient_parts(const Field<G>& u, Field<G>& linear, Field<G>& nonlinear) const
    {
        check(u);
        if (!linear.grid) linear = make_field();
        if (!nonlinear.grid) nonlinear = make_field();
        std::fill(linear.v.begin(), linear.v.end(), 0.0);
        grid_->for_each_face([&](std::size_t i, std::size_t j, double c) {
            const double d = c * (u.v[i] - u.v[j]);
            linear.v[i] += d;
            linear.v[j] -= d;
        });
        const auto& w = grid_->weights();
        const double pm1 = par_.p - 1.0;
        const bool cubic = par_.p == 3.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (grid_->on_boundary(i)) {
                linear.v[i] = 0.0;
                nonlinear.v[i] = 0.0;
                continue;
            }
            const double ui = u.v[i];
            linear.v[i] = linear.v[i] / w[i] + (par_.a_inf + par_.lambda * a_[i]) * ui;
            nonlinear.v[i] = (par_.b_inf + b_[i]) *
                             (cubic ? ui * ui * ui : std::pow(std::abs(ui), pm1) * ui);
        }
    }

    Field<G> gradient(const Field<G>& u) const
    {
        Field<G> lin = make_field(), nl = make_field();
        gradient_parts(u, lin, nl);
        for (std::size_t i = 0; i < lin.v.size(); ++i) lin.v[i] -= nl.v[i];
        return lin;
    }

    double inner(const Field<G>& f, const Field<G>& g) const
    {
        const auto& w = grid_->weights();
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f.v[i] * g.v[i];
        return s;
    }
    double weighted_norm(const Field<G>& f) const { return std::sqrt(inner(f, f)); }

    double h_norm(const Field<G>& u) const { return std::sqrt(h_norm_sq(u, par_.a_inf)); }

    /// ||I'(u)||_w normalized by ||u||. Rejects the zero field.
    double pde_residual(const Field<G>& u) const
    {
        const double nu = h_norm(u);
        if (!(nu > 0.0)) throw std::domain_error("pde residual undefined for the zero field");
        return weighted_norm(gradient(u)) / nu;
    }

private:
    void check(const Field<G>& u) const
    {
        if (u.grid != grid_) throw std::invalid_argument("field grid does not match the model");
    }

    std::shared_ptr<const G> grid_;
    ProblemParams par_;
    std::vector<double> a_;
    std::vector<double> b_;
};

// Convenience wrappers matching the one-shot call style.
template <class G>
EnergyBreakdown energy_breakdown(const Field<G>& u, const ProblemParams& par,
                                 const CoefficientProfile& a, const CoefficientProfile& b)
{
    return EnergyModel<G>(u.grid, par, a, b).breakdown(u);
}

template <class G>
double energy(const Field<G>& u, const ProblemParams& par, const CoefficientProfile& a,
              const CoefficientProfile& b)
{
    return EnergyModel<G>(u.grid, par, a, b).energy(u);
}

template <class G>
double nehari_residual(const Field<G>& u, const ProblemParams& par, const CoefficientProfile& a,
                       const CoefficientProfile& b)
{
    return EnergyModel<G>(u.grid, par, a, b).nehari_residual(u);
}

template <class G>
NehariProjection project(const Field<G>& u, const ProblemParams& par,
                         const CoefficientProfile& a, const CoefficientProfile& b)
{
    return EnergyModel<G>(u.grid, par, a, b).project(u);
}

template <class G>
double reduced_energy(const Field<G>& u, const ProblemParams& par, const CoefficientProfile& a,
                      const CoefficientProfile& b)
{
    return EnergyModel<G>(u.grid, par, a, b).reduced_energy(u);
}

template <class G>
Field<G> energy_gradient(const Field<G>& u, const ProblemParams& par,
                         const CoefficientProfile& a, const CoefficientProfile& b)
{
    return EnergyModel<G>(u.grid, par, a, b).gradient(u);
}

} // namespace nehari
