#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nehari/energy.hpp"

using namespace nehari;

namespace {

ProblemParams params2(double lambda = 0.5)
{
    ProblemParams par;
    par.dim = 2;
    par.p = 3.0;
    par.a_inf = par.b_inf = 1.0;
    par.lambda = lambda;
    return par;
}

EnergyModel<RadialGrid> bump_model(double lambda = 0.5)
{
    auto g = make_radial_grid(2, 8.0, 401);
    return EnergyModel<RadialGrid>(g, params2(lambda),
                                   CoefficientProfile::compact_bump(1.0, 2.0),
                                   CoefficientProfile::exponential(0.5, 1.0));
}

RadialField random_positive(const EnergyModel<RadialGrid>& m, unsigned long seed)
{
    auto rng = testing::test_rng(seed);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    RadialField u = m.make_field();
    for (std::size_t i = 0; i + 1 < u.size(); ++i) u.v[i] = unif(rng);
    return u;
}

} // namespace

TEST_CASE("energy of the zero field vanishes")
{
    auto m = bump_model();
    CHECK(m.energy(m.make_field()) == 0.0);
}

TEST_CASE("energy of the limit soliton under zero profiles equals the limit level")
{
    const auto& st = testing::planar_state();
    EnergyModel<RadialGrid> m(st.w.grid, st.params, CoefficientProfile::zero(),
                              CoefficientProfile::zero());
    CHECK(std::abs(m.energy(st.w) - st.level) < 1e-8 * st.level);
    // w is on the constraint: G vanishes and the reduced form matches
    CHECK(std::abs(m.nehari_residual(st.w)) < 1e-10 * st.level);
    const auto e = m.breakdown(st.w);
    const double reduced_identity = (0.5 - 0.25) * e.q_lambda;
    CHECK(m.energy(st.w) == doctest::Approx(reduced_identity).epsilon(1e-10));
    CHECK(std::abs(m.reduced_energy(st.w) - st.level) < 1e-8 * st.level);
}

TEST_CASE("breakdown components are nonnegative and consistent")
{
    auto m = bump_model(2.0);
    const auto u = random_positive(m, 3);
    const auto e = m.breakdown(u);
    CHECK(e.kinetic >= 0.0);
    CHECK(e.mass_inf >= 0.0);
    CHECK(e.mass_a >= 0.0);
    CHECK(e.nonlin_inf >= 0.0);
    CHECK(e.nonlin_b >= 0.0);
    CHECK(e.q_lambda == doctest::Approx(e.kinetic + e.mass_inf + 2.0 * e.mass_a));
    CHECK(e.b_total == doctest::Approx(e.nonlin_inf + e.nonlin_b));
    CHECK(e.q_lambda >= e.kinetic + e.mass_inf); // a >= 0, lambda >= 0
    CHECK(m.energy(e) == doctest::Approx(0.5 * e.q_lambda - 0.25 * e.b_total));
}

TEST_CASE("nehari residual structure")
{
    auto m = bump_model();
    CHECK_THROWS_AS(m.nehari_residual(m.make_field()), std::domain_error);

    // G(t u) has exactly one positive zero in t
    const auto u = random_positive(m, 5);
    const auto e = m.breakdown(u);
    const double tstar = m.project(e).t;
    int crossings = 0;
    double prev = e.q_lambda; // sign of G(tu)/t^2 at t -> 0+
    for (double t = 0.01; t < 8.0 * tstar; t *= 1.1) {
        const double g = t * t * e.q_lambda - std::pow(t, 4.0) * e.b_total;
        if (g * prev < 0.0) ++crossings;
        if (g != 0.0) prev = g;
    }
    CHECK(crossings == 1);
}

TEST_CASE("projection: closed form, feasibility, homogeneity")
{
    auto m = bump_model();
    // q = 1, b_total = 4, p = 3 -> t = 1/2 (pure formula check)
    {
        EnergyBreakdown e;
        e.q_lambda = 1.0;
        e.b_total = 4.0;
        CHECK(m.project(e).t == doctest::Approx(0.5));
    }
    const auto u = random_positive(m, 7);
    const auto pr = m.project(u);
    CHECK(pr.residual_after < 1e-12);
    {
        RadialField tu = u;
        for (double& x : tu.v) x *= pr.t;
        CHECK(std::abs(m.nehari_residual(tu)) <
              1e-10 * m.breakdown(tu).q_lambda);
    }
    for (double c : {0.031, 0.8, 12.5, 740.0}) {
        RadialField cu = u;
        for (double& x : cu.v) x *= c;
        CHECK(m.project(cu).t == doctest::Approx(pr.t / c).epsilon(1e-12));
    }
    // the projection maximizes the ray energy
    {
        const auto e = m.breakdown(u);
        const double at_t = 0.5 * pr.t * pr.t * e.q_lambda -
                            0.25 * std::pow(pr.t, 4.0) * e.b_total;
        for (double s : {0.5 * pr.t, 0.9 * pr.t, 1.1 * pr.t, 2.0 * pr.t}) {
            const double at_s =
                0.5 * s * s * e.q_lambda - 0.25 * std::pow(s, 4.0) * e.b_total;
            CHECK(at_s <= at_t + 1e-12 * std::abs(at_t));
        }
    }
    CHECK_THROWS_AS(m.project(m.make_field()), std::domain_error);
}

TEST_CASE("projection scale is monotone in lambda, strictly when mass_a > 0")
{
    auto m = bump_model(0.0);
    const auto u = random_positive(m, 9);
    m.set_lambda(0.3);
    const double t1 = m.project(u).t;
    m.set_lambda(1.7);
    const double t2 = m.project(u).t;
    CHECK(t1 < t2);

    // field supported outside the bump: mass_a = 0 and the scales agree
    RadialField far = m.make_field();
    for (std::size_t i = 0; i + 1 < far.size(); ++i)
        far.v[i] = far.grid->r(i) > 3.0 ? 1.0 : 0.0;
    m.set_lambda(0.3);
    const double s1 = m.project(far).t;
    m.set_lambda(1.7);
    const double s2 = m.project(far).t;
    CHECK(s1 == doctest::Approx(s2).epsilon(1e-14));
    CHECK(m.breakdown(far).mass_a == 0.0);
}

TEST_CASE("reduced energy: scale invariance and lambda monotonicity")
{
    auto m = bump_model(0.5);
    const auto u = random_positive(m, 13);
    const double base = m.reduced_energy(u);
    for (double c : {0.001, 0.42, 65.0}) {
        RadialField cu = u;
        for (double& x : cu.v) x *= c;
        CHECK(m.reduced_energy(cu) == doctest::Approx(base).epsilon(1e-12));
    }
    // equals the ray maximum of the energy
    const auto pr = m.project(u);
    RadialField tu = u;
    for (double& x : tu.v) x *= pr.t;
    CHECK(m.energy(tu) == doctest::Approx(base).epsilon(1e-10));

    m.set_lambda(0.1);
    const double lo = m.reduced_energy(u);
    m.set_lambda(4.0);
    const double hi = m.reduced_energy(u);
    CHECK(lo <= hi + 1e-12 * std::abs(hi));
}

TEST_CASE("gradient: zero field, constraint pairing, directional derivative")
{
    auto m = bump_model(1.3);
    {
        const auto g = m.gradient(m.make_field());
        for (double x : g.v) CHECK(x == 0.0);
    }
    const auto u = random_positive(m, 17);
    const auto g = m.gradient(u);
    // <grad, u> = G(u)
    CHECK(m.inner(g, u) ==
          doctest::Approx(m.nehari_residual(u)).epsilon(1e-8));

    // central finite differences of the energy along a smooth direction
    auto rng = testing::test_rng(19);
    const RadialField us = testing::random_smooth_field(u.grid, rng, 1.0);
    const RadialField v = testing::random_smooth_field(u.grid, rng, 0.2);
    const auto gs = m.gradient(us);
    const double gv = m.inner(gs, v);
    const auto fd = [&](double eps) {
        RadialField up = us, dn = us;
        for (std::size_t i = 0; i < us.size(); ++i) {
            up.v[i] += eps * v.v[i];
            dn.v[i] -= eps * v.v[i];
        }
        return (m.energy(up) - m.energy(dn)) / (2.0 * eps);
    };
    const double e3 = std::abs(fd(1e-3) - gv);
    const double e4 = std::abs(fd(1e-4) - gv);
    if (e4 > 1e-13 * std::abs(gv)) {
        const double order = std::log10(e3 / e4);
        CHECK(order >= 1.9);
    }
}

TEST_CASE("gradient of the limit soliton under limit data is small")
{
    const auto& st = testing::planar_state();
    EnergyModel<RadialGrid> m(st.w.grid, st.params, CoefficientProfile::zero(),
                              CoefficientProfile::zero());
    CHECK(m.pde_residual(st.w) < 1e-8);
}
