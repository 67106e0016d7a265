#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nehari/grid.hpp"

using namespace nehari;

TEST_CASE("radial quadrature: constants are exact")
{
    // N=1 with |S^0| = 2: the measure of [-r_max, r_max]
    auto g1 = make_radial_grid(1, 5.0, 501);
    RadialField one(g1);
    for (double& x : one.v) x = 1.0;
    CHECK(integrate(one) == doctest::Approx(10.0).epsilon(1e-13));

    CHECK(unit_sphere_area(1) == doctest::Approx(2.0));
    CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * M_PI));
    CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * M_PI));
}

TEST_CASE("radial quadrature: zero field")
{
    auto g = make_radial_grid(3, 8.0, 201);
    RadialField z(g);
    CHECK(integrate(z) == 0.0);
}

TEST_CASE("radial quadrature vs adaptive oracle, N=3 gaussian")
{
    // oracle: 4 pi int r^2 e^{-r^2} dr by adaptive Simpson
    const double oracle =
        4.0 * M_PI *
        testing::adaptive_simpson([](double r) { return r * r * std::exp(-r * r); }, 0.0, 10.0);
    auto g = make_radial_grid(3, 10.0, 1001); // h = 0.01
    const double got = integrate(*g, [&](std::size_t i) {
        const double r = g->r(i);
        return std::exp(-r * r);
    });
    CHECK(std::abs(got - oracle) / oracle < 1e-6);
    // and against the closed form pi^{3/2}
    CHECK(std::abs(got - std::pow(M_PI, 1.5)) / got < 1e-6);
}

TEST_CASE("quadrature linearity to machine precision")
{
    auto g = make_radial_grid(2, 6.0, 301);
    auto rng = testing::test_rng();
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    RadialField f(g), h(g), lin(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.v[i] = unif(rng);
        h.v[i] = unif(rng);
        lin.v[i] = 0.7 * f.v[i] + 1.3 * h.v[i];
    }
    const double lhs = integrate(lin);
    const double rhs = 0.7 * integrate(f) + 1.3 * integrate(h);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
}

TEST_CASE("refinement convergence order of the radial quadrature")
{
    const double exact = std::pow(M_PI, 1.5); // N=3 gaussian
    const auto value_at = [&](std::size_t nodes) {
        auto g = make_radial_grid(3, 10.0, nodes);
        return integrate(*g, [&](std::size_t i) {
            const double r = g->r(i);
            return std::exp(-r * r);
        });
    };
    const double e1 = std::abs(value_at(251) - exact);
    const double e2 = std::abs(value_at(501) - exact);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 1.9);
}

TEST_CASE("h1 products: trivial and closed-form cases")
{
    auto g = make_radial_grid(1, 10.0, 2001);
    RadialField zero(g), u(g);
    const auto pz = h1_products(zero, zero);
    CHECK(pz.dirichlet == 0.0);
    CHECK(pz.l2 == 0.0);

    // u = sin(pi r / r_max): with |S^0| = 2, the L2 mass is r_max
    for (std::size_t i = 0; i < u.size(); ++i)
        u.v[i] = std::sin(M_PI * g->r(i) / g->r_max());
    u.v[u.size() - 1] = 0.0;
    const auto pr = h1_products(u, u);
    CHECK(pr.dirichlet >= 0.0);
    CHECK(pr.l2 >= 0.0);
    CHECK(std::abs(pr.l2 - g->r_max()) / g->r_max() < 1e-4);
}

TEST_CASE("h1 products: symmetric and bilinear")
{
    auto g = make_radial_grid(2, 6.0, 201);
    auto rng = testing::test_rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    RadialField u(g), v(g), w(g);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        u.v[i] = unif(rng);
        v.v[i] = unif(rng);
        w.v[i] = unif(rng);
    }
    const auto uv = h1_products(u, v);
    const auto vu = h1_products(v, u);
    CHECK(uv.dirichlet == doctest::Approx(vu.dirichlet).epsilon(1e-14));
    CHECK(uv.l2 == doctest::Approx(vu.l2).epsilon(1e-14));

    RadialField combo(g);
    for (std::size_t i = 0; i < u.size(); ++i) combo.v[i] = 2.0 * u.v[i] - 0.5 * w.v[i];
    const auto cv = h1_products(combo, v);
    const auto wv = h1_products(w, v);
    CHECK(cv.dirichlet ==
          doctest::Approx(2.0 * uv.dirichlet - 0.5 * wv.dirichlet).epsilon(1e-12));
    CHECK(cv.l2 == doctest::Approx(2.0 * uv.l2 - 0.5 * wv.l2).epsilon(1e-12));

    // norm dominates the mass term
    const auto uu = h1_products(u, u);
    CHECK(uu.dirichlet + 1.0 * uu.l2 >= 1.0 * uu.l2);
}

TEST_CASE("h1 products reject mismatched grids")
{
    auto g1 = make_radial_grid(2, 6.0, 201);
    auto g2 = make_radial_grid(2, 6.0, 201);
    RadialField u(g1), v(g2);
    CHECK_THROWS_AS(h1_products(u, v), std::invalid_argument);
}

TEST_CASE("lp norm: homogeneity and the sech mass")
{
    auto g = make_radial_grid(2, 6.0, 201);
    auto rng = testing::test_rng(11);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    RadialField u(g);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) u.v[i] = unif(rng);
    RadialField zero(g);
    CHECK(lp_norm(zero, 2.0) == 0.0);
    const double c = 3.7;
    RadialField cu(g);
    for (std::size_t i = 0; i < u.size(); ++i) cu.v[i] = c * u.v[i];
    CHECK(lp_norm(cu, 2.5) == doctest::Approx(c * lp_norm(u, 2.5)).epsilon(1e-13));

    // sqrt(2) sech(r) on the half line with even extension: total L2 mass 4
    const auto& st = testing::sech_state();
    CHECK(std::abs(lp_norm(st.w, 2.0) - 2.0) < 1e-3);
}

TEST_CASE("box grid basics and boundary structure")
{
    auto g = make_box_grid_spacing(2, 4.0, 0.5);
    CHECK(g->per_axis() % 2 == 1);
    CHECK(g->spacing() == doctest::Approx(0.5));
    // tensor trapezoid integrates constants to the box measure
    BoxField one(*&g);
    for (std::size_t i = 0; i < one.size(); ++i) one.v[i] = 1.0;
    CHECK(integrate(one) == doctest::Approx(64.0).epsilon(1e-12));

    std::size_t boundary = 0;
    for (std::size_t i = 0; i < g->size(); ++i)
        if (g->on_boundary(i)) ++boundary;
    CHECK(boundary == 4 * (g->per_axis() - 1));
}

TEST_CASE("box prolongation reproduces multilinear data")
{
    auto gc = make_box_grid(2, 4.0, 17);
    auto gf = make_box_grid(2, 4.0, 33);
    BoxField c(gc);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (gc->on_boundary(i)) continue;
        const auto x = gc->point(i);
        c.v[i] = 1.0 + 0.5 * x[0] - 0.25 * x[1];
    }
    const BoxField f = prolong(c, gf);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (gf->on_boundary(i)) continue;
        const auto x = gf->point(i);
        bool touches_coarse_boundary = std::abs(x[0]) > 4.0 - 0.51 || std::abs(x[1]) > 4.0 - 0.51;
        if (touches_coarse_boundary) continue; // coarse zeros bleed in
        CHECK(f.v[i] == doctest::Approx(1.0 + 0.5 * x[0] - 0.25 * x[1]).epsilon(1e-12));
    }
}
