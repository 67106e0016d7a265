#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "nehari/ground_state.hpp"

using namespace nehari;

namespace {

SolverOptions quick_opts()
{
    SolverOptions o;
    o.tol_grad = 1e-6;
    o.max_iters = 20000;
    return o;
}

} // namespace

TEST_CASE("limit-data minimization recovers the soliton")
{
    const auto& st = testing::planar_state();
    auto grid = make_radial_grid(2, 14.0, 1401);
    EnergyModel<RadialGrid> m(grid, st.params, CoefficientProfile::zero(),
                              CoefficientProfile::zero());
    const auto res = minimize(m, soliton_seed(grid, st), quick_opts());
    CHECK(res.converged);
    CHECK(std::abs(res.m - st.level) < 1e-3 * st.level);
    double sup = 0.0;
    for (std::size_t i = 0; i < res.u.size(); ++i)
        sup = std::max(sup, std::abs(res.u.v[i] - st.sample(grid->r(i))));
    CHECK(sup < 1e-2);
    CHECK(res.pde_residual < 10.0 * quick_opts().tol_grad);
    CHECK(std::abs(res.nehari_res) < 1e-8 * h_norm_sq(res.u, 1.0));
    CHECK(res.m > 0.0);
}

TEST_CASE("a nonlinear enhancement strictly lowers the level")
{
    // b bump at the origin, lambda = 0: the minimum sits strictly below the
    // limit level
    const auto& st = testing::planar_state();
    ProblemParams par = st.params;
    auto grid = make_radial_grid(2, 14.0, 1401);
    EnergyModel<RadialGrid> m(grid, par, CoefficientProfile::zero(),
                              CoefficientProfile::compact_bump(1.0, 2.0));
    const auto res = minimize(m, soliton_seed(grid, st), quick_opts());
    CHECK(res.converged);
    CHECK(res.m < st.level - 0.05 * st.level);
}

TEST_CASE("pde residual: solutions vs scaled non-solutions")
{
    const auto& st = testing::planar_state();
    EnergyModel<RadialGrid> m(st.w.grid, st.params, CoefficientProfile::zero(),
                              CoefficientProfile::zero());
    CHECK(m.pde_residual(st.w) < 1e-9);
    RadialField two = st.w;
    for (double& x : two.v) x *= 2.0;
    CHECK(m.pde_residual(two) > 0.1);
    CHECK_THROWS_AS(m.pde_residual(m.make_field()), std::domain_error);
}

TEST_CASE("monotone energy descent along the iteration")
{
    const auto& st = testing::planar_state();
    auto grid = make_radial_grid(2, 10.0, 501);
    EnergyModel<RadialGrid> m(grid, st.params, CoefficientProfile::compact_bump(1.0, 1.0),
                              CoefficientProfile::zero());
    std::ostringstream trace;
    SolverOptions opts = quick_opts();
    opts.trace = &trace;
    opts.max_iters = 400;
    (void)minimize(m, gaussian_seed(grid, {0.0, 0.0, 0.0}, 1.5), opts);

    std::istringstream in(trace.str());
    std::string line;
    double prev = 1e300;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        const double e = std::stod(line.substr(line.find(',') + 1));
        CHECK(e <= prev + 1e-10 * std::abs(prev));
        prev = e;
        ++rows;
    }
    CHECK(rows > 10);
}

TEST_CASE("positivity and single-signedness of converged minimizers")
{
    const auto& st = testing::planar_state();
    auto grid = make_radial_grid(2, 12.0, 601);
    EnergyModel<RadialGrid> m(grid, st.params, CoefficientProfile::zero(),
                              CoefficientProfile::compact_bump(0.5, 1.0));
    SolverOptions opts = quick_opts();
    opts.positivity = true;
    const auto res = minimize(m, soliton_seed(grid, st), opts);
    CHECK(res.converged);
    for (double x : res.u.v) CHECK(x >= 0.0);

    // without the positivity projection the minimizer keeps a single sign
    opts.positivity = false;
    const auto res2 = minimize(m, soliton_seed(grid, st), opts);
    CHECK(res2.converged);
    double lo = 1e300, hi = -1e300;
    for (double x : res2.u.v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    CHECK(lo * hi >= -1e-6 * hi * hi);
}

TEST_CASE("identical inputs give identical iterates")
{
    const auto& st = testing::planar_state();
    auto grid = make_radial_grid(2, 10.0, 401);
    EnergyModel<RadialGrid> m(grid, st.params, CoefficientProfile::compact_bump(1.0, 1.0),
                              CoefficientProfile::exponential(0.5, 1.0));
    const auto r1 = minimize(m, soliton_seed(grid, st), quick_opts());
    const auto r2 = minimize(m, soliton_seed(grid, st), quick_opts());
    CHECK(r1.iterations == r2.iterations);
    CHECK(r1.m == r2.m);
    for (std::size_t i = 0; i < r1.u.size(); ++i) CHECK(r1.u.v[i] == r2.u.v[i]);
}

TEST_CASE("zero seed is rejected, blowup is thrown")
{
    const auto& st = testing::planar_state();
    auto grid = make_radial_grid(2, 10.0, 401);
    EnergyModel<RadialGrid> m(grid, st.params, CoefficientProfile::zero(),
                              CoefficientProfile::zero());
    CHECK_THROWS_AS(minimize(m, m.make_field(), quick_opts()), std::invalid_argument);
    (void)st;
}

TEST_CASE("escape diagnosis from box ladders")
{
    // localized: stable level, interior mass
    {
        const BoxLevel ladder[] = {{10.0, 4.0, 1e-6}, {14.0, 4.0001, 1e-7}};
        const auto d = detect_escape(ladder, 5.8, 0.1);
        CHECK(d.kind == EscapeKind::localized);
    }
    // escaping via shell mass
    {
        const BoxLevel ladder[] = {{10.0, 5.7, 0.02}, {14.0, 5.75, 0.25}};
        const auto d = detect_escape(ladder, 5.8, 0.1);
        CHECK(d.kind == EscapeKind::escaping);
    }
    // escaping via level approach to the limit level
    {
        const BoxLevel ladder[] = {{10.0, 5.60, 1e-5}, {14.0, 5.78, 1e-5}};
        const auto d = detect_escape(ladder, 5.8, 0.1);
        CHECK(d.kind == EscapeKind::escaping);
    }
    // a single box is inconclusive
    {
        const BoxLevel ladder[] = {{10.0, 5.0, 1e-4}};
        const auto d = detect_escape(ladder, 5.8, 0.1);
        CHECK(d.kind == EscapeKind::inconclusive);
    }
    // extrapolation across three boxes
    {
        const BoxLevel ladder[] = {{8.0, 5.0, 1e-5}, {12.0, 5.4, 1e-5}, {16.0, 5.6, 1e-5}};
        const auto d = detect_escape(ladder, 5.8, 0.1);
        CHECK(d.extrapolated_m == doctest::Approx(5.8).epsilon(0.01));
    }
}

TEST_CASE("box minimization reproduces the limit level and a centered barycenter")
{
    const auto& st = testing::planar_state();
    auto box = make_box_grid_spacing(2, 8.0, 0.25);
    EnergyModel<BoxGrid> m(box, st.params, CoefficientProfile::zero(),
                           CoefficientProfile::zero());
    SolverOptions opts = quick_opts();
    opts.tol_grad = 1e-5;
    const auto res = minimize(m, soliton_seed(box, st), opts);
    CHECK(res.converged);
    CHECK(std::abs(res.m - st.level) < 0.02 * st.level); // coarse-grid bias allowed
    CHECK(std::abs(res.barycenter[0]) < box->spacing());
    CHECK(std::abs(res.barycenter[1]) < box->spacing());
    CHECK(res.boundary_mass < 1e-6);
    CHECK(res.decay_rate > 0.9);
}
