#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nehari/ground_state.hpp"
#include "nehari/topology.hpp"

using namespace nehari;

// Uniform bounds on the constraint: c_bar <= ||u||_{p+1} <= Cs ||u|| for
// every projected field, with Cs the (empirical) discrete Sobolev constant
// and c_bar derived from it and the coefficient ceiling.
TEST_CASE("uniform constraint norms across a projected corpus")
{
    ProblemParams par;
    par.dim = 2;
    par.p = 3.0;
    par.a_inf = par.b_inf = 1.0;
    auto grid = make_radial_grid(2, 12.0, 601);
    const auto b = CoefficientProfile::exponential(0.5, 1.0);
    EnergyModel<RadialGrid> model(grid, par, CoefficientProfile::compact_bump(1.0, 1.0), b);

    // probe family for the Sobolev ratio: smooth bumps of varied width
    auto rng = testing::test_rng(23);
    std::vector<RadialField> probes;
    for (int k = 0; k < 24; ++k) probes.push_back(testing::random_smooth_field(grid, rng));
    for (double w : {0.4, 0.8, 1.6, 3.2}) probes.push_back(gaussian_seed(grid, {0.0, 0.0, 0.0}, w));

    double cs = 0.0;
    for (const auto& u : probes)
        cs = std::max(cs, lp_norm(u, par.p + 1.0) / std::sqrt(h_norm_sq(u, par.a_inf)));
    CHECK(cs > 0.0);

    const double b_ceiling = par.b_inf + 0.5; // b_inf + max b
    const double c_bar = std::pow(1.0 / (cs * cs * b_ceiling), 1.0 / (par.p - 1.0));
    CHECK(c_bar > 0.0);

    // audit the projected corpus across several couplings
    for (double lambda : {0.0, 1.0, 25.0}) {
        model.set_lambda(lambda);
        for (const auto& u : probes) {
            const auto pr = model.project(u);
            RadialField tu = u;
            for (double& x : tu.v) x *= pr.t;
            const double pnorm = lp_norm(tu, par.p + 1.0);
            const double hnorm = std::sqrt(h_norm_sq(tu, par.a_inf));
            CHECK(pnorm >= c_bar * (1.0 - 1e-12));
            CHECK(pnorm <= cs * hnorm * (1.0 + 1e-12));
        }
    }
}

// The minimum is an infimum: no projected probe beats it.
TEST_CASE("minimized level lower-bounds the projected corpus")
{
    const auto& st = testing::planar_state();
    ProblemParams par = st.params;
    par.lambda = 0.75;
    auto grid = make_radial_grid(2, 12.0, 601);
    EnergyModel<RadialGrid> model(grid, par, CoefficientProfile::compact_bump(1.0, 1.0),
                                  CoefficientProfile::exponential(0.5, 1.0));
    SolverOptions opts;
    opts.tol_grad = 1e-6;
    const auto res = minimize(model, soliton_seed(grid, st), opts);
    REQUIRE(res.converged);

    auto rng = testing::test_rng(29);
    for (int k = 0; k < 30; ++k) {
        const auto v = testing::random_smooth_field(grid, rng);
        CHECK(model.reduced_energy(v) >= res.m - 1e-8 * std::abs(res.m));
    }
    for (double w : {0.5, 1.0, 2.0})
        CHECK(model.reduced_energy(gaussian_seed(grid, {0.0, 0.0, 0.0}, w)) >=
              res.m - 1e-8 * std::abs(res.m));
}

// Single-bump slices of the interpolation surface sit where they were put:
// the barycenter of the projected bump at rho z is rho z up to the mesh.
TEST_CASE("surface slices carry their centers")
{
    const auto& st = testing::planar_state();
    ProblemParams par = st.params;
    par.lambda = 0.5;
    auto box = make_box_grid_spacing(2, 9.0, 0.25);
    EnergyModel<BoxGrid> model(box, par, CoefficientProfile::exponential(1.0, 3.2),
                               CoefficientProfile::compact_bump(1.0, 1.0));
    const double rho = 1.5;
    for (const std::array<double, 3> z :
         {std::array<double, 3>{3.0, 0.0, 0.0}, std::array<double, 3>{-1.0, 0.0, 0.0},
          std::array<double, 3>{1.0, 2.0, 0.0}}) {
        BoxField bump(box);
        for (std::size_t i = 0; i < bump.size(); ++i) {
            if (box->on_boundary(i)) continue;
            const auto x = box->point(i);
            const double dx = x[0] - rho * z[0], dy = x[1] - rho * z[1];
            bump.v[i] = st.sample_unit(std::hypot(dx, dy));
        }
        const auto pr = model.project(bump);
        for (double& x : bump.v) x *= pr.t;
        const auto beta = barycenter_point(bump);
        CHECK(std::abs(beta[0] - rho * z[0]) <= 2.0 * box->spacing());
        CHECK(std::abs(beta[1] - rho * z[1]) <= 2.0 * box->spacing());
    }
}
