#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nehari/coefficients.hpp"
#include "nehari/ground_state.hpp"

namespace nehari {

/// Configuration error distinct from solver failures; maps to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridConfig {
    std::string kind = "radial"; ///< "radial" or "box"
    double r_max = 16.0;
    double spacing = 0.01;       ///< radial mesh width or box spacing
    double half_width = 12.0;
    std::vector<double> ladder;  ///< box half-width ladder (escape studies)
};

struct InitConfig {
    std::string kind = "soliton"; ///< soliton | soliton_at | gaussian
    std::array<double, 3> center{0.0, 0.0, 0.0};
    double width = 1.0;
};

struct SolverConfig {
    std::size_t max_iters = 20000;
    double step = 1.0;
    double tol_grad = 1e-6;
    double armijo_c = 1e-4;
    double backtrack = 0.5;
    std::size_t max_backtracks = 40;
    bool positivity = true;
    bool trace = false; ///< stream the iteration trace CSV from `solve`
    InitConfig init;

    SolverOptions options() const;
};

struct SweepConfig {
    std::vector<double> lambdas{0.25, 1.0, 4.0, 16.0};
    double delta = 0.1;
    bool refine = true;
};

struct OverlapConfig {
    CoefficientProfile g = CoefficientProfile::exponential(1.0, 1.0);
    CoefficientProfile h = CoefficientProfile::compact_bump(1.0, 1.0);
    std::array<double, 3> z{1.0, 0.0, 0.0};
    std::vector<double> rhos{6.0, 9.0, 12.0};
    double spacing = 0.02;
};

struct DiagnosticsConfig {
    std::vector<double> y_ladder{2.0, 4.0, 6.0, 8.0};
    std::vector<double> rho_ladder{2.0, 2.5, 3.0, 3.5};
    std::size_t resolution = 16;   ///< sphere-section samples
    std::size_t s_resolution = 33; ///< interpolation samples
    double penalty_weight = 0.0;   ///< 0 selects 10 m_inf / L^2
    std::vector<double> radial_lambdas{1.0, 10.0, 100.0, 1000.0};
    OverlapConfig overlap;
};

struct RunConfig {
    ProblemParams problem;
    CoefficientProfile a;
    CoefficientProfile b;
    double sigma = 0.0; ///< 0 selects a_inf/2
    GridConfig grid;
    SolverConfig solver;
    SweepConfig sweep;
    DiagnosticsConfig diagnostics;
    std::string output_dir = "out";
    unsigned long seed = 0;

    void validate() const;
    double sigma_value() const { return sigma > 0.0 ? sigma : 0.5 * problem.a_inf; }
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

} // namespace nehari
