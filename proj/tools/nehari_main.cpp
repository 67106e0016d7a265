#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <json.hpp>

#include "nehari/config.hpp"
#include "nehari/reports.hpp"
#include "nehari/sweep.hpp"
#include "nehari/topology.hpp"
#include "nehari/version.hpp"

namespace fs = std::filesystem;
using nehari::CoefficientProfile;
using nehari::ProblemParams;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_solver = 2;
constexpr int exit_invariant = 3;

struct RunContext {
    nehari::RunConfig cfg;
    fs::path out;
    nehari::RunManifest manifest;
    bool json_stdout = false;

    void note_file(const fs::path& p) { manifest.files.push_back(p.filename().string()); }
    void task(const std::string& name, const std::string& status)
    {
        manifest.tasks.emplace_back(name, status);
    }
    void finish()
    {
        manifest.finished = nehari::iso_timestamp();
        nehari::write_manifest((out / "manifest.json").string(), manifest);
    }
    void emit(const ordered_json& summary, const std::string& filename)
    {
        nehari::write_text_file((out / filename).string(), summary.dump(2) + "\n");
        note_file(out / filename);
        if (json_stdout) std::cout << summary.dump(2) << std::endl;
    }
};

RunContext make_context(const std::string& config_path, const std::string& out_override,
                        bool json_stdout)
{
    RunContext ctx;
    ctx.cfg = nehari::load_config(config_path);
    ctx.json_stdout = json_stdout;
    ctx.out = out_override.empty() ? fs::path(ctx.cfg.output_dir) : fs::path(out_override);
    fs::create_directories(ctx.out);
    ctx.manifest.config_echo = nehari::serialize_config(ctx.cfg);
    ctx.manifest.version = nehari::version_string;
    ctx.manifest.started = nehari::iso_timestamp();
    return ctx;
}

std::shared_ptr<const nehari::RadialGrid> radial_grid_of(const nehari::RunConfig& cfg)
{
    const auto& g = cfg.grid;
    const double r_max = g.kind == "radial"
                             ? g.r_max
                             : g.half_width * std::sqrt(double(cfg.problem.dim)) +
                                   6.0 / cfg.problem.kappa();
    const double sp = g.kind == "radial" ? g.spacing : std::min(0.02, g.spacing / 4.0);
    const auto nodes = static_cast<std::size_t>(std::ceil(r_max / sp)) + 1;
    return nehari::make_radial_grid(cfg.problem.dim, r_max, nodes);
}

std::vector<std::shared_ptr<const nehari::BoxGrid>> box_ladder_of(const nehari::RunConfig& cfg)
{
    std::vector<std::shared_ptr<const nehari::BoxGrid>> out;
    std::vector<double> widths = cfg.grid.ladder;
    if (widths.empty()) widths = {0.75 * cfg.grid.half_width, cfg.grid.half_width};
    for (double L : widths)
        out.push_back(nehari::make_box_grid_spacing(cfg.problem.dim, L, cfg.grid.spacing));
    return out;
}

ordered_json breakdown_to_json(const nehari::EnergyBreakdown& e)
{
    return ordered_json{{"kinetic", e.kinetic},     {"mass_inf", e.mass_inf},
                        {"mass_a", e.mass_a},       {"nonlin_inf", e.nonlin_inf},
                        {"nonlin_b", e.nonlin_b},   {"q_lambda", e.q_lambda},
                        {"b_total", e.b_total}};
}

ordered_json limit_to_json(const nehari::LimitGroundState& st)
{
    return ordered_json{{"m_inf", st.level},
                        {"peak", st.peak},
                        {"shoot_param", st.shoot_param},
                        {"decay_rate", st.decay_rate},
                        {"decay_coeff", st.decay_coeff},
                        {"unit_coupling", st.unit_coupling},
                        {"pde_residual", st.residual}};
}

void write_radial_profile(RunContext& ctx, const nehari::RadialField& f,
                          const std::string& name)
{
    nehari::CsvTable t;
    t.header = {"index", "r", "value"};
    for (std::size_t i = 0; i < f.size(); ++i)
        t.rows.push_back({double(i), f.grid->r(i), f.v[i]});
    nehari::write_csv((ctx.out / name).string(), t);
    ctx.note_file(ctx.out / name);
}

int cmd_limit(RunContext& ctx)
{
    auto grid = radial_grid_of(ctx.cfg);
    auto st = nehari::solve_limit(ctx.cfg.problem, grid);
    write_radial_profile(ctx, st.w, "limit_profile.csv");
    {
        std::vector<double> r(st.w.size()), lw(st.w.size());
        for (std::size_t i = 0; i < st.w.size(); ++i) {
            r[i] = st.w.grid->r(i);
            lw[i] = st.w.v[i] > 0.0 ? std::log(st.w.v[i]) : 0.0;
        }
        nehari::write_plot_data((ctx.out / "plot_decay.dat").string(), r, lw);
        ctx.note_file(ctx.out / "plot_decay.dat");
    }
    ctx.emit(limit_to_json(st), "limit_summary.json");
    ctx.task("limit", "done");
    return exit_ok;
}

int cmd_solve(RunContext& ctx)
{
    const auto& cfg = ctx.cfg;
    auto limit_grid = radial_grid_of(cfg);
    auto st = nehari::solve_limit(cfg.problem, limit_grid);

    nehari::SolverOptions opts = cfg.solver.options();
    std::ofstream trace;
    if (cfg.solver.trace) {
        const fs::path path = ctx.out / "solve_trace.csv";
        trace.open(path, std::ios::binary);
        trace << "iter,energy,grad_norm,barycenter_norm,boundary_mass\n";
        opts.trace = &trace;
        ctx.note_file(path);
    }
    ordered_json summary;
    bool converged = false;

    if (cfg.grid.kind == "radial") {
        auto grid = nehari::make_radial_grid(
            cfg.problem.dim, cfg.grid.r_max,
            static_cast<std::size_t>(std::ceil(cfg.grid.r_max / cfg.grid.spacing)) + 1);
        nehari::EnergyModel<nehari::RadialGrid> model(grid, cfg.problem, cfg.a, cfg.b);
        nehari::RadialField init;
        if (cfg.solver.init.kind == "gaussian")
            init = nehari::gaussian_seed(grid, cfg.solver.init.center, cfg.solver.init.width);
        else
            init = nehari::soliton_seed(grid, st);
        auto res = nehari::minimize(model, init, opts);
        converged = res.converged;
        write_radial_profile(ctx, res.u, "solve_profile.csv");
        summary = ordered_json{{"m", res.m},
                               {"converged", res.converged},
                               {"iterations", res.iterations},
                               {"grad_norm", res.grad_norm},
                               {"pde_residual", res.pde_residual},
                               {"nehari_residual", res.nehari_res},
                               {"boundary_mass", res.boundary_mass},
                               {"decay_rate", res.decay_rate},
                               {"energy_breakdown", breakdown_to_json(model.breakdown(res.u))},
                               {"m_inf", st.level}};
    } else {
        auto grid = nehari::make_box_grid_spacing(cfg.problem.dim, cfg.grid.half_width,
                                                  cfg.grid.spacing);
        nehari::EnergyModel<nehari::BoxGrid> model(grid, cfg.problem, cfg.a, cfg.b);
        nehari::BoxField init;
        if (cfg.solver.init.kind == "gaussian")
            init = nehari::gaussian_seed(grid, cfg.solver.init.center, cfg.solver.init.width);
        else if (cfg.solver.init.kind == "soliton_at")
            init = nehari::soliton_seed(grid, st, cfg.solver.init.center);
        else
            init = nehari::soliton_seed(grid, st);
        auto res = nehari::minimize(model, init, opts);
        converged = res.converged;
        nehari::CsvTable t;
        t.header = {"index", "x", "y", "z", "value"};
        for (std::size_t i = 0; i < res.u.size(); ++i) {
            const auto x = grid->point(i);
            t.rows.push_back({double(i), x[0], x[1], x[2], res.u.v[i]});
        }
        nehari::write_csv((ctx.out / "solve_profile.csv").string(), t);
        ctx.note_file(ctx.out / "solve_profile.csv");
        summary = ordered_json{{"m", res.m},
                               {"converged", res.converged},
                               {"iterations", res.iterations},
                               {"grad_norm", res.grad_norm},
                               {"pde_residual", res.pde_residual},
                               {"nehari_residual", res.nehari_res},
                               {"boundary_mass", res.boundary_mass},
                               {"decay_rate", res.decay_rate},
                               {"barycenter", res.barycenter},
                               {"energy_breakdown", breakdown_to_json(model.breakdown(res.u))},
                               {"m_inf", st.level}};
    }
    ctx.emit(summary, "solve_summary.json");
    ctx.task("solve", converged ? "done" : "not_converged");
    return converged ? exit_ok : exit_solver;
}

int cmd_sweep(RunContext& ctx)
{
    const auto& cfg = ctx.cfg;
    if (cfg.grid.kind != "box")
        throw nehari::ConfigError("sweep requires a box grid (escape detection)");
    nehari::SweepEngine engine(cfg.problem, cfg.a, cfg.b, box_ladder_of(cfg),
                               cfg.solver.options(), cfg.sweep.delta);
    auto sweep = engine.run(cfg.sweep.lambdas);

    nehari::CsvTable t;
    t.header = {"lambda", "m_lambda", "escape_flag", "boundary_mass", "iterations"};
    for (const auto& e : sweep.entries)
        t.rows.push_back({e.lambda, e.m, double(static_cast<int>(e.escape)), e.boundary_mass,
                          double(e.iterations)});
    nehari::write_csv((ctx.out / "sweep.csv").string(), t);
    ctx.note_file(ctx.out / "sweep.csv");
    nehari::write_plot_data((ctx.out / "plot_m_lambda.dat").string(), sweep.lambdas(),
                            sweep.m_values());
    ctx.note_file(ctx.out / "plot_m_lambda.dat");

    ordered_json summary{{"m_inf", sweep.m_inf},
                         {"delta_h", sweep.delta_h},
                         {"monotone_ok", sweep.monotone_ok},
                         {"max_backward_jump", sweep.max_backward_jump},
                         {"continuity_modulus", sweep.continuity_modulus},
                         {"lambda_star",
                          ordered_json{{"observed", sweep.lambda_star.observed},
                                       {"value", sweep.lambda_star.value},
                                       {"lambda_max", sweep.lambda_star.lambda_max},
                                       {"persistent", sweep.lambda_star.persistent}}}};
    bool all_converged = true;
    for (const auto& e : sweep.entries) all_converged = all_converged && e.converged;
    ctx.manifest.delta_h = sweep.delta_h;
    ctx.emit(summary, "sweep_summary.json");
    ctx.task("sweep", all_converged ? "done" : "entries_not_converged");
    return all_converged ? exit_ok : exit_solver;
}

int cmd_hypotheses(RunContext& ctx)
{
    const auto& cfg = ctx.cfg;
    const auto rep =
        nehari::classify_hypotheses(cfg.a, cfg.b, cfg.problem, cfg.sigma_value());
    const auto num = [](double x) {
        return std::isfinite(x) ? ordered_json(x) : ordered_json("inf");
    };
    ordered_json summary{{"h1", rep.h1},     {"h2", rep.h2},
                         {"h3", rep.h3},     {"h4", rep.h4},
                         {"h5", rep.h5},     {"alpha", num(rep.alpha)},
                         {"beta", num(rep.beta)}, {"sigma", rep.sigma},
                         {"regime", nehari::regime_name(rep.regime)}};
    ctx.emit(summary, "hypotheses.json");
    ctx.task("hypotheses", "done");
    return exit_ok;
}

int cmd_diagnose(RunContext& ctx)
{
    const auto& cfg = ctx.cfg;
    if (cfg.grid.kind != "box")
        throw nehari::ConfigError("diagnose requires a box grid");
    auto limit = nehari::solve_limit(cfg.problem, radial_grid_of(cfg));
    auto box = nehari::make_box_grid_spacing(cfg.problem.dim, cfg.grid.half_width,
                                             cfg.grid.spacing);
    nehari::EnergyModel<nehari::BoxGrid> model(box, cfg.problem, cfg.a, cfg.b);
    const auto opts = cfg.solver.options();

    // translated bump energies
    {
        nehari::CsvTable t;
        t.header = {"y", "t", "energy", "competition"};
        for (double y : cfg.diagnostics.y_ladder) {
            auto probe = nehari::translated_bump_energy(model, limit, {y, 0.0, 0.0});
            t.rows.push_back({y, probe.t, probe.energy, probe.competition});
        }
        nehari::write_csv((ctx.out / "bump_energy.csv").string(), t);
        ctx.note_file(ctx.out / "bump_energy.csv");
        ctx.task("bump_energy", "done");
    }

    // interaction ladder and its decay fit
    nehari::InteractionFit ifit;
    {
        ifit = nehari::interaction_ladder(box, limit, cfg.diagnostics.rho_ladder,
                                          {-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
        nehari::CsvTable t;
        t.header = {"rho", "epsilon", "epsilon_swapped"};
        std::vector<double> xs, ys;
        for (const auto& s : ifit.samples) {
            t.rows.push_back({s.rho, s.eps, s.eps_swapped});
            xs.push_back(s.rho);
            ys.push_back(std::log(std::max(s.eps, 1e-300)));
        }
        nehari::write_csv((ctx.out / "interaction.csv").string(), t);
        ctx.note_file(ctx.out / "interaction.csv");
        nehari::write_plot_data((ctx.out / "plot_interaction.dat").string(), xs, ys);
        ctx.note_file(ctx.out / "plot_interaction.dat");
        ctx.task("interaction", "done");
    }

    // two-bump surface levels at the largest admissible rho of the ladder
    nehari::PsiSurfaceReport psi{};
    bool have_psi = false;
    {
        const double clearance = 4.0 / cfg.problem.kappa();
        double rho_best = 0.0;
        for (double rho : cfg.diagnostics.rho_ladder)
            if (3.0 * rho + clearance <= cfg.grid.half_width) rho_best = std::max(rho_best, rho);
        if (rho_best > 0.0) {
            psi = nehari::psi_surface(model, limit, rho_best, {1.0, 0.0, 0.0},
                                      cfg.diagnostics.resolution, cfg.diagnostics.s_resolution,
                                      opts);
            const double weight = cfg.diagnostics.penalty_weight > 0.0
                                      ? cfg.diagnostics.penalty_weight
                                      : 10.0 * limit.level /
                                            (cfg.grid.half_width * cfg.grid.half_width);
            auto b0c = nehari::estimate_b0(model, limit, weight, opts, nehari::B0Init::centered);
            auto b0t = nehari::estimate_b0(model, limit, weight, opts, nehari::B0Init::two_bump,
                                           rho_best);
            psi.b0_estimate = std::min(b0c.value, b0t.value);
            have_psi = true;
            ctx.task("psi_surface", "done");
        } else {
            ctx.task("psi_surface", "skipped_no_clearance");
        }
    }

    // radial levels
    std::vector<double> radial_ms;
    {
        auto rgrid = radial_grid_of(cfg);
        radial_ms = nehari::radial_level(cfg.problem, cfg.a, cfg.b, rgrid, limit,
                                         cfg.diagnostics.radial_lambdas, opts);
        nehari::CsvTable t;
        t.header = {"lambda", "m_radial"};
        std::vector<double> ls = cfg.diagnostics.radial_lambdas;
        std::sort(ls.begin(), ls.end());
        for (std::size_t i = 0; i < radial_ms.size(); ++i)
            t.rows.push_back({ls[i], radial_ms[i]});
        nehari::write_csv((ctx.out / "radial_level.csv").string(), t);
        ctx.note_file(ctx.out / "radial_level.csv");
        ctx.task("radial_level", "done");
    }

    // overlap limit check
    {
        const auto& o = cfg.diagnostics.overlap;
        auto samples = nehari::check_overlap_lemma(o.g, o.h, o.z, o.rhos, cfg.problem.dim,
                                                   o.spacing);
        nehari::CsvTable t;
        t.header = {"rho", "lhs", "rhs", "ratio"};
        for (const auto& s : samples) t.rows.push_back({s.rho, s.lhs, s.rhs, s.ratio});
        nehari::write_csv((ctx.out / "overlap.csv").string(), t);
        ctx.note_file(ctx.out / "overlap.csv");
        ctx.task("overlap", "done");
    }

    ordered_json summary{{"m_inf", limit.level},
                         {"interaction_rate", ifit.rate},
                         {"interaction_power", ifit.power}};
    if (have_psi) {
        summary["psi_surface"] = ordered_json{{"rho", psi.rho},
                                              {"epsilon_rho", psi.epsilon_rho},
                                              {"s_rho", psi.s_rho},
                                              {"t_rho", psi.t_rho},
                                              {"b0_estimate", psi.b0_estimate},
                                              {"b0_note", "heuristic upper estimate"},
                                              {"two_m_inf", psi.two_m_inf}};
    }
    summary["radial_levels"] = radial_ms;
    ctx.emit(summary, "diagnose_summary.json");
    return exit_ok;
}

// Built-in invariant battery; exit 3 on any violation.
int cmd_verify(RunContext& ctx)
{
    const auto& cfg = ctx.cfg;
    std::vector<std::string> failures;
    const auto check = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
        std::fprintf(stderr, "[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    };

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(0.1, 1.0);

    // quadrature linearity and constant exactness
    {
        auto grid = nehari::make_radial_grid(cfg.problem.dim, 10.0, 401);
        nehari::RadialField f(grid), g(grid);
        for (std::size_t i = 0; i < f.size(); ++i) {
            f.v[i] = unif(rng);
            g.v[i] = unif(rng);
        }
        nehari::RadialField lin(grid);
        for (std::size_t i = 0; i < f.size(); ++i) lin.v[i] = 2.0 * f.v[i] - 3.0 * g.v[i];
        const double lhs = nehari::integrate(lin);
        const double rhs = 2.0 * nehari::integrate(f) - 3.0 * nehari::integrate(g);
        check(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)), "quadrature linearity");
    }

    // projection homogeneity and reduced-energy scale invariance
    {
        auto grid = nehari::make_radial_grid(cfg.problem.dim, 10.0, 301);
        nehari::EnergyModel<nehari::RadialGrid> model(grid, cfg.problem, cfg.a, cfg.b);
        bool ok_t = true, ok_re = true;
        for (int k = 0; k < 20; ++k) {
            nehari::RadialField u(grid);
            for (std::size_t i = 0; i + 1 < u.size(); ++i) u.v[i] = unif(rng);
            const double c = std::exp(std::uniform_real_distribution<double>(-3.0, 3.0)(rng));
            nehari::RadialField cu(grid);
            for (std::size_t i = 0; i < u.size(); ++i) cu.v[i] = c * u.v[i];
            const double t1 = model.project(u).t;
            const double t2 = model.project(cu).t;
            ok_t = ok_t && std::abs(t2 - t1 / c) <= 1e-12 * std::abs(t1 / c);
            const double r1 = model.reduced_energy(u);
            const double r2 = model.reduced_energy(cu);
            ok_re = ok_re && std::abs(r2 - r1) <= 1e-12 * std::abs(r1);
        }
        check(ok_t, "projection homogeneity t(cu) = t(u)/c");
        check(ok_re, "reduced energy 0-homogeneity");
    }

    // limit problem oracle at N=1
    {
        ProblemParams par;
        par.dim = 1;
        par.p = 3.0;
        par.a_inf = par.b_inf = 1.0;
        auto st = nehari::solve_limit(par, nehari::make_radial_grid(1, 20.0, 2001));
        check(std::abs(st.level - 4.0 / 3.0) <= 1e-3 * (4.0 / 3.0), "sech soliton level 4/3");
        check(std::abs(st.peak - std::sqrt(2.0)) <= 1e-3, "sech soliton peak sqrt(2)");
    }

    // barycenter translation equivariance
    {
        auto box = nehari::make_box_grid_spacing(2, 6.0, 0.25);
        nehari::BoxField u(box);
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (box->on_boundary(i)) continue;
            const auto x = box->point(i);
            const double r2 = x[0] * x[0] + x[1] * x[1];
            u.v[i] = std::exp(-r2);
        }
        const auto b0 = nehari::barycenter_point(u);
        nehari::BoxField uz(box);
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (box->on_boundary(i)) continue;
            const auto x = box->point(i);
            const double dx = x[0] - 1.0, dy = x[1] + 0.5;
            uz.v[i] = std::exp(-(dx * dx + dy * dy));
        }
        const auto bz = nehari::barycenter_point(uz);
        check(std::abs(bz[0] - b0[0] - 1.0) <= box->spacing() &&
                  std::abs(bz[1] - b0[1] + 0.5) <= box->spacing(),
              "barycenter translation equivariance");
    }

    ordered_json summary{{"failures", failures}, {"checks_failed", failures.size()}};
    ctx.emit(summary, "verify_summary.json");
    ctx.task("verify", failures.empty() ? "done" : "violations");
    return failures.empty() ? exit_ok : exit_invariant;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ground-state levels and diagnostics for competing-potential "
                 "semilinear problems"};
    app.set_version_flag("--version", nehari::version_string);
    app.require_subcommand(1);

    std::string config_path, out_override;
    bool json_stdout = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "JSON run configuration")->required();
        sub->add_option("-o,--output-dir", out_override, "override the config output directory");
        sub->add_flag("--json", json_stdout, "print the summary JSON to stdout");
    };

    auto* limit = app.add_subcommand("limit", "solve the constant-coefficient limit problem");
    auto* solve = app.add_subcommand("solve", "single constrained minimization");
    auto* sweep = app.add_subcommand("sweep", "trace the level across a lambda ladder");
    auto* diagnose = app.add_subcommand("diagnose", "topology and asymptotics battery");
    auto* hypotheses = app.add_subcommand("hypotheses", "classify the coefficient pair");
    auto* verify = app.add_subcommand("verify", "run the built-in invariant battery");
    for (auto* sub : {limit, solve, sweep, diagnose, hypotheses, verify}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        RunContext ctx = make_context(config_path, out_override, json_stdout);
        int rc = exit_ok;
        if (limit->parsed()) rc = cmd_limit(ctx);
        else if (solve->parsed()) rc = cmd_solve(ctx);
        else if (sweep->parsed()) rc = cmd_sweep(ctx);
        else if (diagnose->parsed()) rc = cmd_diagnose(ctx);
        else if (hypotheses->parsed()) rc = cmd_hypotheses(ctx);
        else if (verify->parsed()) rc = cmd_verify(ctx);
        ctx.finish();
        return rc;
    } catch (const nehari::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return exit_config;
    } catch (const nehari::SolveError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return exit_solver;
    } catch (const nehari::BlowupError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return exit_solver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
}
