#include "nehari/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nehari {

using ordered_json = nlohmann::ordered_json;

SolverOptions SolverConfig::options() const
{
    SolverOptions o;
    o.max_iters = max_iters;
    o.step = step;
    o.tol_grad = tol_grad;
    o.armijo_c = armijo_c;
    o.backtrack = backtrack;
    o.max_backtracks = max_backtracks;
    o.positivity = positivity;
    return o;
}

namespace {

CoefficientProfile profile_from_json(const ordered_json& j)
{
    CoefficientProfile p;
    p.family = family_from_name(j.value("family", "zero"));
    p.amplitude = j.value("amplitude", 0.0);
    p.rate = j.value("rate", 0.0);
    p.power = j.value("power", 0.0);
    p.radius = j.value("radius", 1.0);
    p.validate();
    return p;
}

ordered_json profile_to_json(const CoefficientProfile& p)
{
    return ordered_json{{"family", family_name(p.family)},
                        {"amplitude", p.amplitude},
                        {"rate", p.rate},
                        {"power", p.power},
                        {"radius", p.radius}};
}

template <class T>
std::vector<T> vec_from_json(const ordered_json& j)
{
    std::vector<T> out;
    for (const auto& x : j) out.push_back(x.get<T>());
    return out;
}

std::array<double, 3> point_from_json(const ordered_json& j)
{
    std::array<double, 3> p{0.0, 0.0, 0.0};
    std::size_t k = 0;
    for (const auto& x : j) {
        if (k >= 3) break;
        p[k++] = x.get<double>();
    }
    return p;
}

} // namespace

RunConfig parse_config(const std::string& json_text)
{
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig cfg;
    try {
        if (j.contains("problem")) {
            const auto& p = j["problem"];
            cfg.problem.dim = p.value("dim", 2);
            cfg.problem.p = p.value("p", 3.0);
            cfg.problem.a_inf = p.value("a_inf", 1.0);
            cfg.problem.b_inf = p.value("b_inf", 1.0);
            cfg.problem.lambda = p.value("lambda", 0.0);
        }
        if (j.contains("coefficients")) {
            const auto& c = j["coefficients"];
            if (c.contains("a")) cfg.a = profile_from_json(c["a"]);
            if (c.contains("b")) cfg.b = profile_from_json(c["b"]);
        }
        cfg.sigma = j.value("sigma", 0.0);
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            cfg.grid.kind = g.value("kind", "radial");
            cfg.grid.r_max = g.value("r_max", 16.0);
            cfg.grid.spacing = g.value("spacing", cfg.grid.kind == "radial" ? 0.01 : 0.25);
            cfg.grid.half_width = g.value("half_width", 12.0);
            if (g.contains("ladder")) cfg.grid.ladder = vec_from_json<double>(g["ladder"]);
        }
        if (j.contains("solver")) {
            const auto& s = j["solver"];
            cfg.solver.max_iters = s.value("max_iters", std::size_t{20000});
            cfg.solver.step = s.value("step", 1.0);
            cfg.solver.tol_grad = s.value("tol_grad", 1e-6);
            cfg.solver.armijo_c = s.value("armijo_c", 1e-4);
            cfg.solver.backtrack = s.value("backtrack", 0.5);
            cfg.solver.max_backtracks = s.value("max_backtracks", std::size_t{40});
            cfg.solver.positivity = s.value("positivity", true);
            cfg.solver.trace = s.value("trace", false);
            if (s.contains("init")) {
                const auto& i = s["init"];
                cfg.solver.init.kind = i.value("kind", "soliton");
                if (i.contains("center")) cfg.solver.init.center = point_from_json(i["center"]);
                cfg.solver.init.width = i.value("width", 1.0);
            }
        }
        if (j.contains("sweep")) {
            const auto& s = j["sweep"];
            if (s.contains("lambdas")) cfg.sweep.lambdas = vec_from_json<double>(s["lambdas"]);
            cfg.sweep.delta = s.value("delta", 0.1);
            cfg.sweep.refine = s.value("refine", true);
        }
        if (j.contains("diagnostics")) {
            const auto& d = j["diagnostics"];
            if (d.contains("y_ladder")) cfg.diagnostics.y_ladder = vec_from_json<double>(d["y_ladder"]);
            if (d.contains("rho_ladder"))
                cfg.diagnostics.rho_ladder = vec_from_json<double>(d["rho_ladder"]);
            cfg.diagnostics.resolution = d.value("resolution", std::size_t{16});
            cfg.diagnostics.s_resolution = d.value("s_resolution", std::size_t{33});
            cfg.diagnostics.penalty_weight = d.value("penalty_weight", 0.0);
            if (d.contains("radial_lambdas"))
                cfg.diagnostics.radial_lambdas = vec_from_json<double>(d["radial_lambdas"]);
            if (d.contains("overlap")) {
                const auto& o = d["overlap"];
                if (o.contains("g")) cfg.diagnostics.overlap.g = profile_from_json(o["g"]);
                if (o.contains("h")) cfg.diagnostics.overlap.h = profile_from_json(o["h"]);
                if (o.contains("z")) cfg.diagnostics.overlap.z = point_from_json(o["z"]);
                if (o.contains("rhos")) cfg.diagnostics.overlap.rhos = vec_from_json<double>(o["rhos"]);
                cfg.diagnostics.overlap.spacing = o.value("spacing", 0.02);
            }
        }
        cfg.output_dir = j.value("output_dir", "out");
        cfg.seed = j.value("seed", 0ul);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void RunConfig::validate() const
{
    try {
        problem.validate();
        a.validate();
        b.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (sigma != 0.0 && !(sigma > 0.0 && sigma < problem.a_inf))
        throw ConfigError("sigma must lie in (0, a_inf)");
    if (grid.kind != "radial" && grid.kind != "box")
        throw ConfigError("grid.kind must be 'radial' or 'box'");
    if (!(grid.spacing > 0.0)) throw ConfigError("grid.spacing must be > 0");
    if (grid.kind == "radial" && !(grid.r_max > 0.0))
        throw ConfigError("grid.r_max must be > 0");
    if (grid.kind == "box") {
        if (problem.dim > 3) throw ConfigError("box grids support dimension <= 3");
        if (!(grid.half_width > 0.0)) throw ConfigError("grid.half_width must be > 0");
        const double nodes = std::pow(2.0 * grid.half_width / grid.spacing + 1.0, problem.dim);
        if (nodes > 2e7) throw ConfigError("box grid exceeds the node budget");
        for (double l : grid.ladder)
            if (!(l > 0.0) || l > grid.half_width + 1e-12)
                throw ConfigError("grid.ladder entries must lie in (0, half_width]");
    }
    if (!(solver.tol_grad > 0.0)) throw ConfigError("solver.tol_grad must be > 0");
    if (!(solver.step > 0.0)) throw ConfigError("solver.step must be > 0");
    if (solver.init.kind != "soliton" && solver.init.kind != "soliton_at" &&
        solver.init.kind != "gaussian")
        throw ConfigError("solver.init.kind must be soliton, soliton_at or gaussian");
    if (!(sweep.delta > 0.0)) throw ConfigError("sweep.delta must be > 0");
    const double box_extent = grid.kind == "box" ? grid.half_width : grid.r_max;
    const double clearance = 4.0 / problem.kappa();
    if (solver.init.kind == "soliton_at") {
        double n2 = 0.0;
        for (double c : solver.init.center) n2 += c * c;
        if (std::sqrt(n2) + clearance > box_extent)
            throw ConfigError("init center violates the domain clearance");
    }
    for (double y : diagnostics.y_ladder)
        if (y < 0.0) throw ConfigError("diagnostics.y_ladder entries must be >= 0");
    for (double r : diagnostics.rho_ladder)
        if (!(r > 0.0)) throw ConfigError("diagnostics.rho_ladder entries must be > 0");
}

std::string serialize_config(const RunConfig& cfg)
{
    ordered_json j;
    j["problem"] = ordered_json{{"dim", cfg.problem.dim},
                                {"p", cfg.problem.p},
                                {"a_inf", cfg.problem.a_inf},
                                {"b_inf", cfg.problem.b_inf},
                                {"lambda", cfg.problem.lambda}};
    j["coefficients"] = ordered_json{{"a", profile_to_json(cfg.a)}, {"b", profile_to_json(cfg.b)}};
    j["sigma"] = cfg.sigma;
    j["grid"] = ordered_json{{"kind", cfg.grid.kind},
                             {"r_max", cfg.grid.r_max},
                             {"spacing", cfg.grid.spacing},
                             {"half_width", cfg.grid.half_width},
                             {"ladder", cfg.grid.ladder}};
    j["solver"] = ordered_json{{"max_iters", cfg.solver.max_iters},
                               {"step", cfg.solver.step},
                               {"tol_grad", cfg.solver.tol_grad},
                               {"armijo_c", cfg.solver.armijo_c},
                               {"backtrack", cfg.solver.backtrack},
                               {"max_backtracks", cfg.solver.max_backtracks},
                               {"positivity", cfg.solver.positivity},
                               {"trace", cfg.solver.trace},
                               {"init", ordered_json{{"kind", cfg.solver.init.kind},
                                                     {"center", cfg.solver.init.center},
                                                     {"width", cfg.solver.init.width}}}};
    j["sweep"] = ordered_json{{"lambdas", cfg.sweep.lambdas},
                              {"delta", cfg.sweep.delta},
                              {"refine", cfg.sweep.refine}};
    j["diagnostics"] =
        ordered_json{{"y_ladder", cfg.diagnostics.y_ladder},
                     {"rho_ladder", cfg.diagnostics.rho_ladder},
                     {"resolution", cfg.diagnostics.resolution},
                     {"s_resolution", cfg.diagnostics.s_resolution},
                     {"penalty_weight", cfg.diagnostics.penalty_weight},
                     {"radial_lambdas", cfg.diagnostics.radial_lambdas},
                     {"overlap", ordered_json{{"g", profile_to_json(cfg.diagnostics.overlap.g)},
                                              {"h", profile_to_json(cfg.diagnostics.overlap.h)},
                                              {"z", cfg.diagnostics.overlap.z},
                                              {"rhos", cfg.diagnostics.overlap.rhos},
                                              {"spacing", cfg.diagnostics.overlap.spacing}}}};
    j["output_dir"] = cfg.output_dir;
    j["seed"] = cfg.seed;
    return j.dump(2);
}

} // namespace nehari
