#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nehari/config.hpp"
#include "nehari/sweep.hpp"
#include "nehari/topology.hpp"
#include "nehari/version.hpp"

namespace py = pybind11;
using namespace nehari;

namespace {

template <class G>
void bind_field(py::module_& m, const char* name)
{
    py::class_<Field<G>>(m, name)
        .def_property_readonly("values", [](const Field<G>& f) { return f.v; })
        .def("set_values",
             [](Field<G>& f, const std::vector<double>& v) {
                 if (v.size() != f.v.size()) throw std::invalid_argument("size mismatch");
                 f.v = v;
             })
        .def("__len__", [](const Field<G>& f) { return f.v.size(); });
}

template <class G>
void bind_model(py::module_& m, const char* model_name, const char* result_name)
{
    py::class_<EnergyModel<G>>(m, model_name)
        .def(py::init<std::shared_ptr<const G>, ProblemParams, const CoefficientProfile&,
                      const CoefficientProfile&>(),
             py::arg("grid"), py::arg("params"), py::arg("a"), py::arg("b"))
        .def("set_lambda", &EnergyModel<G>::set_lambda)
        .def("make_field", &EnergyModel<G>::make_field)
        .def("energy", py::overload_cast<const Field<G>&>(&EnergyModel<G>::energy, py::const_))
        .def("breakdown",
             py::overload_cast<const Field<G>&>(&EnergyModel<G>::breakdown, py::const_))
        .def("nehari_residual", py::overload_cast<const Field<G>&>(
                                    &EnergyModel<G>::nehari_residual, py::const_))
        .def("project", py::overload_cast<const Field<G>&>(&EnergyModel<G>::project, py::const_))
        .def("reduced_energy", py::overload_cast<const Field<G>&>(
                                   &EnergyModel<G>::reduced_energy, py::const_))
        .def("gradient", &EnergyModel<G>::gradient)
        .def("pde_residual", &EnergyModel<G>::pde_residual);

    py::class_<GroundStateResult<G>>(m, result_name)
        .def_readonly("u", &GroundStateResult<G>::u)
        .def_readonly("m", &GroundStateResult<G>::m)
        .def_readonly("grad_norm", &GroundStateResult<G>::grad_norm)
        .def_readonly("pde_residual", &GroundStateResult<G>::pde_residual)
        .def_readonly("nehari_residual", &GroundStateResult<G>::nehari_res)
        .def_readonly("iterations", &GroundStateResult<G>::iterations)
        .def_readonly("converged", &GroundStateResult<G>::converged)
        .def_readonly("barycenter", &GroundStateResult<G>::barycenter)
        .def_readonly("boundary_mass", &GroundStateResult<G>::boundary_mass)
        .def_readonly("decay_rate", &GroundStateResult<G>::decay_rate);

    m.def(
        "minimize",
        [](const EnergyModel<G>& model, const Field<G>& init, const SolverOptions& opts) {
            return minimize(model, init, opts);
        },
        py::arg("model"), py::arg("init"), py::arg("options") = SolverOptions{});
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "ground-state levels and diagnostics for competing-potential semilinear "
              "elliptic problems";
    m.attr("__version__") = version_string;

    py::enum_<ProfileFamily>(m, "ProfileFamily")
        .value("zero", ProfileFamily::zero)
        .value("compact_bump", ProfileFamily::compact_bump)
        .value("exponential", ProfileFamily::exponential)
        .value("power_exponential", ProfileFamily::power_exponential);

    py::class_<CoefficientProfile>(m, "CoefficientProfile")
        .def(py::init<>())
        .def_readwrite("family", &CoefficientProfile::family)
        .def_readwrite("amplitude", &CoefficientProfile::amplitude)
        .def_readwrite("rate", &CoefficientProfile::rate)
        .def_readwrite("power", &CoefficientProfile::power)
        .def_readwrite("radius", &CoefficientProfile::radius)
        .def("__call__", &CoefficientProfile::operator())
        .def_static("zero", &CoefficientProfile::zero)
        .def_static("compact_bump", &CoefficientProfile::compact_bump, py::arg("amplitude"),
                    py::arg("radius"))
        .def_static("exponential", &CoefficientProfile::exponential, py::arg("amplitude"),
                    py::arg("rate"))
        .def_static("power_exponential", &CoefficientProfile::power_exponential,
                    py::arg("amplitude"), py::arg("rate"), py::arg("power"));

    m.def("eval_coefficient", &eval_coefficient);

    py::class_<ProblemParams>(m, "ProblemParams")
        .def(py::init<>())
        .def(py::init([](int dim, double p, double a_inf, double b_inf, double lambda) {
                 ProblemParams par;
                 par.dim = dim;
                 par.p = p;
                 par.a_inf = a_inf;
                 par.b_inf = b_inf;
                 par.lambda = lambda;
                 par.validate();
                 return par;
             }),
             py::arg("dim") = 2, py::arg("p") = 3.0, py::arg("a_inf") = 1.0,
             py::arg("b_inf") = 1.0, py::arg("lambda_") = 0.0)
        .def_readwrite("dim", &ProblemParams::dim)
        .def_readwrite("p", &ProblemParams::p)
        .def_readwrite("a_inf", &ProblemParams::a_inf)
        .def_readwrite("b_inf", &ProblemParams::b_inf)
        .def_readwrite("lambda_", &ProblemParams::lambda)
        .def("validate", &ProblemParams::validate)
        .def("kappa", &ProblemParams::kappa);

    py::enum_<Regime>(m, "Regime")
        .value("fast_a", Regime::fast_a)
        .value("slow_a", Regime::slow_a)
        .value("unclassified", Regime::unclassified);

    py::class_<HypothesisReport>(m, "HypothesisReport")
        .def_readonly("h1", &HypothesisReport::h1)
        .def_readonly("h2", &HypothesisReport::h2)
        .def_readonly("h3", &HypothesisReport::h3)
        .def_readonly("h4", &HypothesisReport::h4)
        .def_readonly("h5", &HypothesisReport::h5)
        .def_readonly("alpha", &HypothesisReport::alpha)
        .def_readonly("beta", &HypothesisReport::beta)
        .def_readonly("sigma", &HypothesisReport::sigma)
        .def_readonly("regime", &HypothesisReport::regime);

    m.def("classify_hypotheses", &classify_hypotheses, py::arg("a"), py::arg("b"),
          py::arg("params"), py::arg("sigma"));

    py::class_<RadialGrid, std::shared_ptr<RadialGrid>>(m, "RadialGrid")
        .def_property_readonly("dim", &RadialGrid::dim)
        .def_property_readonly("r_max", &RadialGrid::r_max)
        .def_property_readonly("spacing", &RadialGrid::spacing)
        .def("__len__", &RadialGrid::size)
        .def("r", &RadialGrid::r)
        .def("weight", &RadialGrid::weight);

    py::class_<BoxGrid, std::shared_ptr<BoxGrid>>(m, "BoxGrid")
        .def_property_readonly("dim", &BoxGrid::dim)
        .def_property_readonly("half_width", &BoxGrid::half_width)
        .def_property_readonly("spacing", &BoxGrid::spacing)
        .def_property_readonly("per_axis", &BoxGrid::per_axis)
        .def("__len__", &BoxGrid::size)
        .def("point", &BoxGrid::point)
        .def("weight", &BoxGrid::weight);

    m.def(
        "make_radial_grid",
        [](int dim, double r_max, std::size_t nodes) {
            return std::const_pointer_cast<RadialGrid>(make_radial_grid(dim, r_max, nodes));
        },
        py::arg("dim"), py::arg("r_max"), py::arg("nodes"));
    m.def(
        "make_box_grid",
        [](int dim, double half_width, double spacing) {
            return std::const_pointer_cast<BoxGrid>(
                make_box_grid_spacing(dim, half_width, spacing));
        },
        py::arg("dim"), py::arg("half_width"), py::arg("spacing"));

    bind_field<RadialGrid>(m, "RadialField");
    bind_field<BoxGrid>(m, "BoxField");

    m.def("integrate", [](const RadialField& f) { return integrate(f); });
    m.def("integrate", [](const BoxField& f) { return integrate(f); });
    m.def("lp_norm", [](const RadialField& f, double s) { return lp_norm(f, s); });
    m.def("lp_norm", [](const BoxField& f, double s) { return lp_norm(f, s); });
    m.def("h1_products", [](const RadialField& u, const RadialField& v) {
        const auto pr = h1_products(u, v);
        return std::make_pair(pr.dirichlet, pr.l2);
    });
    m.def("h1_products", [](const BoxField& u, const BoxField& v) {
        const auto pr = h1_products(u, v);
        return std::make_pair(pr.dirichlet, pr.l2);
    });

    py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
        .def_readonly("kinetic", &EnergyBreakdown::kinetic)
        .def_readonly("mass_inf", &EnergyBreakdown::mass_inf)
        .def_readonly("mass_a", &EnergyBreakdown::mass_a)
        .def_readonly("nonlin_inf", &EnergyBreakdown::nonlin_inf)
        .def_readonly("nonlin_b", &EnergyBreakdown::nonlin_b)
        .def_readonly("q_lambda", &EnergyBreakdown::q_lambda)
        .def_readonly("b_total", &EnergyBreakdown::b_total);

    py::class_<NehariProjection>(m, "NehariProjection")
        .def_readonly("t", &NehariProjection::t)
        .def_readonly("residual_after", &NehariProjection::residual_after);

    py::class_<LimitGroundState>(m, "LimitGroundState")
        .def_readonly("w", &LimitGroundState::w)
        .def_readonly("m_inf", &LimitGroundState::level)
        .def_readonly("peak", &LimitGroundState::peak)
        .def_readonly("shoot_param", &LimitGroundState::shoot_param)
        .def_readonly("decay_coeff", &LimitGroundState::decay_coeff)
        .def_readonly("decay_rate", &LimitGroundState::decay_rate)
        .def_readonly("unit_coupling", &LimitGroundState::unit_coupling)
        .def_readonly("pde_residual", &LimitGroundState::residual)
        .def("sample", &LimitGroundState::sample)
        .def("sample_unit", &LimitGroundState::sample_unit);

    m.def(
        "solve_limit",
        [](const ProblemParams& par, std::shared_ptr<RadialGrid> grid, double tol) {
            return solve_limit(par, grid, tol);
        },
        py::arg("params"), py::arg("grid"), py::arg("tol") = 1e-10);
    m.def("rescaled_level", &rescaled_level, py::arg("dim"), py::arg("p"),
          py::arg("unit_level"), py::arg("a_inf"), py::arg("b_inf"));

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("max_iters", &SolverOptions::max_iters)
        .def_readwrite("step", &SolverOptions::step)
        .def_readwrite("tol_grad", &SolverOptions::tol_grad)
        .def_readwrite("armijo_c", &SolverOptions::armijo_c)
        .def_readwrite("backtrack", &SolverOptions::backtrack)
        .def_readwrite("max_backtracks", &SolverOptions::max_backtracks)
        .def_readwrite("positivity", &SolverOptions::positivity)
        .def_readwrite("shift_every", &SolverOptions::shift_every);

    bind_model<RadialGrid>(m, "RadialModel", "RadialResult");
    bind_model<BoxGrid>(m, "BoxModel", "BoxResult");

    m.def(
        "soliton_seed",
        [](std::shared_ptr<RadialGrid> g, const LimitGroundState& w) {
            return soliton_seed(std::shared_ptr<const RadialGrid>(g), w);
        },
        py::arg("grid"), py::arg("limit"));
    m.def(
        "soliton_seed",
        [](std::shared_ptr<BoxGrid> g, const LimitGroundState& w, std::array<double, 3> c) {
            return soliton_seed(std::shared_ptr<const BoxGrid>(g), w, c);
        },
        py::arg("grid"), py::arg("limit"),
        py::arg("center") = std::array<double, 3>{0.0, 0.0, 0.0});

    m.def("barycenter", &barycenter_point);

    py::enum_<EscapeKind>(m, "EscapeKind")
        .value("localized", EscapeKind::localized)
        .value("escaping", EscapeKind::escaping)
        .value("inconclusive", EscapeKind::inconclusive);

    py::class_<SweepEntry>(m, "SweepEntry")
        .def_readonly("lambda_", &SweepEntry::lambda)
        .def_readonly("converged", &SweepEntry::converged)
        .def_readonly("m", &SweepEntry::m)
        .def_readonly("boundary_mass", &SweepEntry::boundary_mass)
        .def_readonly("iterations", &SweepEntry::iterations)
        .def_readonly("escape", &SweepEntry::escape);

    py::class_<LambdaStarEstimate>(m, "LambdaStarEstimate")
        .def_readonly("observed", &LambdaStarEstimate::observed)
        .def_readonly("value", &LambdaStarEstimate::value)
        .def_readonly("lambda_max", &LambdaStarEstimate::lambda_max)
        .def_readonly("persistent", &LambdaStarEstimate::persistent);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("entries", &SweepResult::entries)
        .def_readonly("m_inf", &SweepResult::m_inf)
        .def_readonly("delta_h", &SweepResult::delta_h)
        .def_readonly("lambda_star", &SweepResult::lambda_star)
        .def_readonly("monotone_ok", &SweepResult::monotone_ok)
        .def_readonly("max_backward_jump", &SweepResult::max_backward_jump)
        .def_readonly("continuity_modulus", &SweepResult::continuity_modulus)
        .def("lambdas", &SweepResult::lambdas)
        .def("m_values", &SweepResult::m_values);

    py::class_<SweepEngine>(m, "SweepEngine")
        .def(py::init([](const ProblemParams& par, const CoefficientProfile& a,
                         const CoefficientProfile& b, std::vector<std::shared_ptr<BoxGrid>> gs,
                         const SolverOptions& opts, double delta) {
                 std::vector<std::shared_ptr<const BoxGrid>> cgs(gs.begin(), gs.end());
                 return SweepEngine(par, a, b, cgs, opts, delta);
             }),
             py::arg("params"), py::arg("a"), py::arg("b"), py::arg("grids"),
             py::arg("options"), py::arg("delta"))
        .def("run", &SweepEngine::run)
        .def("m_inf", &SweepEngine::m_inf)
        .def("delta_h", &SweepEngine::delta_h)
        .def("estimate_lambda_star", &SweepEngine::estimate_lambda_star);

    m.def("audit_map_properties", [](const SweepResult& s) {
        const auto rep = audit_map_properties(s);
        return py::dict(py::arg("monotonicity_violations") = rep.monotonicity_violations,
                        py::arg("max_backward_jump") = rep.max_backward_jump,
                        py::arg("continuity_modulus") = rep.continuity_modulus,
                        py::arg("lambda_star_positive") = rep.lambda_star_positive);
    });

    py::class_<BumpProbe>(m, "BumpProbe")
        .def_readonly("y", &BumpProbe::y)
        .def_readonly("t", &BumpProbe::t)
        .def_readonly("energy", &BumpProbe::energy)
        .def_readonly("competition", &BumpProbe::competition);
    m.def("translated_bump_energy", &translated_bump_energy);

    py::class_<InteractionSample>(m, "InteractionSample")
        .def_readonly("rho", &InteractionSample::rho)
        .def_readonly("eps", &InteractionSample::eps)
        .def_readonly("eps_swapped", &InteractionSample::eps_swapped);
    py::class_<InteractionFit>(m, "InteractionFit")
        .def_readonly("rate", &InteractionFit::rate)
        .def_readonly("power", &InteractionFit::power)
        .def_readonly("samples", &InteractionFit::samples);
    m.def(
        "interaction_ladder",
        [](std::shared_ptr<BoxGrid> g, const LimitGroundState& lim, std::vector<double> rhos,
           std::array<double, 3> z, std::array<double, 3> xi) {
            return interaction_ladder(std::shared_ptr<const BoxGrid>(g), lim, rhos, z, xi);
        },
        py::arg("grid"), py::arg("limit"), py::arg("rhos"), py::arg("z"), py::arg("xi"));

    py::class_<PsiSurfaceReport>(m, "PsiSurfaceReport")
        .def_readonly("rho", &PsiSurfaceReport::rho)
        .def_readonly("epsilon_rho", &PsiSurfaceReport::epsilon_rho)
        .def_readonly("s_rho", &PsiSurfaceReport::s_rho)
        .def_readonly("t_rho", &PsiSurfaceReport::t_rho)
        .def_readonly("b0_estimate", &PsiSurfaceReport::b0_estimate)
        .def_readonly("two_m_inf", &PsiSurfaceReport::two_m_inf);
    m.def("psi_surface", &psi_surface, py::arg("model"), py::arg("limit"), py::arg("rho"),
          py::arg("xi"), py::arg("res_z"), py::arg("res_s"),
          py::arg("options") = SolverOptions{});

    py::enum_<B0Init>(m, "B0Init")
        .value("centered", B0Init::centered)
        .value("two_bump", B0Init::two_bump);
    py::class_<B0Estimate>(m, "B0Estimate")
        .def_readonly("value", &B0Estimate::value)
        .def_readonly("barycenter", &B0Estimate::barycenter)
        .def_readonly("converged", &B0Estimate::converged);
    m.def("estimate_b0", &estimate_b0, py::arg("model"), py::arg("limit"),
          py::arg("penalty_weight"), py::arg("options"), py::arg("init") = B0Init::centered,
          py::arg("bump_offset") = 0.0);

    m.def(
        "radial_level",
        [](const ProblemParams& par, const CoefficientProfile& a, const CoefficientProfile& b,
           std::shared_ptr<RadialGrid> g, const LimitGroundState& lim,
           std::vector<double> lambdas, const SolverOptions& opts) {
            return radial_level(par, a, b, std::shared_ptr<const RadialGrid>(g), lim, lambdas,
                                opts);
        },
        py::arg("params"), py::arg("a"), py::arg("b"), py::arg("grid"), py::arg("limit"),
        py::arg("lambdas"), py::arg("options") = SolverOptions{});

    py::class_<OverlapSample>(m, "OverlapSample")
        .def_readonly("rho", &OverlapSample::rho)
        .def_readonly("lhs", &OverlapSample::lhs)
        .def_readonly("rhs", &OverlapSample::rhs)
        .def_readonly("ratio", &OverlapSample::ratio);
    m.def("check_overlap_lemma", &check_overlap_lemma, py::arg("g"), py::arg("h"), py::arg("z"),
          py::arg("rhos"), py::arg("dim"), py::arg("spacing"));

    py::class_<DecayFit>(m, "DecayFit")
        .def_readonly("rate", &DecayFit::rate)
        .def_readonly("power", &DecayFit::power)
        .def_readonly("offset", &DecayFit::offset)
        .def_readonly("r_lo", &DecayFit::r_lo)
        .def_readonly("r_hi", &DecayFit::r_hi)
        .def_readonly("ok", &DecayFit::ok);
    m.def("decay_fit", [](const RadialField& u, double kappa) { return decay_fit(u, kappa); });
    m.def("decay_fit", [](const BoxField& u, double kappa) { return decay_fit(u, kappa); });
}
