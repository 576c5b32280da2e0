#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "estent/bounds.hpp"
#include "estent/discrepancy.hpp"
#include "estent/dynamics.hpp"
#include "estent/entropy_lab.hpp"
#include "estent/estimator.hpp"
#include "estent/switched.hpp"

namespace py = pybind11;
using namespace estent;

namespace {

System system_from_callables(const std::string& name, int n, int m,
                             const FieldFn& field, const JacFn& jac_x,
                             const JacFn& jac_u, double lip_x, double lip_u,
                             bool affine_input) {
  System s;
  s.name = name;
  s.n = n;
  s.m = m;
  s.field = field;
  s.jac_x = jac_x;
  s.jac_u = jac_u;
  s.lip_x = lip_x;
  s.lip_u = lip_u;
  s.affine_input = affine_input;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "estimation-entropy bounds and quantized state estimation";

  py::register_exception<Error>(mod, "EstentError");

  // dynamics ---------------------------------------------------------------
  py::class_<System>(mod, "System")
      .def_readonly("name", &System::name)
      .def_readonly("n", &System::n)
      .def_readonly("m", &System::m)
      .def_readonly("lip_x", &System::lip_x)
      .def_readonly("lip_u", &System::lip_u)
      .def_readonly("affine_input", &System::affine_input);

  mod.def("make_system", &make_system, py::arg("name"),
          py::arg("params") = std::map<std::string, double>{});
  mod.def("builtin_system_names", &builtin_system_names);
  mod.def("custom_system", &system_from_callables, py::arg("name"),
          py::arg("n"), py::arg("m"), py::arg("field"),
          py::arg("jac_x") = nullptr, py::arg("jac_u") = nullptr,
          py::arg("lip_x") = 0.0, py::arg("lip_u") = 0.0,
          py::arg("affine_input") = false);
  mod.def("register_system", &register_system);
  mod.def("evaluate_field", &evaluate_field);
  mod.def("jacobian_x", &jacobian_x);
  mod.def("jacobian_u", &jacobian_u);

  py::class_<Trajectory>(mod, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_property_readonly("states",
                             [](const Trajectory& t) {
                               Mat S(t.states.size(), t.states.front().size());
                               for (std::size_t i = 0; i < t.states.size(); ++i)
                                 S.row(static_cast<int>(i)) = t.states[i];
                               return S;
                             })
      .def("value", &Trajectory::value);

  mod.def("integrate", &integrate, py::arg("system"), py::arg("x0"),
          py::arg("u"), py::arg("T"), py::arg("dt") = 1e-3);

  // signals ----------------------------------------------------------------
  py::class_<Box>(mod, "Box")
      .def(py::init<Vec, Vec>())
      .def_static("ball", &Box::ball)
      .def_readonly("lo", &Box::lo)
      .def_readonly("hi", &Box::hi)
      .def("diameter", &Box::diameter)
      .def("contains", &Box::contains, py::arg("x"), py::arg("tol") = 0.0);

  py::class_<VariationBudget>(mod, "VariationBudget")
      .def(py::init([](double mu, double eta, const Box& u0) {
             VariationBudget b;
             b.mu = mu;
             b.eta = eta;
             b.u0_box = u0;
             return b;
           }),
           py::arg("mu"), py::arg("eta"), py::arg("u0_box"))
      .def_readwrite("mu", &VariationBudget::mu)
      .def_readwrite("eta", &VariationBudget::eta)
      .def_readwrite("u0_box", &VariationBudget::u0_box);

  py::class_<Signal>(mod, "Signal")
      .def("eval", &Signal::eval)
      .def("eval_left", &Signal::eval_left)
      .def_readonly("horizon", &Signal::horizon)
      .def_readonly("dim", &Signal::dim)
      .def("breakpoints", &Signal::breakpoints)
      .def("save",
           [](const Signal& s, const std::string& path) {
             std::ofstream f(path);
             save_signal(s, f);
           })
      .def_static("load", [](const std::string& path) {
        std::ifstream f(path);
        if (!f) throw Error("cannot open " + path);
        return load_signal(f);
      });

  mod.def("constant_signal",
          py::overload_cast<const Vec&, double>(&constant_signal));
  mod.def("constant_signal_1d",
          py::overload_cast<double, double>(&constant_signal));

  py::class_<TimeSequence>(mod, "TimeSequence")
      .def(py::init([](std::vector<double> instants) {
        TimeSequence t;
        t.instants = std::move(instants);
        return t;
      }))
      .def_readonly("instants", &TimeSequence::instants)
      .def("gaps", &TimeSequence::gaps)
      .def("horizon", &TimeSequence::horizon);

  py::class_<VariationCheck>(mod, "VariationCheck")
      .def_readonly("ok", &VariationCheck::ok)
      .def_readonly("t1", &VariationCheck::t1)
      .def_readonly("t2", &VariationCheck::t2)
      .def_readonly("gap", &VariationCheck::gap)
      .def_readonly("allowed", &VariationCheck::allowed);

  mod.def("check_variation", &check_variation, py::arg("u"), py::arg("budget"),
          py::arg("n_samples") = 200, py::arg("tol") = 1e-9);
  mod.def("make_piecewise_constant", &make_piecewise_constant);
  mod.def("tseq_uniform", &tseq_uniform, py::arg("T"), py::arg("eps"),
          py::arg("a"), py::arg("b"), py::arg("max_switches") = 1000000);
  mod.def("tseq_alpha", &tseq_alpha, py::arg("T"), py::arg("eps"),
          py::arg("alpha"), py::arg("a"), py::arg("b"),
          py::arg("max_switches") = 1000000);
  mod.def("tseq_alpha_count_lower_bound", &tseq_alpha_count_lower_bound);
  mod.def("tseq_infd", &tseq_infd, py::arg("T"), py::arg("eps"),
          py::arg("b_rate"), py::arg("x0"), py::arg("a"),
          py::arg("Td") = std::optional<double>{},
          py::arg("max_switches") = 1000000);

  // quantization -----------------------------------------------------------
  py::class_<Grid>(mod, "Grid")
      .def_readonly("box", &Grid::box)
      .def_readonly("delta", &Grid::delta)
      .def_readonly("counts", &Grid::counts)
      .def("total", &Grid::total)
      .def("center", &Grid::center)
      .def("unflatten", &Grid::unflatten);

  py::class_<QuantizeResult>(mod, "QuantizeResult")
      .def_readonly("center", &QuantizeResult::center)
      .def_readonly("index", &QuantizeResult::index)
      .def_readonly("flat", &QuantizeResult::flat)
      .def_readonly("contained", &QuantizeResult::contained);

  mod.def("make_grid", &make_grid);
  mod.def("quantize", &quantize);
  mod.def("grid_count", &grid_count);

  // discrepancy ------------------------------------------------------------
  py::class_<Gains>(mod, "Gains")
      .def_readonly("gx", &Gains::gx)
      .def_readonly("gu", &Gains::gu)
      .def_readonly("provenance", &Gains::provenance);

  mod.def("local_gain_x", &local_gain_x);
  mod.def("local_gain_u", &local_gain_u);
  mod.def("local_gains", &local_gains);
  mod.def("lipschitz_gains", &lipschitz_gains);
  mod.def("lattice_samples", &lattice_samples, py::arg("box"),
          py::arg("per_dim") = 5);
  mod.def("discrepancy_rhs", &discrepancy_rhs);
  mod.def("discrepancy_rhs_linear", &discrepancy_rhs_linear);
  mod.def("integral_diff_sq", &integral_diff_sq);
  mod.def("integral_diff", &integral_diff);

  // bounds -----------------------------------------------------------------
  py::enum_<BoundMode>(mod, "BoundMode")
      .value("quadratic", BoundMode::Quadratic)
      .value("affine", BoundMode::Affine)
      .value("rho_form", BoundMode::RhoForm);

  py::class_<BoundInputs>(mod, "BoundInputs")
      .def(py::init([](int n, int m, double eps, double mu, double eta,
                       double Mx, double Mu, double Lx) {
             BoundInputs b;
             b.n = n;
             b.m = m;
             b.eps = eps;
             b.mu = mu;
             b.eta = eta;
             b.Mx = Mx;
             b.Mu = Mu;
             b.Lx = Lx;
             return b;
           }),
           py::arg("n"), py::arg("m"), py::arg("eps"), py::arg("mu"),
           py::arg("eta"), py::arg("Mx"), py::arg("Mu"), py::arg("Lx") = 0.0)
      .def_readwrite("n", &BoundInputs::n)
      .def_readwrite("m", &BoundInputs::m)
      .def_readwrite("eps", &BoundInputs::eps)
      .def_readwrite("mu", &BoundInputs::mu)
      .def_readwrite("eta", &BoundInputs::eta)
      .def_readwrite("Mx", &BoundInputs::Mx)
      .def_readwrite("Mu", &BoundInputs::Mu)
      .def_readwrite("Lx", &BoundInputs::Lx);

  py::class_<BoundResult>(mod, "BoundResult")
      .def_readonly("dx", &BoundResult::dx)
      .def_readonly("du", &BoundResult::du)
      .def_readonly("Tp", &BoundResult::Tp)
      .def_readonly("gc", &BoundResult::gc)
      .def_readonly("go", &BoundResult::go)
      .def_readonly("feasible", &BoundResult::feasible)
      .def_readonly("rho", &BoundResult::rho);

  py::class_<SearchGrids>(mod, "SearchGrids")
      .def_static("defaults", &SearchGrids::defaults)
      .def_readwrite("Tp", &SearchGrids::Tp)
      .def_readwrite("du", &SearchGrids::du);

  mod.def("g_c", &g_c);
  mod.def("g_c_x", &g_c_x);
  mod.def("g_c_u", &g_c_u);
  mod.def("g_o", &g_o);
  mod.def("g_c_linear", &g_c_linear);
  mod.def("rho_form", &rho_form);
  mod.def("optimize", [](const BoundInputs& b, BoundMode mode) {
    return optimize(b, mode, SearchGrids::defaults(b));
  });
  mod.def("optimize_with_grids", &optimize);

  // estimator --------------------------------------------------------------
  py::class_<EstimatorParams>(mod, "EstimatorParams")
      .def(py::init([](double T, double Tp, double dx, double du, double eps,
                       double rho, double dt_hint) {
             EstimatorParams p;
             p.T = T;
             p.Tp = Tp;
             p.dx = dx;
             p.du = du;
             p.eps = eps;
             p.rho = rho;
             p.dt_hint = dt_hint;
             return p;
           }),
           py::arg("T"), py::arg("Tp"), py::arg("dx"), py::arg("du"),
           py::arg("eps"), py::arg("rho") = 0.0, py::arg("dt_hint") = 0.0)
      .def_readwrite("T", &EstimatorParams::T)
      .def_readwrite("Tp", &EstimatorParams::Tp)
      .def_readwrite("dx", &EstimatorParams::dx)
      .def_readwrite("du", &EstimatorParams::du)
      .def_readwrite("eps", &EstimatorParams::eps)
      .def_readwrite("rho", &EstimatorParams::rho);

  py::class_<SymbolStream>(mod, "SymbolStream")
      .def_readonly("n", &SymbolStream::n)
      .def_readonly("m", &SymbolStream::m)
      .def_readonly("steps", &SymbolStream::steps)
      .def("dumps",
           [](const SymbolStream& s) {
             std::ostringstream os;
             s.write(os);
             return os.str();
           })
      .def_static("loads", [](const std::string& text) {
        std::istringstream is(text);
        return SymbolStream::read(is);
      });

  py::class_<ApproximatingFunction>(mod, "ApproximatingFunction")
      .def_readonly("Tp", &ApproximatingFunction::Tp)
      .def_readonly("dt", &ApproximatingFunction::dt)
      .def_readonly("realized_sup_error",
                    &ApproximatingFunction::realized_sup_error)
      .def_property_readonly(
          "segments",
          [](const ApproximatingFunction& a) { return a.segments; })
      .def("stream", &ApproximatingFunction::stream)
      .def("z_at", &ApproximatingFunction::z_at);

  py::enum_<FeasMode>(mod, "FeasMode")
      .value("quadratic", FeasMode::Quadratic)
      .value("affine", FeasMode::Affine);

  mod.def("encode", &encode, py::arg("system"), py::arg("x0"), py::arg("u"),
          py::arg("budget"), py::arg("K"), py::arg("params"), py::arg("gains"),
          py::arg("mode") = FeasMode::Quadratic);
  mod.def("encode_exp", &encode_exp);
  mod.def("decode", &decode);
  mod.def("bit_rate", &bit_rate);

  // switched ---------------------------------------------------------------
  py::class_<SwitchedSystem>(mod, "SwitchedSystem")
      .def_readonly("n", &SwitchedSystem::n)
      .def_readonly("Td", &SwitchedSystem::Td)
      .def("num_modes", &SwitchedSystem::num_modes)
      .def("max_lip", &SwitchedSystem::max_lip);

  mod.def("make_scalar_modes", &make_scalar_modes);
  mod.def("make_constant_modes", &make_constant_modes);

  py::class_<ReachConfig>(mod, "ReachConfig")
      .def(py::init([](const Box& K, double horizon, int n_signals, double dt,
                       std::uint64_t seed) {
             ReachConfig c;
             c.K = K;
             c.horizon = horizon;
             c.n_signals = n_signals;
             c.dt = dt;
             c.seed = seed;
             return c;
           }),
           py::arg("K"), py::arg("horizon") = 0.0, py::arg("n_signals") = 100,
           py::arg("dt") = 1e-3, py::arg("seed") = 0);

  py::class_<SwitchedBound>(mod, "SwitchedBound")
      .def_readonly("bound", &SwitchedBound::bound)
      .def_readonly("finite", &SwitchedBound::finite)
      .def_readonly("Te", &SwitchedBound::Te)
      .def_readonly("d_at_Te", &SwitchedBound::d_at_Te)
      .def_readonly("threshold", &SwitchedBound::threshold)
      .def_readonly("diagnosis", &SwitchedBound::diagnosis);

  mod.def("sample_reach", &sample_reach);
  mod.def("mode_divergence", &mode_divergence);
  mod.def("switched_bound", &switched_bound);
  mod.def("embed_as_open", &embed_as_open);
  mod.def("embedding_budget", &embedding_budget);
  py::class_<EmbeddedGains>(mod, "EmbeddedGains")
      .def_readonly("gx", &EmbeddedGains::gx)
      .def_readonly("gu", &EmbeddedGains::gu);
  mod.def("embedded_gains", &embedded_gains);
  mod.def("switching_signal", &switching_signal);
  mod.def("integrate_switched", &integrate_switched);

  // entropy lab ------------------------------------------------------------
  py::class_<SeparationSpec>(mod, "SeparationSpec")
      .def(py::init([](double T, double eps, double alpha, double tau) {
             return SeparationSpec{T, eps, alpha, tau};
           }),
           py::arg("T"), py::arg("eps"), py::arg("alpha") = 0.0,
           py::arg("tau") = 0.0);

  py::class_<FamilyReport>(mod, "FamilyReport")
      .def_readonly("count", &FamilyReport::count)
      .def_readonly("separated", &FamilyReport::separated)
      .def_readonly("threshold", &FamilyReport::threshold)
      .def_readonly("min_pair_ratio", &FamilyReport::min_pair_ratio)
      .def_readonly("growth_log2_per_T", &FamilyReport::growth_log2_per_T);

  py::class_<TrajectoryFamily>(mod, "TrajectoryFamily")
      .def_readonly("members", &TrajectoryFamily::members)
      .def_readonly("labels", &TrajectoryFamily::labels);

  py::class_<SandwichResult>(mod, "SandwichResult")
      .def_readonly("s_sep_2eps", &SandwichResult::s_sep_2eps)
      .def_readonly("s_star_eps", &SandwichResult::s_star_eps)
      .def_readonly("s_sep_eps", &SandwichResult::s_sep_eps)
      .def_readonly("holds", &SandwichResult::holds);

  mod.def("build_family", &build_family);
  mod.def("check_separated", &check_separated);
  mod.def("pair_ratio_matrix", &pair_ratio_matrix);
  mod.def("sandwich_check", &sandwich_check);
  mod.def("switched_family", &switched_family);

  mod.attr("__version__") = "0.1.0";
}
