#include "estent/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "estent/bounds.hpp"
#include "estent/config.hpp"
#include "estent/discrepancy.hpp"
#include "estent/dynamics.hpp"
#include "estent/entropy_lab.hpp"
#include "estent/estimator.hpp"
#include "estent/switched.hpp"

namespace estent {

namespace {

namespace fs = std::filesystem;

struct Context {
  std::string config_path;
  std::string out_dir = ".";
  long long seed = 0;
  Config cfg;

  std::string out_path(const std::string& name) const {
    return (fs::path(out_dir) / name).string();
  }
};

System load_system(const Context& ctx) {
  std::string name = ctx.cfg.get_string("system", "name");
  std::map<std::string, double> params;
  for (const auto& [k, v] : ctx.cfg.section_items("system")) {
    if (k == "name") continue;
    params[k] = ctx.cfg.get_double("system", k);
  }
  return make_system(name, params);
}

VariationBudget load_budget(const Context& ctx) {
  VariationBudget b;
  b.mu = ctx.cfg.get_double("budget", "mu");
  b.eta = ctx.cfg.get_double("budget", "eta");
  b.u0_box = Box(ctx.cfg.get_vec("budget", "u_lo"), ctx.cfg.get_vec("budget", "u_hi"));
  return b;
}

Box load_state_box(const Context& ctx) {
  return Box(ctx.cfg.get_vec("budget", "k_lo"), ctx.cfg.get_vec("budget", "k_hi"));
}

BoundMode parse_mode(const std::string& s) {
  if (s == "quadratic") return BoundMode::Quadratic;
  if (s == "affine") return BoundMode::Affine;
  if (s == "rho-form") return BoundMode::RhoForm;
  throw ConfigError("unknown mode: " + s);
}

SearchGrids load_grids(const Context& ctx, const BoundInputs& b) {
  SearchGrids g = SearchGrids::defaults(b);
  double tp_min = ctx.cfg.get_double("bound", "tp_min", 1e-6);
  double tp_max = ctx.cfg.get_double("bound", "tp_max", 10.0);
  long long tp_count = ctx.cfg.get_int("bound", "tp_count", 64);
  if (tp_min != 1e-6 || tp_max != 10.0 || tp_count != 64)
    g.Tp = log_space(tp_min, tp_max, static_cast<int>(tp_count));
  if (ctx.cfg.has("bound", "du_min") || ctx.cfg.has("bound", "du_max") ||
      ctx.cfg.has("bound", "du_count")) {
    double du_min = ctx.cfg.get_double("bound", "du_min", b.eps * 1e-3);
    double du_max =
        ctx.cfg.get_double("bound", "du_max", std::max(b.eta + b.mu, b.eps) * 10.0);
    long long du_count = ctx.cfg.get_int("bound", "du_count", 32);
    g.du = log_space(du_min, du_max, static_cast<int>(du_count));
  }
  return g;
}

BoundInputs load_bound_inputs(const Context& ctx, const std::string& section) {
  BoundInputs b;
  b.eps = ctx.cfg.get_double(section, "eps");
  b.mu = ctx.cfg.get_double(section, "mu");
  b.eta = ctx.cfg.get_double(section, "eta");
  b.n = static_cast<int>(ctx.cfg.get_int(section, "n", 1));
  b.m = static_cast<int>(ctx.cfg.get_int(section, "m", 1));
  std::string gains = ctx.cfg.get_string(section, "gains", "explicit");
  if (gains == "explicit") {
    b.Mx = ctx.cfg.get_double(section, "gx");
    b.Mu = ctx.cfg.get_double(section, "gu");
  } else if (gains == "lipschitz") {
    Gains g = lipschitz_gains(ctx.cfg.get_double(section, "lx_global"),
                              ctx.cfg.get_double(section, "lu_global"), b.n, b.m);
    b.Mx = g.gx;
    b.Mu = g.gu;
  } else if (gains == "auto") {
    System sys = load_system(ctx);
    Box K = load_state_box(ctx);
    VariationBudget budget = load_budget(ctx);
    Gains g = local_gains(sys, lattice_samples(K), lattice_samples(budget.u0_box));
    b.n = sys.n;
    b.m = sys.m;
    b.Mx = g.gx;
    b.Mu = g.gu;
  } else {
    throw ConfigError("bound.gains must be explicit|lipschitz|auto");
  }
  b.Lx = ctx.cfg.get_double(section, "lx", 0.0);
  return b;
}

void write_bound_csv(const Context& ctx, const std::vector<BoundResult>& rows,
                     const std::string& filename) {
  CsvWriter csv({"mode", "Tp", "dx", "du", "gc", "go", "feasible"});
  csv.provenance(ctx.cfg.effective());
  for (const BoundResult& r : rows)
    csv.row({bound_mode_name(r.mode), format_double(r.Tp), format_double(r.dx),
             format_double(r.du), format_double(r.gc), format_double(r.go),
             r.feasible ? "1" : "0"});
  csv.save(ctx.out_path(filename));
}

int cmd_bound(Context& ctx) {
  BoundMode mode = parse_mode(ctx.cfg.get_string("bound", "mode", "quadratic"));
  BoundInputs b = load_bound_inputs(ctx, "bound");
  BoundResult r;
  if (mode == BoundMode::RhoForm) {
    double rho = ctx.cfg.get_double("bound", "rho");
    double du = ctx.cfg.get_double("bound", "du");
    if (ctx.cfg.has("bound", "tp")) {
      r = rho_form(rho, du, ctx.cfg.get_double("bound", "tp"), b);
    } else {
      // scan Tp for the best feasible point
      for (double Tp : SearchGrids::defaults(b).Tp) {
        BoundResult cand = rho_form(rho, du, Tp, b);
        if (cand.feasible && cand.go < r.go) r = cand;
      }
    }
  } else if (ctx.cfg.has("bound", "tp") && ctx.cfg.has("bound", "du") &&
             ctx.cfg.has("bound", "dx")) {
    r.mode = mode;
    r.Tp = ctx.cfg.get_double("bound", "tp");
    r.du = ctx.cfg.get_double("bound", "du");
    r.dx = ctx.cfg.get_double("bound", "dx");
    if (mode == BoundMode::Affine) {
      r.gc = g_c_linear(r.dx, r.du, r.Tp, b);
      r.feasible = r.gc <= b.eps * (1.0 + 1e-12);
    } else {
      r.gc = g_c(r.dx, r.du, r.Tp, b);
      r.feasible = r.gc <= b.eps * b.eps * (1.0 + 1e-12);
    }
    r.go = g_o(r.dx, r.du, r.Tp, b);
  } else {
    r = optimize(b, mode, load_grids(ctx, b));
  }
  ctx.cfg.require_consumed();
  write_bound_csv(ctx, {r}, "bound.csv");
  std::cout << "mode=" << bound_mode_name(r.mode) << " Tp=" << format_double(r.Tp)
            << " dx=" << format_double(r.dx) << " du=" << format_double(r.du)
            << " gc=" << format_double(r.gc) << " go=" << format_double(r.go)
            << (r.feasible ? " feasible" : " infeasible") << "\n";
  return r.feasible ? 0 : 2;
}

int cmd_sweep(Context& ctx) {
  BoundMode mode = parse_mode(ctx.cfg.get_string("bound", "mode", "quadratic"));
  BoundInputs b = load_bound_inputs(ctx, "bound");
  SearchGrids grids = load_grids(ctx, b);
  ctx.cfg.require_consumed();
  auto rows = sweep(b, mode, grids);
  write_bound_csv(ctx, rows, "sweep.csv");
  std::size_t feasible = 0;
  for (const auto& r : rows) feasible += r.feasible ? 1 : 0;
  std::cout << rows.size() << " grid points, " << feasible << " feasible\n";
  return 0;
}

int cmd_estimate(Context& ctx) {
  System sys = load_system(ctx);
  VariationBudget budget = load_budget(ctx);
  Box K = load_state_box(ctx);
  EstimatorParams p;
  p.T = ctx.cfg.get_double("estimate", "T");
  p.Tp = ctx.cfg.get_double("estimate", "tp");
  p.dx = ctx.cfg.get_double("estimate", "dx");
  p.du = ctx.cfg.get_double("estimate", "du");
  p.eps = ctx.cfg.get_double("estimate", "eps");
  p.rho = ctx.cfg.get_double("estimate", "rho", 0.0);
  BoundInputs gains;
  gains.n = sys.n;
  gains.m = sys.m;
  gains.eps = p.eps;
  gains.mu = budget.mu;
  gains.eta = budget.eta;
  gains.Mx = ctx.cfg.get_double("estimate", "gx");
  gains.Mu = ctx.cfg.get_double("estimate", "gu");
  gains.Lx = ctx.cfg.get_double("estimate", "lx", 0.0);
  FeasMode fmode = ctx.cfg.get_string("estimate", "mode", "quadratic") == "affine"
                       ? FeasMode::Affine
                       : FeasMode::Quadratic;
  long long runs = ctx.cfg.get_int("estimate", "runs", 1);
  long long pieces = ctx.cfg.get_int("estimate", "pieces", 8);
  std::string x0_spec = ctx.cfg.get_string("estimate", "x0", "random");
  std::string u_spec = ctx.cfg.get_string("estimate", "u", "random");
  ctx.cfg.require_consumed();

  std::mt19937_64 rng(static_cast<std::uint64_t>(ctx.seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  CsvWriter report({"run", "steps", "sup_error", "eps", "bit_rate", "go",
                    "decode_identical"});
  report.provenance(ctx.cfg.effective());

  bool all_ok = true;
  for (long long run = 0; run < runs; ++run) {
    Vec x0(sys.n);
    if (x0_spec == "random") {
      for (int i = 0; i < sys.n; ++i) x0[i] = K.lo[i] + unit(rng) * K.width(i);
    } else {
      std::istringstream is(x0_spec);
      for (int i = 0; i < sys.n; ++i)
        if (!(is >> x0[i])) throw ConfigError("bad estimate.x0 vector");
    }
    Signal u;
    if (u_spec == "random") {
      u = random_slow_piecewise_constant(budget, p.T, static_cast<int>(pieces), rng);
    } else {
      std::ifstream f(u_spec);
      if (!f) throw ConfigError("cannot open signal file: " + u_spec);
      u = load_signal(f);
    }

    ApproximatingFunction af = encode(sys, x0, u, budget, K, p, gains, fmode);
    SymbolStream st = af.stream(p, budget);
    if (run == 0) {
      std::ofstream sf(ctx.out_path("stream.txt"), std::ios::binary);
      st.write(sf);
    }
    auto decoded = decode(st, K, budget, sys, p);
    bool identical = decoded.size() == af.segments.size();
    for (std::size_t i = 0; identical && i < decoded.size(); ++i) {
      identical = decoded[i].times == af.segments[i].times;
      for (std::size_t k = 0; identical && k < decoded[i].states.size(); ++k)
        identical = decoded[i].states[k] == af.segments[i].states[k];
    }
    if (run == 0) {
      CsvWriter zcsv([&] {
        std::vector<std::string> cols = {"t"};
        for (int i = 0; i < sys.n; ++i) cols.push_back("z" + std::to_string(i + 1));
        return cols;
      }());
      for (std::size_t i = 0; i < decoded.size(); ++i) {
        double t0 = static_cast<double>(i) * p.Tp;
        std::size_t cells = decoded[i].states.size() - 1;
        for (std::size_t k = 0; k < cells; ++k) {
          std::vector<std::string> cells_out = {
              format_double(t0 + decoded[i].times[k])};
          for (int c = 0; c < sys.n; ++c)
            cells_out.push_back(format_double(decoded[i].states[k][c]));
          zcsv.row(cells_out);
        }
      }
      zcsv.save(ctx.out_path("z.csv"));
    }
    double br = bit_rate(p, sys.n, sys.m, budget);
    double go = g_o(p.dx, p.du, p.Tp, gains);
    all_ok = all_ok && identical && af.realized_sup_error <= p.eps;
    report.row({std::to_string(run), std::to_string(af.steps.size()),
                format_double(af.realized_sup_error), format_double(p.eps),
                format_double(br), format_double(go), identical ? "1" : "0"});
    std::cout << "run " << run << ": steps=" << af.steps.size()
              << " sup_error=" << format_double(af.realized_sup_error)
              << " bit_rate=" << format_double(br)
              << (identical ? " decode=identical" : " decode=MISMATCH") << "\n";
  }
  report.save(ctx.out_path("report.csv"));
  return all_ok ? 0 : 1;
}

int cmd_separated(Context& ctx) {
  std::string construction = ctx.cfg.get_string("separated", "construction");
  double eps = ctx.cfg.get_double("separated", "eps");
  double T = ctx.cfg.get_double("separated", "T");
  double a = ctx.cfg.get_double("separated", "a", 1.0);
  double b = ctx.cfg.get_double("separated", "b", 0.0);
  double alpha = ctx.cfg.get_double("separated", "alpha", 0.0);
  long long max_members = ctx.cfg.get_int("separated", "max_members", 4096);
  long long max_switches = ctx.cfg.get_int("separated", "max_switches", 62);
  bool dump_matrix = ctx.cfg.get_int("separated", "dump_matrix", 0) != 0;

  SeparationSpec spec{T, eps, alpha, 0.0};
  FamilyReport rep;
  TrajectoryFamily fam;
  if (construction == "uniform" || construction == "alpha") {
    std::string sys_name = ctx.cfg.get_string("separated", "system", "integrator");
    System sys = make_system(sys_name);
    Vec x0 = Vec::Zero(sys.n);
    if (ctx.cfg.has("separated", "x0_state"))
      x0 = ctx.cfg.get_vec("separated", "x0_state");
    TimeSequence ts = construction == "uniform"
                          ? tseq_uniform(T, eps, a, b, max_switches)
                          : tseq_alpha(T, eps, alpha, a, b, max_switches);
    ctx.cfg.require_consumed();
    std::tie(rep, fam) = build_family(sys, x0, ts, a, b, spec, max_members);
  } else if (construction == "infd") {
    double x0 = ctx.cfg.get_double("separated", "x0");
    double b_rate = ctx.cfg.get_double("separated", "b_rate");
    double Td = ctx.cfg.get_double("separated", "Td", 0.0);
    SwitchedSystem sw = make_scalar_modes(a, b_rate, Td > 0.0 ? Td : 1.0);
    TimeSequence ts =
        tseq_infd(T, eps, b_rate, x0, a,
                  Td > 0.0 ? std::optional<double>(Td) : std::nullopt,
                  max_switches);
    ctx.cfg.require_consumed();
    std::tie(rep, fam) = switched_family(sw, x0, ts, spec, max_members);
  } else {
    throw ConfigError("separated.construction must be uniform|alpha|infd");
  }

  CsvWriter csv({"construction", "count", "separated", "threshold",
                 "min_pair_ratio", "growth_log2_per_T"});
  csv.provenance(ctx.cfg.effective());
  csv.row({construction, std::to_string(rep.count), rep.separated ? "1" : "0",
           format_double(rep.threshold), format_double(rep.min_pair_ratio),
           format_double(rep.growth_log2_per_T)});
  csv.save(ctx.out_path("family.csv"));
  if (dump_matrix) {
    Mat R = pair_ratio_matrix(fam, alpha);
    CsvWriter mcsv([&] {
      std::vector<std::string> cols = {"member"};
      for (int j = 0; j < R.cols(); ++j) cols.push_back("g" + std::to_string(j));
      return cols;
    }());
    for (int i = 0; i < R.rows(); ++i) {
      std::vector<std::string> cells = {std::to_string(i)};
      for (int j = 0; j < R.cols(); ++j) cells.push_back(format_double(R(i, j)));
      mcsv.row(cells);
    }
    mcsv.save(ctx.out_path("pairs.csv"));
  }
  std::cout << "members=" << rep.count
            << (rep.separated ? " separated" : " NOT separated")
            << " min_pair_ratio=" << format_double(rep.min_pair_ratio) << "\n";
  return 0;
}

int cmd_switched(Context& ctx) {
  std::string kind = ctx.cfg.get_string("switched", "kind");
  double a = ctx.cfg.get_double("switched", "a");
  double b = ctx.cfg.get_double("switched", "b");
  double Td = ctx.cfg.get_double("switched", "Td");
  double eps = ctx.cfg.get_double("switched", "eps");
  double alpha = ctx.cfg.get_double("switched", "alpha");
  double tau = ctx.cfg.get_double("switched", "tau");
  SwitchedSystem sw;
  if (kind == "scalar")
    sw = make_scalar_modes(a, b, Td);
  else if (kind == "constant")
    sw = make_constant_modes(a, b, Td);
  else
    throw ConfigError("switched.kind must be scalar|constant");
  ReachConfig rc;
  rc.K = Box(ctx.cfg.get_vec("switched", "k_lo"), ctx.cfg.get_vec("switched", "k_hi"));
  rc.horizon = ctx.cfg.get_double("switched", "horizon", 5.0 * Td);
  rc.n_signals = static_cast<int>(ctx.cfg.get_int("switched", "n_signals", 100));
  rc.dt = ctx.cfg.get_double("switched", "dt", 1e-3);
  rc.seed = static_cast<std::uint64_t>(ctx.seed);
  ctx.cfg.require_consumed();

  auto samples = sample_reach(sw, rc);
  auto table = mode_divergence_table(sw, std::min(tau, Td), samples, rc.dt);
  CsvWriter dcsv({"t", "d"});
  dcsv.provenance(ctx.cfg.effective());
  std::size_t stride = std::max<std::size_t>(1, table.size() / 200);
  for (std::size_t i = 0; i < table.size(); i += stride)
    dcsv.row({format_double(table[i].first), format_double(table[i].second)});
  dcsv.save(ctx.out_path("divergence.csv"));

  SwitchedBound sb = switched_bound(sw, eps, alpha, tau, rc);
  CsvWriter bcsv({"kind", "N", "Lx", "Te", "d_at_Te", "threshold", "bound",
                  "finite"});
  bcsv.provenance(ctx.cfg.effective());
  bcsv.row({kind, std::to_string(sw.num_modes()), format_double(sw.max_lip()),
            format_double(sb.Te), format_double(sb.d_at_Te),
            format_double(sb.threshold),
            sb.finite ? format_double(sb.bound) : "inf", sb.finite ? "1" : "0"});
  bcsv.save(ctx.out_path("switched_bound.csv"));
  std::cout << (sb.finite
                    ? "bound=" + format_double(sb.bound) + " Te=" + format_double(sb.Te)
                    : "bound=infinite (" + sb.diagnosis + ")")
            << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"estimation-entropy bounds, quantized estimation, and "
               "separated-family experiments"};
  app.require_subcommand(1);
  Context ctx;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", ctx.config_path, "experiment config file")
        ->required();
    sub->add_option("--out", ctx.out_dir, "output directory");
    sub->add_option("--seed", ctx.seed, "random seed");
  };
  CLI::App* bound = app.add_subcommand("bound", "evaluate or optimize the entropy bound");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "dump the (Tp, du) search grid");
  CLI::App* estimate = app.add_subcommand("estimate", "run the quantized encoder/decoder");
  CLI::App* separated = app.add_subcommand("separated", "build and check separated families");
  CLI::App* switched = app.add_subcommand("switched", "mode divergence and dwell-time bound");
  for (CLI::App* sub : {bound, sweep_cmd, estimate, separated, switched})
    add_common(sub);

  try {
    std::vector<std::string> rargs(args.rbegin(), args.rend());
    app.parse(rargs);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 64;
  }

  try {
    ctx.cfg = Config::parse_file(ctx.config_path);
    fs::create_directories(ctx.out_dir);
    if (bound->parsed()) return cmd_bound(ctx);
    if (sweep_cmd->parsed()) return cmd_sweep(ctx);
    if (estimate->parsed()) return cmd_estimate(ctx);
    if (separated->parsed()) return cmd_separated(ctx);
    if (switched->parsed()) return cmd_switched(ctx);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 64;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}

}  // namespace estent
