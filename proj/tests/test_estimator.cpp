#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "estent/discrepancy.hpp"
#include "estent/estimator.hpp"
#include "estent/quantization.hpp"

using namespace estent;

namespace {

Box interval(double lo, double hi) {
  Vec l(1), h(1);
  l[0] = lo;
  h[0] = hi;
  return Box(l, h);
}

VariationBudget integrator_budget() {
  VariationBudget b;
  b.mu = 0.0;
  b.eta = 1.0;
  b.u0_box = interval(0.0, 1.0);
  return b;
}

BoundInputs integrator_gains(double eps) {
  BoundInputs b;
  b.n = 1;
  b.m = 1;
  b.eps = eps;
  b.mu = 0.0;
  b.eta = 1.0;
  b.Mx = 0.5;
  b.Mu = 1.0;
  return b;
}

EstimatorParams feasible_integrator_params(double T, double eps) {
  // pick (Tp, du) from the optimizer so g_c = eps^2 exactly
  BoundInputs b = integrator_gains(eps);
  BoundResult r = optimize(b, BoundMode::Quadratic, SearchGrids::defaults(b));
  REQUIRE(r.feasible);
  EstimatorParams p;
  p.T = T;
  p.Tp = r.Tp;
  p.dx = r.dx;
  p.du = r.du;
  p.eps = eps;
  return p;
}

bool segments_identical(const std::vector<Trajectory>& a,
                        const std::vector<Trajectory>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].times != b[i].times) return false;
    for (std::size_t k = 0; k < a[i].states.size(); ++k)
      if (a[i].states[k] != b[i].states[k]) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("estimator") {

TEST_CASE("closed-system mode: constant input, sup error within eps") {
  System integ = make_integrator();
  VariationBudget b;
  b.mu = 0.0;
  b.eta = 0.0;
  b.u0_box = interval(0.3, 0.3);
  BoundInputs gains = integrator_gains(0.05);
  gains.eta = 0.0;
  EstimatorParams p;
  p.T = 1.0;
  p.Tp = 0.05;
  p.du = 1e-6;
  p.eps = 0.05;
  p.dx = std::sqrt(std::max(0.0, p.eps * p.eps - g_c_u(p.du, p.Tp, gains))) *
         std::exp(-gains.Mx * p.Tp);
  Vec x0 = interval(0.1, 0.1).lo;
  ApproximatingFunction af =
      encode(integ, x0, constant_signal(0.3, 1.0), b, interval(-1, 1), p, gains);
  CHECK(af.realized_sup_error <= p.eps);
  CHECK(af.steps.size() == 21);
}

TEST_CASE("Monte-Carlo soundness on the integrator lab system") {
  System integ = make_integrator();
  VariationBudget budget = integrator_budget();
  double eps = 0.1;
  EstimatorParams p = feasible_integrator_params(1.0, eps);
  BoundInputs gains = integrator_gains(eps);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Box K = interval(-1.0, 1.0);
  for (int run = 0; run < 20; ++run) {
    Vec x0(1);
    x0[0] = -1.0 + 2.0 * unit(rng);
    Signal u = random_slow_piecewise_constant(budget, p.T, 6, rng);
    ApproximatingFunction af = encode(integ, x0, u, budget, K, p, gains);
    CHECK(af.realized_sup_error <= eps);
    for (const EstimatorStep& s : af.steps) {
      CHECK(s.x_contained);
      CHECK(s.u_contained);
    }
  }
}

TEST_CASE("per-step alphabet sizes match the counting formulas") {
  System integ = make_integrator();
  VariationBudget budget = integrator_budget();
  double eps = 0.1;
  EstimatorParams p = feasible_integrator_params(0.5, eps);
  BoundInputs gains = integrator_gains(eps);
  std::mt19937_64 rng(7);
  Signal u = random_slow_piecewise_constant(budget, p.T, 4, rng);
  Vec x0(1);
  x0[0] = 0.25;
  ApproximatingFunction af = encode(integ, x0, u, budget, interval(-1, 1), p, gains);
  long long state_cells = ceil_count(eps / p.dx);
  long long input_cells = ceil_count((budget.eta + budget.mu * p.Tp) / p.du + 1.0);
  for (std::size_t i = 1; i < af.steps.size(); ++i) {
    Grid gx = make_grid(af.steps[i].sx, p.dx);
    Grid gu = make_grid(af.steps[i].su, p.du);
    CHECK(gx.total() == state_cells);
    CHECK(gu.total() == input_cells);
  }
}

TEST_CASE("decode reproduces the encoder segments bit-identically") {
  System integ = make_integrator();
  VariationBudget budget = integrator_budget();
  double eps = 0.1;
  EstimatorParams p = feasible_integrator_params(1.0, eps);
  BoundInputs gains = integrator_gains(eps);
  std::mt19937_64 rng(9);
  Vec x0(1);
  x0[0] = -0.4;
  Signal u = random_slow_piecewise_constant(budget, p.T, 5, rng);
  Box K = interval(-1.0, 1.0);
  ApproximatingFunction af = encode(integ, x0, u, budget, K, p, gains);
  SymbolStream st = af.stream(p, budget);
  auto decoded = decode(st, K, budget, integ, p);
  CHECK(segments_identical(af.segments, decoded));

  // stream text round-trip stays bit-identical
  std::ostringstream os;
  st.write(os);
  std::istringstream is(os.str());
  SymbolStream st2 = SymbolStream::read(is);
  auto decoded2 = decode(st2, K, budget, integ, p);
  CHECK(segments_identical(af.segments, decoded2));
}

TEST_CASE("truncated streams decode to a prefix; corrupt indices throw") {
  System integ = make_integrator();
  VariationBudget budget = integrator_budget();
  double eps = 0.1;
  EstimatorParams p = feasible_integrator_params(1.0, eps);
  BoundInputs gains = integrator_gains(eps);
  std::mt19937_64 rng(10);
  Vec x0(1);
  x0[0] = 0.0;
  Signal u = random_slow_piecewise_constant(budget, p.T, 5, rng);
  Box K = interval(-1.0, 1.0);
  ApproximatingFunction af = encode(integ, x0, u, budget, K, p, gains);
  SymbolStream st = af.stream(p, budget);
  REQUIRE(st.steps.size() >= 3);

  SymbolStream prefix = st;
  prefix.steps.resize(2);
  auto decoded = decode(prefix, K, budget, integ, p);
  CHECK(decoded.size() == 2);
  CHECK(segments_identical({af.segments[0], af.segments[1]}, decoded));

  SymbolStream single = st;
  single.steps.resize(1);
  CHECK(decode(single, K, budget, integ, p).size() == 1);

  SymbolStream corrupt = st;
  corrupt.steps[1][1] = 1 << 20;
  CHECK_THROWS_AS(decode(corrupt, K, budget, integ, p), StreamError);
}

TEST_CASE("infeasible parameters are rejected") {
  System integ = make_integrator();
  VariationBudget budget = integrator_budget();
  BoundInputs gains = integrator_gains(0.1);
  EstimatorParams p;
  p.T = 1.0;
  p.Tp = 0.5;
  p.dx = 1.0;  // 10 eps
  p.du = 0.5;
  p.eps = 0.1;
  Vec x0(1);
  x0[0] = 0.0;
  CHECK_THROWS_AS(
      encode(integ, x0, constant_signal(0.5, 1.0), budget, interval(-1, 1), p, gains),
      InfeasibleError);
}

TEST_CASE("bit_rate formula") {
  EstimatorParams p;
  p.Tp = 0.01;
  p.dx = 0.05;
  p.du = 1.0;
  p.eps = 0.1;
  VariationBudget closed;
  closed.mu = 0.0;
  closed.eta = 0.0;
  // ceil(eps/dx) = 2 with three state dimensions and a single input cell
  CHECK(bit_rate(p, 3, 1, closed) == doctest::Approx(3.0 / 0.01));
  // dx = eps: zero state bits
  p.dx = 0.1;
  CHECK(bit_rate(p, 3, 1, closed) == doctest::Approx(0.0));
}

TEST_CASE("exponential variant: envelope and rho = 0 reduction") {
  System lin = make_scalar_linear(-1.0);
  Box K = interval(-1.0, 1.0);
  BoundInputs gains;
  gains.n = 1;
  gains.m = 1;
  gains.eps = 0.1;
  gains.Mx = local_gain_x(lin, {K.lo, K.hi}, {Vec::Zero(1)});
  gains.Mu = 0.0;
  double rho = 0.5;
  EstimatorParams p;
  p.T = 5.0;
  p.Tp = 0.05;
  p.eps = 0.1;
  p.du = 1e-9;
  p.rho = rho;
  p.dx = p.eps * std::exp(-(gains.Mx + rho) * p.Tp);
  Vec x0(1);
  x0[0] = 0.8;
  Signal u = constant_signal(0.0, p.T);
  ApproximatingFunction af = encode_exp(lin, x0, u, K, p, gains);

  // check the decaying envelope on the grid
  Trajectory truth = integrate(lin, x0, u, p.T + p.Tp, af.dt);
  for (std::size_t i = 0; i < af.segments.size(); ++i) {
    const Trajectory& z = af.segments[i];
    double t0 = static_cast<double>(i) * p.Tp;
    for (std::size_t k = 0; k + 1 < z.states.size(); ++k) {
      double t = t0 + z.times[k];
      double err = inf_norm(z.states[k] - truth.states[truth.index_at(t)]);
      CHECK(err <= p.eps * std::exp(-rho * t) * (1.0 + 1e-9));
    }
  }

  // rho = 0 reduces exactly to the fixed-grid encoder
  EstimatorParams p0 = p;
  p0.rho = 0.0;
  p0.dx = p.eps * std::exp(-gains.Mx * p.Tp);
  ApproximatingFunction a1 = encode_exp(lin, x0, u, K, p0, gains);
  VariationBudget zero;
  zero.mu = 0.0;
  zero.eta = 0.0;
  zero.u0_box = Box::ball(u.pieces.front().value, 0.0);
  ApproximatingFunction a2 = encode(lin, x0, u, zero, K, p0, gains);
  CHECK(segments_identical(a1.segments, a2.segments));
}

TEST_CASE("exponential variant on the integrator with u = 0") {
  System integ = make_integrator();
  Box K = interval(-1.0, 1.0);
  BoundInputs gains = integrator_gains(0.1);
  gains.eta = 0.0;
  double rho = 0.3;
  EstimatorParams p;
  p.T = 2.0;
  p.Tp = 0.1;
  p.eps = 0.1;
  p.du = 1e-9;
  p.rho = rho;
  p.dx = p.eps * std::exp(-(gains.Mx + rho) * p.Tp);
  Vec x0(1);
  x0[0] = 0.37;
  ApproximatingFunction af = encode_exp(integ, x0, constant_signal(0.0, p.T), K, p, gains);
  // z_i segments are constants; the sampled state never moves
  for (const Trajectory& z : af.segments)
    CHECK(inf_norm(z.states.front() - z.states.back()) == 0.0);
  for (std::size_t i = 0; i < af.segments.size(); ++i) {
    double t0 = static_cast<double>(i) * p.Tp;
    double err = inf_norm(af.segments[i].states.front() - x0);
    CHECK(err <= p.eps * std::exp(-rho * t0) * (1.0 + 1e-12));
  }
}

}  // TEST_SUITE
