#include "estent/discrepancy.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace estent {

double local_gain_x(const System& sys, const std::vector<Vec>& state_samples,
                    const std::vector<Vec>& input_samples) {
  if (state_samples.empty() || input_samples.empty())
    throw Error("local_gain_x requires nonempty sample sets");
  double lam = -std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Mat> solver;
  for (const Vec& x : state_samples) {
    for (const Vec& u : input_samples) {
      Mat J = jacobian_x(sys, x, u);
      if (!J.allFinite()) throw Error("non-finite Jacobian in local_gain_x");
      Mat S = 0.5 * (J + J.transpose());
      solver.compute(S, Eigen::EigenvaluesOnly);
      lam = std::max(lam, solver.eigenvalues().maxCoeff());
    }
  }
  return lam + 0.5;
}

double local_gain_u(const System& sys, const std::vector<Vec>& state_samples,
                    const std::vector<Vec>& input_samples) {
  if (state_samples.empty() || input_samples.empty())
    throw Error("local_gain_u requires nonempty sample sets");
  double best = 0.0;
  for (const Vec& x : state_samples) {
    for (const Vec& u : input_samples) {
      Mat J = jacobian_u(sys, x, u);
      if (!J.allFinite()) throw Error("non-finite Jacobian in local_gain_u");
      Eigen::JacobiSVD<Mat> svd(J);
      best = std::max(best, svd.singularValues()[0]);
    }
  }
  return best;
}

Gains local_gains(const System& sys, const std::vector<Vec>& state_samples,
                  const std::vector<Vec>& input_samples) {
  Gains g;
  g.kind = Gains::Local;
  g.gx = local_gain_x(sys, state_samples, input_samples);
  g.gu = local_gain_u(sys, state_samples, input_samples);
  g.n_state_samples = state_samples.size();
  g.n_input_samples = input_samples.size();
  g.provenance = "sampled " + std::to_string(state_samples.size()) + "x" +
                 std::to_string(input_samples.size()) + " points";
  return g;
}

Gains lipschitz_gains(double lip_x, double lip_u, int n, int m) {
  if (lip_x < 0.0 || lip_u < 0.0)
    throw Error("lipschitz_gains requires nonnegative constants");
  Gains g;
  g.kind = Gains::GlobalLipschitz;
  g.gx = static_cast<double>(n) * lip_x + 0.5;
  g.gu = static_cast<double>(m) * std::sqrt(static_cast<double>(m)) * lip_u;
  g.provenance = "global Lipschitz bound";
  return g;
}

std::vector<Vec> lattice_samples(const Box& box, int per_dim) {
  if (per_dim < 1) throw Error("lattice_samples requires per_dim >= 1");
  int d = box.dim();
  std::vector<Vec> out;
  std::vector<int> idx(d, 0);
  while (true) {
    Vec x(d);
    for (int i = 0; i < d; ++i) {
      double w = box.width(i);
      x[i] = per_dim == 1 ? box.lo[i] + 0.5 * w
                          : box.lo[i] + w * static_cast<double>(idx[i]) /
                                            static_cast<double>(per_dim - 1);
    }
    out.push_back(x);
    int k = 0;
    while (k < d && ++idx[k] == per_dim) idx[k++] = 0;
    if (k == d) break;
  }
  return out;
}

double discrepancy_rhs(double dx0, double int_u_sq, double Mx, double Mu,
                       double t, double tau) {
  if (dx0 < 0.0 || int_u_sq < 0.0)
    throw Error("discrepancy_rhs requires nonnegative inputs");
  return std::exp(2.0 * Mx * t) * dx0 * dx0 +
         Mu * Mu * std::exp(2.0 * Mx * tau) * int_u_sq;
}

double discrepancy_rhs_linear(double dx0, double int_u, double Lx, double t) {
  if (dx0 < 0.0 || int_u < 0.0)
    throw Error("discrepancy_rhs_linear requires nonnegative inputs");
  return (dx0 + int_u) * std::exp(Lx * t);
}

namespace {

// grid over [0, t]: multiples of dt plus breakpoints of both signals
std::vector<double> quad_grid(const Signal& u1, const Signal& u2, double t,
                              double dt) {
  double tol = 1e-12 * std::max(1.0, t);
  std::vector<double> grid;
  long long nsteps = static_cast<long long>(std::floor(t / dt + 1e-9));
  for (long long k = 0; k <= nsteps; ++k) {
    double s = static_cast<double>(k) * dt;
    if (s > t + tol) break;
    grid.push_back(s);
  }
  if (grid.back() < t - tol) grid.push_back(t);
  for (const Signal* u : {&u1, &u2})
    for (double bp : u->breakpoints())
      if (bp > tol && bp < t - tol) grid.push_back(bp);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [tol](double a, double b) { return std::abs(a - b) <= tol; }),
             grid.end());
  return grid;
}

template <typename F>
double simpson_cells(const std::vector<double>& grid, const Signal& u1,
                     const Signal& u2, F&& f) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    double a = grid[k], b = grid[k + 1], h = b - a;
    double fa = f(u1.eval(a) - u2.eval(a));
    double fm = f(u1.eval(0.5 * (a + b)) - u2.eval(0.5 * (a + b)));
    double fb = f(u1.eval_left(b) - u2.eval_left(b));
    total += h / 6.0 * (fa + 4.0 * fm + fb);
  }
  return total;
}

}  // namespace

double integral_diff_sq(const Signal& u1, const Signal& u2, double t,
                        double dt) {
  auto grid = quad_grid(u1, u2, t, dt);
  return simpson_cells(grid, u1, u2, [](const Vec& d) {
    double n = inf_norm(d);
    return n * n;
  });
}

double integral_diff(const Signal& u1, const Signal& u2, double t, double dt) {
  auto grid = quad_grid(u1, u2, t, dt);
  return simpson_cells(grid, u1, u2, [](const Vec& d) { return inf_norm(d); });
}

}  // namespace estent
