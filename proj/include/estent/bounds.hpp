#ifndef ESTENT_BOUNDS_HPP
#define ESTENT_BOUNDS_HPP

#include <vector>

#include "estent/common.hpp"

namespace estent {

struct BoundInputs {
  int n = 1;
  int m = 1;
  double eps = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  double Mx = 0.0;  // state gain (G_x or M_x)
  double Mu = 0.0;  // input gain (G_u or M_u)
  double Lx = 0.0;  // global Lipschitz constant, affine mode only
};

enum class BoundMode { Quadratic, Affine, RhoForm };

const char* bound_mode_name(BoundMode mode);

struct BoundResult {
  double dx = 0.0, du = 0.0, Tp = 0.0;
  double gc = 0.0;
  double go = std::numeric_limits<double>::infinity();  // bits/time
  BoundMode mode = BoundMode::Quadratic;
  bool feasible = false;
  double rho = 0.0;
};

// quantization-error budget g_c = g_{c,x} + g_{c,u}
double g_c_x(double dx, double Tp, const BoundInputs& b);
double g_c_u(double du, double Tp, const BoundInputs& b);
double g_c(double dx, double du, double Tp, const BoundInputs& b);

// entropy / bit-rate bound, logs base 2
double g_o(double dx, double du, double Tp, const BoundInputs& b);

// affine-input variants; the feasibility threshold is eps, not eps^2
double g_c_linear_x(double dx, double Tp, const BoundInputs& b);
double g_c_linear_u(double du, double Tp, const BoundInputs& b);
double g_c_linear(double dx, double du, double Tp, const BoundInputs& b);

// dx = eps e^{-(Mx+rho) Tp}; requires g_{c,u}(du,Tp) <= eps^2 (1 - e^{-rho Tp});
// bound (Mx+rho) n / ln 2 + log2(P) / Tp.
BoundResult rho_form(double rho, double du, double Tp, const BoundInputs& b);

struct SearchGrids {
  std::vector<double> Tp;
  std::vector<double> du;
  int refine_passes = 2;

  // Tp: 64 log-spaced in [1e-6, 10]; du: 32 log-spaced in
  // [eps*1e-3, max(eta+mu, eps)*10].
  static SearchGrids defaults(const BoundInputs& b);
};

std::vector<double> log_space(double lo, double hi, int count);

// Grid search over (Tp, du) with dx chosen to exhaust the residual budget,
// then golden-section refinement passes on Tp around the winner.
BoundResult optimize(const BoundInputs& b, BoundMode mode,
                     const SearchGrids& grids);

// All grid evaluations (for CSV sweeps).
std::vector<BoundResult> sweep(const BoundInputs& b, BoundMode mode,
                               const SearchGrids& grids);

}  // namespace estent

#endif
