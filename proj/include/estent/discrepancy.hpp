#ifndef ESTENT_DISCREPANCY_HPP
#define ESTENT_DISCREPANCY_HPP

#include "estent/dynamics.hpp"

namespace estent {

struct Gains {
  enum Kind { Local, GlobalLipschitz };
  double gx = 0.0;  // G_x or M_x
  double gu = 0.0;  // G_u or M_u
  Kind kind = Local;
  std::string provenance;
  std::size_t n_state_samples = 0;
  std::size_t n_input_samples = 0;
};

// max over sample pairs of lambda_max((J_x + J_x^T)/2) + 1/2
double local_gain_x(const System& sys, const std::vector<Vec>& state_samples,
                    const std::vector<Vec>& input_samples);

// max over sample pairs of the spectral norm of J_u
double local_gain_u(const System& sys, const std::vector<Vec>& state_samples,
                    const std::vector<Vec>& input_samples);

Gains local_gains(const System& sys, const std::vector<Vec>& state_samples,
                  const std::vector<Vec>& input_samples);

// (n L_x + 1/2, m sqrt(m) L_u)
Gains lipschitz_gains(double lip_x, double lip_u, int n, int m);

// Uniform lattice over a box, per_dim points per dimension.
std::vector<Vec> lattice_samples(const Box& box, int per_dim = 5);

// e^{2 Mx t} dx0^2 + Mu^2 e^{2 Mx tau} int_u_sq, for 0 <= t <= tau,
// where int_u_sq = integral of ||u - u'||^2 over [0, t].
double discrepancy_rhs(double dx0, double int_u_sq, double Mx, double Mu,
                       double t, double tau);

// (dx0 + int_u) e^{Lx t} for systems of shape xdot = f(x) + u.
double discrepancy_rhs_linear(double dx0, double int_u, double Lx, double t);

// Integrals of the inf-norm input difference over [0, t], evaluated on a
// breakpoint-refined grid with per-cell Simpson quadrature (exact for
// piecewise-constant differences).
double integral_diff_sq(const Signal& u1, const Signal& u2, double t, double dt);
double integral_diff(const Signal& u1, const Signal& u2, double t, double dt);

}  // namespace estent

#endif
