#ifndef ESTENT_ESTIMATOR_HPP
#define ESTENT_ESTIMATOR_HPP

#include <array>
#include <iosfwd>

#include "estent/bounds.hpp"
#include "estent/dynamics.hpp"

namespace estent {

struct EstimatorParams {
  double T = 0.0;    // horizon
  double Tp = 0.0;   // sampling period
  double dx = 0.0;   // state quantization
  double du = 0.0;   // input quantization
  double eps = 0.0;  // accuracy
  double rho = 0.0;  // decay rate, exponential variant only
  double dt_hint = 0.0;  // 0: default Tp/20 capped at 1e-3
};

// internal integration step: Tp divided into an integral number of cells
double estimator_dt(const EstimatorParams& p);

struct Feasibility {
  bool ok = false;
  double gc = 0.0;
  double threshold = 0.0;
};

enum class FeasMode { Quadratic, Affine };

Feasibility check_feasibility(const EstimatorParams& p, const BoundInputs& b,
                              FeasMode mode = FeasMode::Quadratic);

struct EstimatorStep {
  long long i = 0;
  Vec x_sample, u_sample;  // not available to the decoder
  Vec qx, qu;
  long long state_index = 0;
  long long input_index = 0;
  Box sx, su;
  bool x_contained = true;
  bool u_contained = true;
};

// Symbol stream: header `n m Tp dx du eps mu eta`, then per step
// `i state_index input_index` (decimal integers).
struct SymbolStream {
  int n = 0, m = 0;
  double Tp = 0, dx = 0, du = 0, eps = 0, mu = 0, eta = 0;
  std::vector<std::array<long long, 3>> steps;

  void write(std::ostream& os) const;
  static SymbolStream read(std::istream& is);  // truncated input -> prefix
};

struct ApproximatingFunction {
  std::vector<EstimatorStep> steps;
  std::vector<Trajectory> segments;  // z_i on local time [0, Tp]
  double Tp = 0.0;
  double dt = 0.0;
  double realized_sup_error = 0.0;

  SymbolStream stream(const EstimatorParams& p,
                      const VariationBudget& budget) const;
  // z(t), reading segment floor(t/Tp) at local grid time
  Vec z_at(double t) const;
};

// Algorithm: sample x_i = xi(i Tp) and u_i = u(i Tp), quantize both against
// moving grids, simulate z_i from the quantized pair, transmit both symbol
// indices each step.
ApproximatingFunction encode(const System& sys, const Vec& x0, const Signal& u,
                             const VariationBudget& budget, const Box& K,
                             const EstimatorParams& p, const BoundInputs& gains,
                             FeasMode mode = FeasMode::Quadratic);

// Exponential-decay variant: constant input (mu = eta = 0), state cell radius
// eps e^{-i rho Tp} and grid size dx e^{-i rho Tp}.
ApproximatingFunction encode_exp(const System& sys, const Vec& x0,
                                 const Signal& u, const Box& K,
                                 const EstimatorParams& p,
                                 const BoundInputs& gains);

// Reconstructs z from symbols only; identical grids and integrations as the
// encoder, so the result is bit-identical to the encoder's segments.
std::vector<Trajectory> decode(const SymbolStream& stream, const Box& K,
                               const VariationBudget& budget, const System& sys,
                               const EstimatorParams& p);

// (1/Tp) (n log2 ceil(eps/dx) + m log2 ceil((eta + mu Tp)/du + 1))
double bit_rate(const EstimatorParams& p, int n, int m,
                const VariationBudget& budget);

// sup over the shared grid of ||z(t) - truth(t)||_inf; truth segment k covers
// [k Tp, (k+1) Tp] of the true trajectory.
double sup_error(const std::vector<Trajectory>& segments,
                 const std::vector<Trajectory>& truth_segments);

}  // namespace estent

#endif
