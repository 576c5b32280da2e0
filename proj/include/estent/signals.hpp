#ifndef ESTENT_SIGNALS_HPP
#define ESTENT_SIGNALS_HPP

#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "estent/quantization.hpp"

namespace estent {

// Variation budget for slowly-varying inputs: ||u(t+tau)-u(t)|| <= mu*tau+eta
// with u(0) in the compact box u0_box.
struct VariationBudget {
  double mu = 0.0;
  double eta = 0.0;
  Box u0_box;
};

// Piecewise signal. Each piece starts at t0 and is either constant or an
// affine ramp value + slope*(t - t0). Evaluation is right-continuous at
// breakpoints; past the last piece the signal extends by its final piece.
struct Piece {
  enum Kind { Constant, Ramp };
  double t0 = 0.0;
  Kind kind = Constant;
  Vec value;
  Vec slope;  // used when kind == Ramp
};

struct Signal {
  std::vector<Piece> pieces;
  double horizon = 0.0;
  int dim = 1;

  Vec eval(double t) const;       // u(t) = u(t+)
  Vec eval_left(double t) const;  // u(t-)
  std::vector<double> breakpoints() const;
};

Signal constant_signal(const Vec& v, double horizon);
Signal constant_signal(double v, double horizon);

// t_0 = 0 < t_1 < ... <= T
struct TimeSequence {
  std::vector<double> instants;

  std::vector<double> gaps() const;
  double horizon() const { return instants.empty() ? 0.0 : instants.back(); }
  double min_gap() const;
};

struct VariationCheck {
  bool ok = true;
  double t1 = 0.0, t2 = 0.0;  // first violating pair (t1 < t2)
  double gap = 0.0;           // ||u(t2)-u(t1)||
  double allowed = 0.0;       // mu*(t2-t1)+eta
  bool u0_ok = true;
};

// Sampled check of the variation bound on a uniform grid plus all
// breakpoints (both one-sided values at each breakpoint).
VariationCheck check_variation(const Signal& u, const VariationBudget& b,
                               int n_samples, double tol);

// Piecewise-constant signal over {a,b}: u(t) = se[i] on [t_i, t_{i+1}).
Signal make_piecewise_constant(const TimeSequence& tseq, const std::string& se,
                               double a, double b);

// Uniform switching instants k*tau with tau = 3 eps / (a-b).
TimeSequence tseq_uniform(double T, double eps, double a, double b,
                          long long max_switches);

// Shrinking gaps v_1 = 2 eps/(a-b), v_{i+1} = v_i e^{-alpha v_i}.
TimeSequence tseq_alpha(double T, double eps, double alpha, double a, double b,
                        long long max_switches);

// floor((a-b-alpha*eps)/(2*alpha*eps) * (e^{alpha T}-1)), 0 when nonpositive.
long long tseq_alpha_count_lower_bound(double T, double eps, double alpha,
                                       double a, double b);

// v_1 = 2 eps/(|x0|(a-b)), v_{i+1} = v_i e^{-b v_i}; optional dwell-time
// thinning keeps switch instants only in intervals [j Td, (j+1) Td] with odd j.
TimeSequence tseq_infd(double T, double eps, double b_rate, double x0, double a,
                       std::optional<double> Td, long long max_switches);

void save_signal(const Signal& u, std::ostream& os);
Signal load_signal(std::istream& is);

// Random piecewise-constant signal inside the budget: u(0) drawn from u0_box,
// later piece values within eta/2 of u(0) so every pair satisfies the bound.
Signal random_slow_piecewise_constant(const VariationBudget& b, double T,
                                      int pieces, std::mt19937_64& rng);

}  // namespace estent

#endif
