#ifndef ESTENT_SWITCHED_HPP
#define ESTENT_SWITCHED_HPP

#include <cstdint>
#include <functional>

#include "estent/dynamics.hpp"

namespace estent {

struct Mode {
  std::string name;
  std::function<Vec(const Vec&)> field;
  std::function<Mat(const Vec&)> jac;  // optional
  double lip = 0.0;
};

struct SwitchedSystem {
  std::vector<Mode> modes;
  int n = 0;
  double Td = 0.0;  // minimum dwell time

  int num_modes() const { return static_cast<int>(modes.size()); }
  double max_lip() const;
  double sum_lip() const;
};

SwitchedSystem make_scalar_modes(double a, double b, double Td);    // ax / bx
SwitchedSystem make_constant_modes(double a, double b, double Td);  // xdot = a / b

struct ReachConfig {
  Box K;
  double horizon = 0.0;   // 0: defaults to 5 * Td
  int n_signals = 100;
  double dt = 1e-3;
  std::uint64_t seed = 0;
  int keep_every = 10;          // subsample collected states per trajectory
  std::size_t max_samples = 400;  // global cap; max-norm state always kept
};

// Monte-Carlo reach samples: random dwell-respecting switching signals from
// random starts in K, states collected along the trajectories.
std::vector<Vec> sample_reach(const SwitchedSystem& sw, const ReachConfig& cfg);

// max over ordered mode pairs and samples of the trapezoid integral over
// [0, t] of ||f_p1(xi_{x,p1}(s)) - f_p2(xi_{x,p2}(s))||_inf.
double mode_divergence(const SwitchedSystem& sw, double t,
                       const std::vector<Vec>& reach_samples, double dt);

// Cumulative divergence estimate on a grid over [0, tmax]; nondecreasing by
// construction (running maximum of cumulative integrals).
std::vector<std::pair<double, double>> mode_divergence_table(
    const SwitchedSystem& sw, double tmax, const std::vector<Vec>& samples,
    double dt);

struct SwitchedBound {
  double bound = std::numeric_limits<double>::infinity();
  bool finite = false;
  double Te = 0.0;
  double d_at_Te = 0.0;
  double threshold = 0.0;  // eps (1 - e^{-alpha (Td - Te)})
  std::string diagnosis;
};

// (L_x + alpha) n / ln2 + log2(N) / Te with Te the largest point in
// (0, min(tau, Td)] satisfying d(Te) <= eps (1 - e^{-alpha (Td - Te)}),
// found by bisection (50 iterations) on the monotone divergence estimate.
SwitchedBound switched_bound(const SwitchedSystem& sw, double eps, double alpha,
                             double tau, const ReachConfig& cfg);

// One-hot open-system embedding: f(x, u) = sum_p u[p-1] f_p(x) with
// mu = 0, eta = 1 and U0 = [0,1]^N.
System embed_as_open(const SwitchedSystem& sw);
VariationBudget embedding_budget(const SwitchedSystem& sw);

struct EmbeddedGains {
  double gx = 0.0;  // n sum_p L_p + N/2
  double gu = 0.0;  // sqrt(m) max over samples of max_p ||f_p(x)||_inf
};
EmbeddedGains embedded_gains(const SwitchedSystem& sw,
                             const std::vector<Vec>& reach_samples);

// One-hot piecewise-constant signal from a mode sequence (1-based modes).
Signal switching_signal(const TimeSequence& tseq, const std::vector<int>& modes,
                        int num_modes, double Td, bool enforce_dwell);

// Direct switched simulation: the active mode is selected from the one-hot
// signal (argmax), integrated on the same refined grid as open systems.
Trajectory integrate_switched(const SwitchedSystem& sw, const Vec& x0,
                              const Signal& onehot, double T, double dt);

}  // namespace estent

#endif
