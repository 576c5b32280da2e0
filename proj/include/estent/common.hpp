#ifndef ESTENT_COMMON_HPP
#define ESTENT_COMMON_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace estent {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

// Raised when an integration produces a non-finite state.
struct DivergenceError : Error {
  double last_finite_time;
  DivergenceError(const std::string& msg, double t)
      : Error(msg), last_finite_time(t) {}
};

// Raised by the encoder when a sampled state or input falls outside the
// predicted cell S_{x,i} / S_{u,i}.
struct ContainmentError : Error {
  long long step;
  ContainmentError(const std::string& msg, long long i) : Error(msg), step(i) {}
};

struct StreamError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct InfeasibleError : Error {
  using Error::Error;
};

inline double inf_norm(const Vec& v) { return v.lpNorm<Eigen::Infinity>(); }

inline bool all_finite(const Vec& v) { return v.allFinite(); }

// Ceiling used by all cell-count formulas.  A small relative nudge keeps
// values that are integers up to roundoff from being bumped one cell up.
inline long long ceil_count(double x) {
  double nudged = x - 1e-12 * std::max(1.0, std::abs(x));
  double c = std::ceil(nudged);
  if (c < 1.0) return 1;
  return static_cast<long long>(c);
}

inline double log2_ceil_count(double x) {
  return std::log2(static_cast<double>(ceil_count(x)));
}

}  // namespace estent

#endif
