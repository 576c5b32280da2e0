#ifndef ESTENT_DYNAMICS_HPP
#define ESTENT_DYNAMICS_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "estent/signals.hpp"

namespace estent {

using FieldFn = std::function<Vec(const Vec& x, const Vec& u)>;
using JacFn = std::function<Mat(const Vec& x, const Vec& u)>;

// Continuous-time system xdot = f(x, u). Immutable after construction.
struct System {
  std::string name;
  int n = 0;
  int m = 0;
  FieldFn field;
  JacFn jac_x;  // optional analytic Jacobian wrt state
  JacFn jac_u;  // optional analytic Jacobian wrt input
  double lip_x = 0.0;
  double lip_u = 0.0;
  bool affine_input = false;  // xdot = f(x) + B u with unit selection columns
};

Vec evaluate_field(const System& sys, const Vec& x, const Vec& u);

// Analytic Jacobian when available, otherwise central finite differences with
// per-coordinate step h = 1e-6 * max(1, |x_i|).
Mat jacobian_x(const System& sys, const Vec& x, const Vec& u);
Mat jacobian_u(const System& sys, const Vec& x, const Vec& u);

struct Trajectory {
  std::vector<double> times;   // times[0] = 0 (or the window start)
  std::vector<Vec> states;
  double step = 0.0;           // requested dt

  const Vec& back() const { return states.back(); }
  // Index of an exact grid time (binary search), throws if absent.
  std::size_t index_at(double t, double tol = 1e-9) const;
  // Linear interpolation between grid points.
  Vec value(double t) const;
};

// Classic fixed-step RK4 on [0, T]. The grid is the multiples of dt together
// with every discontinuity of u and T itself; u is evaluated right-
// continuously at cell starts and by its left limit at cell ends, so each
// RK4 cell sees a single smooth piece of the input.
Trajectory integrate(const System& sys, const Vec& x0, const Signal& u,
                     double T, double dt);

// Same, but over the window [t0, t0+T] of the signal's time axis; the
// returned trajectory uses local times starting at 0.
Trajectory integrate_window(const System& sys, const Vec& x0, const Signal& u,
                            double t0, double T, double dt);

// Built-in systems. Parameters not present in `params` take their defaults.
System make_system(const std::string& name,
                   const std::map<std::string, double>& params = {});
std::vector<std::string> builtin_system_names();

// Plug-in registration: makes `sys.name` available to make_system.
void register_system(const System& sys);

System make_integrator();
System make_simple();                 // xdot = u
System make_dubin(double v = 10.0);
System make_harrier(double mp = 100.0, double g = 9.81, double r = 5.0,
                    double c = 100.0, double J = 50.0, double umax = 100.0);
System make_pendulum(double k = 0.98, double I = 1.0);  // k = M g l / I
System make_scalar_linear(double a);  // xdot = a x (input ignored)

}  // namespace estent

#endif
