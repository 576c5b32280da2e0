#include "estent/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace estent {

Vec evaluate_field(const System& sys, const Vec& x, const Vec& u) {
  if (x.size() != sys.n)
    throw DimensionError("state dimension mismatch: got " +
                         std::to_string(x.size()) + ", expected " +
                         std::to_string(sys.n));
  if (u.size() != sys.m)
    throw DimensionError("input dimension mismatch: got " +
                         std::to_string(u.size()) + ", expected " +
                         std::to_string(sys.m));
  return sys.field(x, u);
}

namespace {

void check_finite(const Vec& v, const std::string& what) {
  for (int i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i]))
      throw Error("non-finite " + what + " at coordinate " + std::to_string(i));
}

}  // namespace

Mat jacobian_x(const System& sys, const Vec& x, const Vec& u) {
  if (sys.jac_x) return sys.jac_x(x, u);
  Mat J(sys.n, sys.n);
  for (int i = 0; i < sys.n; ++i) {
    double h = 1e-6 * std::max(1.0, std::abs(x[i]));
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    Vec fp = evaluate_field(sys, xp, u);
    Vec fm = evaluate_field(sys, xm, u);
    check_finite(fp, "field evaluation");
    check_finite(fm, "field evaluation");
    J.col(i) = (fp - fm) / (2.0 * h);
  }
  return J;
}

Mat jacobian_u(const System& sys, const Vec& x, const Vec& u) {
  if (sys.jac_u) return sys.jac_u(x, u);
  Mat J(sys.n, sys.m);
  for (int i = 0; i < sys.m; ++i) {
    double h = 1e-6 * std::max(1.0, std::abs(u[i]));
    Vec up = u, um = u;
    up[i] += h;
    um[i] -= h;
    Vec fp = evaluate_field(sys, x, up);
    Vec fm = evaluate_field(sys, x, um);
    check_finite(fp, "field evaluation");
    check_finite(fm, "field evaluation");
    J.col(i) = (fp - fm) / (2.0 * h);
  }
  return J;
}

std::size_t Trajectory::index_at(double t, double tol) const {
  auto it = std::lower_bound(times.begin(), times.end(), t - tol);
  if (it == times.end() || std::abs(*it - t) > tol)
    throw Error("time " + std::to_string(t) + " not on trajectory grid");
  return static_cast<std::size_t>(it - times.begin());
}

Vec Trajectory::value(double t) const {
  if (t <= times.front()) return states.front();
  if (t >= times.back()) return states.back();
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t j = static_cast<std::size_t>(it - times.begin());
  double t0 = times[j - 1], t1 = times[j];
  double w = (t - t0) / (t1 - t0);
  return (1.0 - w) * states[j - 1] + w * states[j];
}

Trajectory integrate_window(const System& sys, const Vec& x0, const Signal& u,
                            double t0, double T, double dt) {
  if (!(T > 0.0)) throw Error("integrate requires T > 0");
  if (!(dt > 0.0)) throw Error("integrate requires dt > 0");
  if (x0.size() != sys.n) throw DimensionError("x0 dimension mismatch");

  // grid: multiples of dt, plus signal discontinuities, plus T
  double tol = 1e-12 * std::max(1.0, std::abs(t0) + T);
  std::vector<double> grid;
  long long nsteps = static_cast<long long>(std::floor(T / dt + 1e-9));
  grid.reserve(static_cast<std::size_t>(nsteps) + 4);
  for (long long k = 0; k <= nsteps; ++k) {
    double t = static_cast<double>(k) * dt;
    if (t > T + tol) break;
    grid.push_back(t);
  }
  if (grid.back() < T - tol) grid.push_back(T);
  for (double bp : u.breakpoints()) {
    double local = bp - t0;
    if (local > tol && local < T - tol) grid.push_back(local);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [tol](double a, double b) { return std::abs(a - b) <= tol; }),
             grid.end());

  Trajectory traj;
  traj.step = dt;
  traj.times = grid;
  traj.states.reserve(grid.size());
  Vec x = x0;
  check_finite(x, "state");
  traj.states.push_back(x);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    double ta = grid[k], tb = grid[k + 1];
    double h = tb - ta;
    // one smooth input piece per cell: right limit at the start, left at the end
    Vec ua = u.eval(t0 + ta);
    Vec um = u.eval(t0 + 0.5 * (ta + tb));
    Vec ub = u.eval_left(t0 + tb);
    Vec k1 = sys.field(x, ua);
    Vec k2 = sys.field(x + 0.5 * h * k1, um);
    Vec k3 = sys.field(x + 0.5 * h * k2, um);
    Vec k4 = sys.field(x + h * k3, ub);
    x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!all_finite(x))
      throw DivergenceError("trajectory diverged (last finite time " +
                                std::to_string(ta) + ")",
                            ta);
    traj.states.push_back(x);
  }
  return traj;
}

Trajectory integrate(const System& sys, const Vec& x0, const Signal& u,
                     double T, double dt) {
  return integrate_window(sys, x0, u, 0.0, T, dt);
}

// ---------------------------------------------------------------------------
// built-in systems

System make_integrator() {
  System s;
  s.name = "integrator";
  s.n = 1;
  s.m = 1;
  s.field = [](const Vec&, const Vec& u) { return u; };
  s.jac_x = [](const Vec&, const Vec&) { return Mat::Zero(1, 1); };
  s.jac_u = [](const Vec&, const Vec&) { return Mat::Identity(1, 1); };
  s.lip_x = 0.0;
  s.lip_u = 1.0;
  s.affine_input = true;
  return s;
}

System make_simple() {
  System s = make_integrator();
  s.name = "simple";
  return s;
}

System make_dubin(double v) {
  System s;
  s.name = "dubin";
  s.n = 3;
  s.m = 1;
  s.field = [v](const Vec& x, const Vec& u) {
    Vec f(3);
    f[0] = v * std::cos(x[2]);
    f[1] = v * std::sin(x[2]);
    f[2] = u[0];
    return f;
  };
  s.jac_x = [v](const Vec& x, const Vec&) {
    Mat J = Mat::Zero(3, 3);
    J(0, 2) = -v * std::sin(x[2]);
    J(1, 2) = v * std::cos(x[2]);
    return J;
  };
  s.jac_u = [](const Vec&, const Vec&) {
    Mat J = Mat::Zero(3, 1);
    J(2, 0) = 1.0;
    return J;
  };
  s.lip_x = v;
  s.lip_u = 1.0;
  return s;
}

System make_harrier(double mp, double g, double r, double c, double J,
                    double umax) {
  System s;
  s.name = "harrier";
  s.n = 6;
  s.m = 2;
  s.field = [mp, g, r, c, J](const Vec& x, const Vec& u) {
    Vec f(6);
    double sin3 = std::sin(x[2]), cos3 = std::cos(x[2]);
    f[0] = x[3];
    f[1] = x[4];
    f[2] = x[5];
    f[3] = -g * sin3 - c * x[3] / mp + u[0] / mp * cos3 - u[1] / mp * sin3;
    f[4] = g * (cos3 - 1.0) - c * x[4] / mp + u[0] / mp * sin3 + u[1] / mp * cos3;
    f[5] = r / J * u[0];
    return f;
  };
  s.jac_x = [mp, g, c](const Vec& x, const Vec& u) {
    Mat Jm = Mat::Zero(6, 6);
    double sin3 = std::sin(x[2]), cos3 = std::cos(x[2]);
    Jm(0, 3) = 1.0;
    Jm(1, 4) = 1.0;
    Jm(2, 5) = 1.0;
    Jm(3, 2) = -g * cos3 - u[0] / mp * sin3 - u[1] / mp * cos3;
    Jm(3, 3) = -c / mp;
    Jm(4, 2) = -g * sin3 + u[0] / mp * cos3 - u[1] / mp * sin3;
    Jm(4, 4) = -c / mp;
    return Jm;
  };
  s.jac_u = [mp, r, J](const Vec& x, const Vec&) {
    Mat Jm = Mat::Zero(6, 2);
    double sin3 = std::sin(x[2]), cos3 = std::cos(x[2]);
    Jm(3, 0) = cos3 / mp;
    Jm(3, 1) = -sin3 / mp;
    Jm(4, 0) = sin3 / mp;
    Jm(4, 1) = cos3 / mp;
    Jm(5, 0) = r / J;
    return Jm;
  };
  s.lip_x = std::max(1.0, g + 2.0 * umax / mp + c / mp);
  s.lip_u = std::max(std::sqrt(2.0) / mp, r / J);
  return s;
}

System make_pendulum(double k, double I) {
  System s;
  s.name = "pendulum";
  s.n = 2;
  s.m = 1;
  s.field = [k, I](const Vec& x, const Vec& u) {
    Vec f(2);
    f[0] = x[1];
    f[1] = -k * std::sin(x[0]) + u[0] / I;
    return f;
  };
  s.jac_x = [k](const Vec& x, const Vec&) {
    Mat J = Mat::Zero(2, 2);
    J(0, 1) = 1.0;
    J(1, 0) = -k * std::cos(x[0]);
    return J;
  };
  s.jac_u = [I](const Vec&, const Vec&) {
    Mat J = Mat::Zero(2, 1);
    J(1, 0) = 1.0 / I;
    return J;
  };
  s.lip_x = std::max(1.0, k);
  s.lip_u = 1.0 / I;
  s.affine_input = (I == 1.0);
  return s;
}

System make_scalar_linear(double a) {
  System s;
  s.name = "linear";
  s.n = 1;
  s.m = 1;
  s.field = [a](const Vec& x, const Vec&) { return Vec(a * x); };
  s.jac_x = [a](const Vec&, const Vec&) {
    Mat J(1, 1);
    J(0, 0) = a;
    return J;
  };
  s.jac_u = [](const Vec&, const Vec&) { return Mat::Zero(1, 1); };
  s.lip_x = std::abs(a);
  s.lip_u = 0.0;
  s.affine_input = true;
  return s;
}

namespace {

std::mutex g_registry_mutex;
std::map<std::string, System>& registry() {
  static std::map<std::string, System> reg;
  return reg;
}

double param(const std::map<std::string, double>& params, const std::string& k,
             double def) {
  auto it = params.find(k);
  return it == params.end() ? def : it->second;
}

void check_params(const std::map<std::string, double>& params,
                  std::initializer_list<const char*> known) {
  for (const auto& [k, v] : params) {
    bool ok = false;
    for (const char* kn : known)
      if (k == kn) ok = true;
    if (!ok) throw Error("unknown system parameter: " + k);
  }
}

}  // namespace

void register_system(const System& sys) {
  std::lock_guard<std::mutex> lock(g_registry_mutex);
  registry()[sys.name] = sys;
}

System make_system(const std::string& name,
                   const std::map<std::string, double>& params) {
  if (name == "integrator") {
    check_params(params, {});
    return make_integrator();
  }
  if (name == "simple") {
    check_params(params, {});
    return make_simple();
  }
  if (name == "dubin") {
    check_params(params, {"v"});
    return make_dubin(param(params, "v", 10.0));
  }
  if (name == "harrier") {
    check_params(params, {"mp", "g", "r", "c", "J", "umax"});
    return make_harrier(param(params, "mp", 100.0), param(params, "g", 9.81),
                        param(params, "r", 5.0), param(params, "c", 100.0),
                        param(params, "J", 50.0), param(params, "umax", 100.0));
  }
  if (name == "pendulum") {
    check_params(params, {"k", "I"});
    return make_pendulum(param(params, "k", 0.98), param(params, "I", 1.0));
  }
  if (name == "linear") {
    check_params(params, {"a"});
    return make_scalar_linear(param(params, "a", 1.0));
  }
  {
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto it = registry().find(name);
    if (it != registry().end()) return it->second;
  }
  throw Error("unknown system: " + name);
}

std::vector<std::string> builtin_system_names() {
  std::vector<std::string> names = {"integrator", "simple",   "dubin",
                                    "harrier",    "pendulum", "linear"};
  std::lock_guard<std::mutex> lock(g_registry_mutex);
  for (const auto& [k, v] : registry()) names.push_back(k);
  return names;
}

}  // namespace estent
