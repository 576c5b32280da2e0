#include "estent/switched.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace estent {

double SwitchedSystem::max_lip() const {
  double l = 0.0;
  for (const Mode& m : modes) l = std::max(l, m.lip);
  return l;
}

double SwitchedSystem::sum_lip() const {
  double l = 0.0;
  for (const Mode& m : modes) l += m.lip;
  return l;
}

SwitchedSystem make_scalar_modes(double a, double b, double Td) {
  SwitchedSystem sw;
  sw.n = 1;
  sw.Td = Td;
  sw.modes.push_back(Mode{"ax", [a](const Vec& x) { return Vec(a * x); },
                          [a](const Vec&) {
                            Mat J(1, 1);
                            J(0, 0) = a;
                            return J;
                          },
                          std::abs(a)});
  sw.modes.push_back(Mode{"bx", [b](const Vec& x) { return Vec(b * x); },
                          [b](const Vec&) {
                            Mat J(1, 1);
                            J(0, 0) = b;
                            return J;
                          },
                          std::abs(b)});
  return sw;
}

SwitchedSystem make_constant_modes(double a, double b, double Td) {
  SwitchedSystem sw;
  sw.n = 1;
  sw.Td = Td;
  auto constant = [](double c) {
    return Mode{"const", [c](const Vec& x) {
                  Vec f(x.size());
                  f.setConstant(c);
                  return f;
                },
                [](const Vec&) { return Mat::Zero(1, 1); }, 0.0};
  };
  sw.modes.push_back(constant(a));
  sw.modes.back().name = "const_a";
  sw.modes.push_back(constant(b));
  sw.modes.back().name = "const_b";
  return sw;
}

namespace {

// autonomous RK4 for one mode
Trajectory integrate_mode(const Mode& mode, const Vec& x0, double T, double dt) {
  Trajectory traj;
  traj.step = dt;
  long long nsteps = static_cast<long long>(std::ceil(T / dt - 1e-9));
  nsteps = std::max(nsteps, 1LL);
  double h = T / static_cast<double>(nsteps);
  Vec x = x0;
  traj.times.push_back(0.0);
  traj.states.push_back(x);
  for (long long k = 0; k < nsteps; ++k) {
    Vec k1 = mode.field(x);
    Vec k2 = mode.field(x + 0.5 * h * k1);
    Vec k3 = mode.field(x + 0.5 * h * k2);
    Vec k4 = mode.field(x + h * k3);
    x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!all_finite(x))
      throw DivergenceError("mode trajectory diverged", traj.times.back());
    traj.times.push_back(static_cast<double>(k + 1) * h);
    traj.states.push_back(x);
  }
  return traj;
}

}  // namespace

std::vector<Vec> sample_reach(const SwitchedSystem& sw, const ReachConfig& cfg) {
  double H = cfg.horizon > 0.0 ? cfg.horizon : 5.0 * sw.Td;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> mode_pick(0, sw.num_modes() - 1);
  std::vector<Vec> samples;
  for (int s = 0; s < cfg.n_signals; ++s) {
    Vec x(sw.n);
    for (int i = 0; i < sw.n; ++i)
      x[i] = cfg.K.lo[i] + unit(rng) * cfg.K.width(i);
    samples.push_back(x);
    double t = 0.0;
    while (t < H) {
      double dwell = sw.Td * (1.0 + unit(rng));  // dwell in [Td, 2 Td]
      dwell = std::min(dwell, H - t);
      if (dwell <= 0.0) break;
      const Mode& mode = sw.modes[static_cast<std::size_t>(mode_pick(rng))];
      Trajectory seg = integrate_mode(mode, x, dwell, cfg.dt);
      for (std::size_t k = 0; k < seg.states.size(); ++k)
        if (static_cast<int>(k) % cfg.keep_every == 0 || k + 1 == seg.states.size())
          samples.push_back(seg.states[k]);
      x = seg.states.back();
      t += dwell;
    }
  }
  if (samples.size() > cfg.max_samples && cfg.max_samples > 0) {
    std::size_t extreme = 0;
    for (std::size_t i = 1; i < samples.size(); ++i)
      if (inf_norm(samples[i]) > inf_norm(samples[extreme])) extreme = i;
    std::vector<Vec> reduced;
    std::size_t stride = samples.size() / cfg.max_samples + 1;
    for (std::size_t i = 0; i < samples.size(); i += stride)
      reduced.push_back(samples[i]);
    reduced.push_back(samples[extreme]);
    samples.swap(reduced);
  }
  return samples;
}

std::vector<std::pair<double, double>> mode_divergence_table(
    const SwitchedSystem& sw, double tmax, const std::vector<Vec>& samples,
    double dt) {
  if (samples.empty()) throw Error("mode divergence requires reach samples");
  long long nsteps = static_cast<long long>(std::ceil(tmax / dt - 1e-9));
  nsteps = std::max(nsteps, 1LL);
  double h = tmax / static_cast<double>(nsteps);
  std::vector<double> dmax(static_cast<std::size_t>(nsteps) + 1, 0.0);
  int N = sw.num_modes();
  for (const Vec& x : samples) {
    for (int p1 = 0; p1 < N; ++p1) {
      for (int p2 = 0; p2 < N; ++p2) {
        if (p1 == p2) continue;
        Trajectory t1, t2;
        try {
          t1 = integrate_mode(sw.modes[p1], x, tmax, h);
          t2 = integrate_mode(sw.modes[p2], x, tmax, h);
        } catch (const DivergenceError& e) {
          throw DivergenceError(
              std::string("mode divergence sample diverged: ") + e.what(),
              e.last_finite_time);
        }
        double cum = 0.0;
        double prev = inf_norm(sw.modes[p1].field(t1.states[0]) -
                               sw.modes[p2].field(t2.states[0]));
        for (std::size_t k = 1; k < t1.states.size(); ++k) {
          double curr = inf_norm(sw.modes[p1].field(t1.states[k]) -
                                 sw.modes[p2].field(t2.states[k]));
          cum += 0.5 * (prev + curr) * h;
          prev = curr;
          dmax[k] = std::max(dmax[k], cum);
        }
      }
    }
  }
  // enforce monotonicity (running maximum) and attach times
  std::vector<std::pair<double, double>> table;
  double running = 0.0;
  for (std::size_t k = 0; k < dmax.size(); ++k) {
    running = std::max(running, dmax[k]);
    table.emplace_back(static_cast<double>(k) * h, running);
  }
  return table;
}

double mode_divergence(const SwitchedSystem& sw, double t,
                       const std::vector<Vec>& reach_samples, double dt) {
  if (!(t > 0.0)) throw Error("mode_divergence requires t > 0");
  auto table = mode_divergence_table(sw, t, reach_samples, dt);
  return table.back().second;
}

namespace {

double interp_table(const std::vector<std::pair<double, double>>& table,
                    double t) {
  if (t <= table.front().first) return table.front().second;
  if (t >= table.back().first) return table.back().second;
  auto it = std::upper_bound(
      table.begin(), table.end(), t,
      [](double v, const std::pair<double, double>& row) { return v < row.first; });
  std::size_t j = static_cast<std::size_t>(it - table.begin());
  double t0 = table[j - 1].first, t1 = table[j].first;
  double w = (t - t0) / (t1 - t0);
  return (1.0 - w) * table[j - 1].second + w * table[j].second;
}

}  // namespace

SwitchedBound switched_bound(const SwitchedSystem& sw, double eps, double alpha,
                             double tau, const ReachConfig& cfg) {
  if (!(eps > 0.0 && tau > 0.0)) throw Error("switched_bound requires eps, tau > 0");
  if (alpha < 0.0) throw Error("switched_bound requires alpha >= 0");
  SwitchedBound out;
  double n = static_cast<double>(sw.n);
  double base = (sw.max_lip() + alpha) * n / std::log(2.0);
  int N = sw.num_modes();
  if (N == 1) {
    out.bound = base;
    out.finite = true;
    out.Te = std::min(tau, sw.Td);
    out.diagnosis = "single mode: no switching term";
    return out;
  }

  double tmax = std::min(tau, sw.Td);
  auto samples = sample_reach(sw, cfg);
  auto table = mode_divergence_table(sw, tmax, samples, cfg.dt);
  auto threshold = [&](double Te) {
    return eps * (1.0 - std::exp(-alpha * (sw.Td - Te)));
  };

  // d is nondecreasing and the threshold is nonincreasing in Te, so the
  // feasible set is an interval [0, Te*]; bisect for the crossing.
  auto feasible = [&](double Te) { return interp_table(table, Te) <= threshold(Te); };

  double probe = tmax * 1e-9;
  if (alpha == 0.0 || !feasible(probe)) {
    out.finite = false;
    out.diagnosis = alpha == 0.0
                        ? "alpha = 0 requires d(Te) = 0: no positive Te"
                        : "divergence exceeds the threshold for all Te > 0";
    return out;
  }
  double lo = probe, hi = tmax;
  if (feasible(tmax)) {
    lo = tmax;
  } else {
    for (int it = 0; it < 50; ++it) {
      double mid = 0.5 * (lo + hi);
      if (feasible(mid))
        lo = mid;
      else
        hi = mid;
    }
  }
  out.Te = lo;
  out.d_at_Te = interp_table(table, lo);
  out.threshold = threshold(lo);
  out.bound = base + std::log2(static_cast<double>(N)) / lo;
  out.finite = true;
  return out;
}

System embed_as_open(const SwitchedSystem& sw) {
  System s;
  s.name = "embedded-switched";
  s.n = sw.n;
  s.m = sw.num_modes();
  auto modes = sw.modes;  // value copy keeps the embedding self-contained
  s.field = [modes](const Vec& x, const Vec& u) {
    Vec f = Vec::Zero(x.size());
    for (std::size_t p = 0; p < modes.size(); ++p)
      f += u[static_cast<int>(p)] * modes[p].field(x);
    return f;
  };
  bool have_jacs = true;
  for (const Mode& m : modes)
    if (!m.jac) have_jacs = false;
  if (have_jacs) {
    s.jac_x = [modes](const Vec& x, const Vec& u) {
      Mat J = Mat::Zero(x.size(), x.size());
      for (std::size_t p = 0; p < modes.size(); ++p)
        J += u[static_cast<int>(p)] * modes[p].jac(x);
      return J;
    };
  }
  s.jac_u = [modes](const Vec& x, const Vec&) {
    Mat J(x.size(), static_cast<int>(modes.size()));
    for (std::size_t p = 0; p < modes.size(); ++p)
      J.col(static_cast<int>(p)) = modes[p].field(x);
    return J;
  };
  s.lip_x = sw.sum_lip();
  return s;
}

VariationBudget embedding_budget(const SwitchedSystem& sw) {
  VariationBudget b;
  b.mu = 0.0;
  b.eta = 1.0;
  int N = sw.num_modes();
  b.u0_box = Box(Vec::Zero(N), Vec::Ones(N));
  return b;
}

EmbeddedGains embedded_gains(const SwitchedSystem& sw,
                             const std::vector<Vec>& reach_samples) {
  EmbeddedGains g;
  double N = static_cast<double>(sw.num_modes());
  g.gx = static_cast<double>(sw.n) * sw.sum_lip() + N / 2.0;
  double fmax = 0.0;
  for (const Vec& x : reach_samples)
    for (const Mode& m : sw.modes) fmax = std::max(fmax, inf_norm(m.field(x)));
  g.gu = std::sqrt(N) * fmax;
  return g;
}

Signal switching_signal(const TimeSequence& tseq, const std::vector<int>& modes,
                        int num_modes, double Td, bool enforce_dwell) {
  auto gaps = tseq.gaps();
  if (modes.size() != gaps.size())
    throw Error("mode sequence length does not match the time sequence");
  if (enforce_dwell) {
    // dwell time constrains consecutive switches: the interior instants
    for (std::size_t i = 2; i + 1 < tseq.instants.size(); ++i) {
      double g = tseq.instants[i] - tseq.instants[i - 1];
      if (g < Td - 1e-12)
        throw Error("dwell-time violation: gap " + std::to_string(g) +
                    " < Td = " + std::to_string(Td));
    }
  }
  Signal s;
  s.dim = num_modes;
  s.horizon = tseq.horizon();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 1 || modes[i] > num_modes) throw Error("mode index out of range");
    Vec v = Vec::Zero(num_modes);
    v[modes[i] - 1] = 1.0;
    s.pieces.push_back(Piece{tseq.instants[i], Piece::Constant, v, Vec()});
  }
  if (s.pieces.empty()) {
    Vec v = Vec::Zero(num_modes);
    v[0] = 1.0;
    s.pieces.push_back(Piece{0.0, Piece::Constant, v, Vec()});
  }
  return s;
}

Trajectory integrate_switched(const SwitchedSystem& sw, const Vec& x0,
                              const Signal& onehot, double T, double dt) {
  auto modes = sw.modes;
  System sel;
  sel.name = "switched-direct";
  sel.n = sw.n;
  sel.m = sw.num_modes();
  sel.field = [modes](const Vec& x, const Vec& u) {
    int best = 0;
    for (int p = 1; p < u.size(); ++p)
      if (u[p] > u[best]) best = p;
    return modes[static_cast<std::size_t>(best)].field(x);
  };
  return integrate(sel, x0, onehot, T, dt);
}

}  // namespace estent
