#include "estent/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace estent {

const char* bound_mode_name(BoundMode mode) {
  switch (mode) {
    case BoundMode::Quadratic: return "quadratic";
    case BoundMode::Affine: return "affine";
    case BoundMode::RhoForm: return "rho-form";
  }
  return "?";
}

double g_c_x(double dx, double Tp, const BoundInputs& b) {
  return dx * dx * std::exp(2.0 * b.Mx * Tp);
}

double g_c_u(double du, double Tp, const BoundInputs& b) {
  double s = du + b.eta;
  double bracket = (1.0 / 3.0) * b.mu * b.mu * Tp * Tp * Tp +
                   s * b.mu * Tp * Tp + s * s * Tp;
  return b.Mu * b.Mu * std::exp(2.0 * b.Mx * Tp) * bracket;
}

double g_c(double dx, double du, double Tp, const BoundInputs& b) {
  return g_c_x(dx, Tp, b) + g_c_u(du, Tp, b);
}

double g_o(double dx, double du, double Tp, const BoundInputs& b) {
  double state_bits = static_cast<double>(b.n) * log2_ceil_count(b.eps / dx);
  double input_bits = static_cast<double>(b.m) *
                      log2_ceil_count((b.eta + b.mu * Tp) / du + 1.0);
  return (state_bits + input_bits) / Tp;
}

double g_c_linear_x(double dx, double Tp, const BoundInputs& b) {
  return dx * std::exp(b.Lx * Tp);
}

double g_c_linear_u(double du, double Tp, const BoundInputs& b) {
  return (Tp * du + Tp * (0.5 * b.mu * Tp + b.eta)) * std::exp(b.Lx * Tp);
}

double g_c_linear(double dx, double du, double Tp, const BoundInputs& b) {
  return g_c_linear_x(dx, Tp, b) + g_c_linear_u(du, Tp, b);
}

BoundResult rho_form(double rho, double du, double Tp, const BoundInputs& b) {
  if (!(rho > 0.0)) throw Error("rho_form requires rho > 0");
  BoundResult r;
  r.mode = BoundMode::RhoForm;
  r.rho = rho;
  r.du = du;
  r.Tp = Tp;
  double budget = b.eps * b.eps * (1.0 - std::exp(-rho * Tp));
  double gcu = g_c_u(du, Tp, b);
  if (gcu > budget) {
    r.feasible = false;
    return r;
  }
  r.dx = b.eps * std::exp(-(b.Mx + rho) * Tp);
  r.gc = g_c(r.dx, du, Tp, b);
  double input_bits = static_cast<double>(b.m) *
                      log2_ceil_count((b.eta + b.mu * Tp) / du + 1.0);
  r.go = (b.Mx + rho) * static_cast<double>(b.n) / std::log(2.0) +
         input_bits / Tp;
  r.feasible = true;
  return r;
}

std::vector<double> log_space(double lo, double hi, int count) {
  std::vector<double> out;
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < count; ++i)
    out.push_back(std::exp(la + (lb - la) * static_cast<double>(i) /
                                    static_cast<double>(count - 1)));
  return out;
}

SearchGrids SearchGrids::defaults(const BoundInputs& b) {
  SearchGrids g;
  g.Tp = log_space(1e-6, 10.0, 64);
  double du_hi = std::max(b.eta + b.mu, b.eps) * 10.0;
  g.du = log_space(b.eps * 1e-3, du_hi, 32);
  return g;
}

namespace {

// dx exhausting the residual budget at (Tp, du); <= 0 means infeasible
double budget_dx(double Tp, double du, const BoundInputs& b, BoundMode mode) {
  if (mode == BoundMode::Affine) {
    double rem = b.eps - g_c_linear_u(du, Tp, b);
    return rem > 0.0 ? rem * std::exp(-b.Lx * Tp) : 0.0;
  }
  double rem = b.eps * b.eps - g_c_u(du, Tp, b);
  return rem > 0.0 ? std::sqrt(rem) * std::exp(-b.Mx * Tp) : 0.0;
}

BoundResult evaluate_point(double Tp, double du, const BoundInputs& b,
                           BoundMode mode) {
  BoundResult r;
  r.mode = mode;
  r.Tp = Tp;
  r.du = du;
  r.dx = budget_dx(Tp, du, b, mode);
  if (r.dx <= 0.0) {
    r.feasible = false;
    r.gc = mode == BoundMode::Affine ? g_c_linear(0.0, du, Tp, b)
                                     : g_c(0.0, du, Tp, b);
    return r;
  }
  r.gc = mode == BoundMode::Affine ? g_c_linear(r.dx, du, Tp, b)
                                   : g_c(r.dx, du, Tp, b);
  r.go = g_o(r.dx, du, Tp, b);
  r.feasible = true;
  return r;
}

}  // namespace

std::vector<BoundResult> sweep(const BoundInputs& b, BoundMode mode,
                               const SearchGrids& grids) {
  if (mode == BoundMode::RhoForm)
    throw Error("sweep supports quadratic and affine modes");
  if (grids.Tp.empty() || grids.du.empty()) throw Error("empty search grid");
  std::vector<BoundResult> out;
  out.reserve(grids.Tp.size() * grids.du.size());
  for (double Tp : grids.Tp)
    for (double du : grids.du) out.push_back(evaluate_point(Tp, du, b, mode));
  return out;
}

BoundResult optimize(const BoundInputs& b, BoundMode mode,
                     const SearchGrids& grids) {
  if (grids.Tp.empty() || grids.du.empty()) throw Error("empty search grid");
  BoundResult best;
  best.mode = mode;
  std::size_t best_tp_idx = 0;
  for (std::size_t i = 0; i < grids.Tp.size(); ++i) {
    for (double du : grids.du) {
      BoundResult r = evaluate_point(grids.Tp[i], du, b, mode);
      if (r.feasible && r.go < best.go) {
        best = r;
        best_tp_idx = i;
      }
    }
  }
  if (!best.feasible) return best;

  // golden-section passes on Tp around the grid winner, du fixed
  double lo = best_tp_idx > 0 ? grids.Tp[best_tp_idx - 1] : grids.Tp[0] * 0.5;
  double hi = best_tp_idx + 1 < grids.Tp.size() ? grids.Tp[best_tp_idx + 1]
                                                : grids.Tp.back() * 2.0;
  const double gr = (std::sqrt(5.0) + 1.0) / 2.0;
  for (int pass = 0; pass < grids.refine_passes; ++pass) {
    double a = lo, c = hi;
    for (int it = 0; it < 40; ++it) {
      double p = c - (c - a) / gr;
      double q = a + (c - a) / gr;
      BoundResult rp = evaluate_point(p, best.du, b, mode);
      BoundResult rq = evaluate_point(q, best.du, b, mode);
      if (rp.feasible && rp.go < best.go) best = rp;
      if (rq.feasible && rq.go < best.go) best = rq;
      double fp = rp.feasible ? rp.go : std::numeric_limits<double>::infinity();
      double fq = rq.feasible ? rq.go : std::numeric_limits<double>::infinity();
      if (fp < fq)
        c = q;
      else
        a = p;
    }
    lo = std::max(lo, best.Tp / gr);
    hi = std::min(hi, best.Tp * gr);
  }
  return best;
}

}  // namespace estent
