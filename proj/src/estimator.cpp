#include "estent/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "estent/quantization.hpp"

namespace estent {

double estimator_dt(const EstimatorParams& p) {
  double dt = p.dt_hint > 0.0 ? p.dt_hint : std::min(p.Tp / 20.0, 1e-3);
  long long cells = static_cast<long long>(std::ceil(p.Tp / dt - 1e-9));
  cells = std::max(cells, 1LL);
  return p.Tp / static_cast<double>(cells);
}

Feasibility check_feasibility(const EstimatorParams& p, const BoundInputs& b,
                              FeasMode mode) {
  Feasibility f;
  if (mode == FeasMode::Affine) {
    f.gc = g_c_linear(p.dx, p.du, p.Tp, b);
    f.threshold = p.eps;
  } else {
    f.gc = g_c(p.dx, p.du, p.Tp, b);
    f.threshold = p.eps * p.eps;
  }
  f.ok = f.gc <= f.threshold * (1.0 + 1e-12);
  return f;
}

void SymbolStream::write(std::ostream& os) const {
  os.precision(17);
  os << n << " " << m << " " << Tp << " " << dx << " " << du << " " << eps
     << " " << mu << " " << eta << "\n";
  for (const auto& s : steps) os << s[0] << " " << s[1] << " " << s[2] << "\n";
}

SymbolStream SymbolStream::read(std::istream& is) {
  SymbolStream st;
  std::string line;
  if (!std::getline(is, line)) throw StreamError("empty symbol stream");
  {
    std::istringstream h(line);
    h >> st.n >> st.m >> st.Tp >> st.dx >> st.du >> st.eps >> st.mu >> st.eta;
    if (!h) throw StreamError("bad stream header: " + line);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::array<long long, 3> s{};
    ls >> s[0] >> s[1] >> s[2];
    if (!ls) break;  // truncated final line: keep the complete prefix
    st.steps.push_back(s);
  }
  return st;
}

SymbolStream ApproximatingFunction::stream(const EstimatorParams& p,
                                           const VariationBudget& budget) const {
  SymbolStream st;
  if (!steps.empty()) {
    st.n = static_cast<int>(steps.front().qx.size());
    st.m = static_cast<int>(steps.front().qu.size());
  }
  st.Tp = p.Tp;
  st.dx = p.dx;
  st.du = p.du;
  st.eps = p.eps;
  st.mu = budget.mu;
  st.eta = budget.eta;
  for (const auto& s : steps)
    st.steps.push_back({s.i, s.state_index, s.input_index});
  return st;
}

Vec ApproximatingFunction::z_at(double t) const {
  long long i = static_cast<long long>(std::floor(t / Tp + 1e-9));
  i = std::clamp(i, 0LL, static_cast<long long>(segments.size()) - 1);
  return segments[static_cast<std::size_t>(i)].value(t - static_cast<double>(i) * Tp);
}

double bit_rate(const EstimatorParams& p, int n, int m,
                const VariationBudget& budget) {
  double state_bits = static_cast<double>(n) * log2_ceil_count(p.eps / p.dx);
  double input_bits =
      static_cast<double>(m) *
      log2_ceil_count((budget.eta + budget.mu * p.Tp) / p.du + 1.0);
  return (state_bits + input_bits) / p.Tp;
}

namespace {

struct Codec {
  const System& sys;
  const VariationBudget& budget;
  const EstimatorParams& p;
  double dt;
  bool exponential;

  Grid cx, cu;

  Codec(const System& s, const VariationBudget& b, const EstimatorParams& params,
        const Box& K, bool exp_variant)
      : sys(s), budget(b), p(params), dt(estimator_dt(params)),
        exponential(exp_variant) {
    cx = make_grid(K, p.dx);
    cu = make_grid(b.u0_box, p.du);
  }

  double dx_at(long long i) const {
    return exponential ? p.dx * std::exp(-static_cast<double>(i) * p.rho * p.Tp)
                       : p.dx;
  }

  double ball_radius_at(long long i) const {
    return exponential
               ? p.eps * std::exp(-static_cast<double>(i) * p.rho * p.Tp)
               : p.eps;
  }

  Trajectory simulate_segment(const Vec& qx, const Vec& qu) const {
    return integrate(sys, qx, constant_signal(qu, p.Tp), p.Tp, dt);
  }

  // grids for step i+1 from the decoded segment i and its input center
  void advance_grids(long long next_i, const Trajectory& z_seg, const Vec& qu,
                     Box* sx_out = nullptr, Box* su_out = nullptr) {
    // z_{i-1}(Tp^-): last integration grid point strictly before the boundary
    const Vec& tail = z_seg.states[z_seg.states.size() - 2];
    Box sx = Box::ball(tail, ball_radius_at(next_i));
    Box su = Box::ball(qu, budget.eta + budget.mu * p.Tp + p.du);
    cx = make_grid(sx, dx_at(next_i));
    cu = make_grid(su, p.du);
    if (sx_out) *sx_out = sx;
    if (su_out) *su_out = su;
  }
};

ApproximatingFunction encode_impl(const System& sys, const Vec& x0,
                                  const Signal& u, const VariationBudget& budget,
                                  const Box& K, const EstimatorParams& p,
                                  const BoundInputs& gains, FeasMode mode,
                                  bool exponential) {
  if (x0.size() != sys.n) throw DimensionError("x0 dimension mismatch");
  if (budget.u0_box.dim() != sys.m)
    throw DimensionError("input box dimension mismatch");
  if (!(p.T > 0.0 && p.Tp > 0.0 && p.dx > 0.0 && p.du > 0.0 && p.eps > 0.0))
    throw Error("estimator parameters must be positive");

  if (exponential) {
    if (budget.mu != 0.0 || budget.eta != 0.0)
      throw Error("exponential variant requires mu = eta = 0");
    // per-step condition g_{c,x}(dx_i, Tp) <= eps^2 e^{-2 rho i Tp}, which is
    // i-independent under the decaying grid sizes
    double gcx = g_c_x(p.dx, p.Tp, gains);
    if (gcx > p.eps * p.eps * (1.0 + 1e-12))
      throw InfeasibleError("per-step feasibility violated: g_cx = " +
                            std::to_string(gcx));
  } else {
    Feasibility f = check_feasibility(p, gains, mode);
    if (!f.ok)
      throw InfeasibleError("infeasible parameters: g_c = " +
                            std::to_string(f.gc) + " > " +
                            std::to_string(f.threshold));
  }

  ApproximatingFunction out;
  out.Tp = p.Tp;
  Codec codec(sys, budget, p, K, exponential);
  out.dt = codec.dt;

  long long imax = static_cast<long long>(std::floor(p.T / p.Tp + 1e-9));
  Vec cur = x0;
  double sup_err = 0.0;
  Box sx = K, su = budget.u0_box;

  for (long long i = 0; i <= imax; ++i) {
    double ti = static_cast<double>(i) * p.Tp;
    Vec xi = cur;
    Vec ui = u.eval(ti);

    double xtol = 1e-9 * std::max(1.0, inf_norm(xi));
    bool x_in = sx.contains(xi, xtol);
    bool u_in = su.contains(ui, 1e-12 * std::max(1.0, inf_norm(ui)));
    if (!x_in)
      throw ContainmentError(
          "state sample outside S_x at step " + std::to_string(i), i);
    if (!u_in)
      throw ContainmentError(
          "input sample outside S_u at step " + std::to_string(i), i);

    QuantizeResult qx = quantize(xi, codec.cx);
    QuantizeResult qu = quantize(ui, codec.cu);

    Trajectory zseg = codec.simulate_segment(qx.center, qu.center);
    Trajectory truth = integrate_window(sys, cur, u, ti, p.Tp, codec.dt);

    // compare on the shared dt grid, excluding the right endpoint
    std::size_t cells = zseg.states.size() - 1;
    for (std::size_t k = 0; k < cells; ++k) {
      double tk = static_cast<double>(k) * codec.dt;
      const Vec& zt = zseg.states[k];
      const Vec& xt = truth.states[truth.index_at(tk)];
      sup_err = std::max(sup_err, inf_norm(zt - xt));
    }

    EstimatorStep step;
    step.i = i;
    step.x_sample = xi;
    step.u_sample = ui;
    step.qx = qx.center;
    step.qu = qu.center;
    step.state_index = qx.flat;
    step.input_index = qu.flat;
    step.sx = sx;
    step.su = su;
    step.x_contained = x_in;
    step.u_contained = u_in;
    out.steps.push_back(std::move(step));
    out.segments.push_back(zseg);

    cur = truth.states.back();
    if (i < imax) codec.advance_grids(i + 1, zseg, qu.center, &sx, &su);
  }
  out.realized_sup_error = sup_err;
  return out;
}

}  // namespace

ApproximatingFunction encode(const System& sys, const Vec& x0, const Signal& u,
                             const VariationBudget& budget, const Box& K,
                             const EstimatorParams& p, const BoundInputs& gains,
                             FeasMode mode) {
  return encode_impl(sys, x0, u, budget, K, p, gains, mode, false);
}

ApproximatingFunction encode_exp(const System& sys, const Vec& x0,
                                 const Signal& u, const Box& K,
                                 const EstimatorParams& p,
                                 const BoundInputs& gains) {
  if (!(p.rho >= 0.0)) throw Error("encode_exp requires rho >= 0");
  for (const Piece& piece : u.pieces)
    if (piece.kind != Piece::Constant)
      throw Error("exponential variant requires a constant input signal");
  if (u.pieces.size() > 1) throw Error("exponential variant requires a constant input signal");
  VariationBudget zero;
  zero.mu = 0.0;
  zero.eta = 0.0;
  zero.u0_box = Box::ball(u.pieces.front().value, 0.0);
  return encode_impl(sys, x0, u, zero, K, p, gains, FeasMode::Quadratic,
                     p.rho > 0.0);
}

std::vector<Trajectory> decode(const SymbolStream& stream, const Box& K,
                               const VariationBudget& budget, const System& sys,
                               const EstimatorParams& p) {
  if (stream.n != sys.n || stream.m != sys.m)
    throw StreamError("stream header does not match the system dimensions");
  std::vector<Trajectory> segments;
  Codec codec(sys, budget, p, K, p.rho > 0.0);
  Vec prev_qu;
  for (std::size_t k = 0; k < stream.steps.size(); ++k) {
    const auto& s = stream.steps[k];
    long long i = s[0];
    if (i != static_cast<long long>(k)) throw StreamError("non-contiguous step index");
    if (s[1] < 0 || s[1] >= codec.cx.total())
      throw StreamError("state symbol out of alphabet range at step " +
                        std::to_string(i));
    if (s[2] < 0 || s[2] >= codec.cu.total())
      throw StreamError("input symbol out of alphabet range at step " +
                        std::to_string(i));
    Vec qx = codec.cx.center(codec.cx.unflatten(s[1]));
    Vec qu = codec.cu.center(codec.cu.unflatten(s[2]));
    Trajectory zseg = codec.simulate_segment(qx, qu);
    codec.advance_grids(i + 1, zseg, qu);
    segments.push_back(std::move(zseg));
    prev_qu = qu;
  }
  return segments;
}

double sup_error(const std::vector<Trajectory>& segments,
                 const std::vector<Trajectory>& truth_segments) {
  if (segments.size() != truth_segments.size())
    throw Error("segment count mismatch");
  double sup = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Trajectory& z = segments[i];
    const Trajectory& t = truth_segments[i];
    std::size_t cells = z.states.size() - 1;
    for (std::size_t k = 0; k < cells; ++k) {
      double tk = z.times[k];
      sup = std::max(sup, inf_norm(z.states[k] - t.states[t.index_at(tk)]));
    }
  }
  return sup;
}

}  // namespace estent
