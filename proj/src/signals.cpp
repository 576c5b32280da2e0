#include "estent/signals.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace estent {

namespace {

const Piece& piece_at(const std::vector<Piece>& pieces, double t) {
  // last piece with t0 <= t; before the first piece, the first one
  std::size_t lo = 0;
  if (pieces.empty()) throw Error("empty signal");
  for (std::size_t i = pieces.size(); i-- > 0;) {
    if (pieces[i].t0 <= t) {
      lo = i;
      break;
    }
  }
  return pieces[lo];
}

Vec eval_piece(const Piece& p, double t) {
  if (p.kind == Piece::Ramp) return p.value + (t - p.t0) * p.slope;
  return p.value;
}

}  // namespace

Vec Signal::eval(double t) const { return eval_piece(piece_at(pieces, t), t); }

Vec Signal::eval_left(double t) const {
  if (pieces.empty()) throw Error("empty signal");
  // piece active immediately before t
  std::size_t idx = 0;
  for (std::size_t i = pieces.size(); i-- > 0;) {
    if (pieces[i].t0 < t) {
      idx = i;
      break;
    }
  }
  return eval_piece(pieces[idx], t);
}

std::vector<double> Signal::breakpoints() const {
  std::vector<double> bs;
  for (const Piece& p : pieces)
    if (p.t0 > 0.0) bs.push_back(p.t0);
  return bs;
}

Signal constant_signal(const Vec& v, double horizon) {
  Signal s;
  s.dim = static_cast<int>(v.size());
  s.horizon = horizon;
  s.pieces.push_back(Piece{0.0, Piece::Constant, v, Vec()});
  return s;
}

Signal constant_signal(double v, double horizon) {
  Vec vv(1);
  vv[0] = v;
  return constant_signal(vv, horizon);
}

std::vector<double> TimeSequence::gaps() const {
  std::vector<double> g;
  for (std::size_t i = 1; i < instants.size(); ++i)
    g.push_back(instants[i] - instants[i - 1]);
  return g;
}

double TimeSequence::min_gap() const {
  double mg = std::numeric_limits<double>::infinity();
  for (double g : gaps()) mg = std::min(mg, g);
  return mg;
}

VariationCheck check_variation(const Signal& u, const VariationBudget& b,
                               int n_samples, double tol) {
  if (n_samples < 2) throw Error("check_variation requires n_samples >= 2");
  VariationCheck res;
  Vec u0 = u.eval(0.0);
  if (b.u0_box.dim() > 0) {
    res.u0_ok = b.u0_box.contains(u0, tol);
    if (!res.u0_ok) {
      res.ok = false;
      return res;
    }
  }

  // samples: (time, value); breakpoints contribute both one-sided values
  std::vector<std::pair<double, Vec>> samples;
  double T = u.horizon;
  for (int i = 0; i < n_samples; ++i) {
    double t = T * static_cast<double>(i) / static_cast<double>(n_samples - 1);
    samples.emplace_back(t, u.eval(t));
  }
  for (double bp : u.breakpoints()) {
    if (bp <= 0.0 || bp > T) continue;
    samples.emplace_back(bp, u.eval_left(bp));
    samples.emplace_back(bp, u.eval(bp));
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const auto& a, const auto& b2) { return a.first < b2.first; });

  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      double tau = samples[j].first - samples[i].first;
      double gap = inf_norm(samples[j].second - samples[i].second);
      double allowed = b.mu * tau + b.eta;
      if (gap > allowed + tol) {
        res.ok = false;
        res.t1 = samples[i].first;
        res.t2 = samples[j].first;
        res.gap = gap;
        res.allowed = allowed;
        return res;
      }
    }
  }
  return res;
}

Signal make_piecewise_constant(const TimeSequence& tseq, const std::string& se,
                               double a, double b) {
  if (!(a > b)) throw Error("make_piecewise_constant requires a > b");
  std::size_t l = tseq.gaps().size();
  if (se.size() != l)
    throw Error("string length " + std::to_string(se.size()) +
                " does not match gap count " + std::to_string(l));
  Signal s;
  s.dim = 1;
  s.horizon = tseq.horizon();
  for (std::size_t i = 0; i < l; ++i) {
    double v;
    if (se[i] == 'a')
      v = a;
    else if (se[i] == 'b')
      v = b;
    else
      throw Error("string must be over {a,b}");
    Vec vv(1);
    vv[0] = v;
    s.pieces.push_back(Piece{tseq.instants[i], Piece::Constant, vv, Vec()});
  }
  if (s.pieces.empty()) {
    Vec vv(1);
    vv[0] = a;
    s.pieces.push_back(Piece{0.0, Piece::Constant, vv, Vec()});
  }
  return s;
}

TimeSequence tseq_uniform(double T, double eps, double a, double b,
                          long long max_switches) {
  if (!(eps > 0.0)) throw Error("tseq_uniform requires eps > 0");
  if (!(a > b)) throw Error("tseq_uniform requires a > b");
  if (!(T > 0.0)) throw Error("tseq_uniform requires T > 0");
  double tau = 3.0 * eps / (a - b);
  TimeSequence ts;
  ts.instants.push_back(0.0);
  if (tau > T) {
    ts.instants.push_back(T);
    return ts;
  }
  long long kmax = static_cast<long long>(std::floor(T / tau + 1e-9));
  kmax = std::min(kmax, max_switches);
  for (long long k = 1; k <= kmax; ++k)
    ts.instants.push_back(static_cast<double>(k) * tau);
  return ts;
}

TimeSequence tseq_alpha(double T, double eps, double alpha, double a, double b,
                        long long max_switches) {
  if (!(alpha > 0.0)) throw Error("tseq_alpha requires alpha > 0");
  if (!(eps > 0.0)) throw Error("tseq_alpha requires eps > 0");
  if (!(a > b)) throw Error("tseq_alpha requires a > b");
  TimeSequence ts;
  ts.instants.push_back(0.0);
  double v = 2.0 * eps / (a - b);
  double t = 0.0;
  long long count = 0;
  while (count < max_switches && t + v <= T + 1e-12) {
    t += v;
    ts.instants.push_back(t);
    ++count;
    v = v * std::exp(-alpha * v);
  }
  return ts;
}

long long tseq_alpha_count_lower_bound(double T, double eps, double alpha,
                                       double a, double b) {
  double num = a - b - alpha * eps;
  if (num <= 0.0) return 0;
  double val = num / (2.0 * alpha * eps) * (std::exp(alpha * T) - 1.0);
  return static_cast<long long>(std::floor(val));
}

TimeSequence tseq_infd(double T, double eps, double b_rate, double x0, double a,
                       std::optional<double> Td, long long max_switches) {
  if (x0 == 0.0) throw Error("tseq_infd requires a nonzero initial state");
  if (!(a > b_rate && b_rate > 0.0))
    throw Error("tseq_infd requires a > b_rate > 0");
  if (!(eps > 0.0)) throw Error("tseq_infd requires eps > 0");
  std::vector<double> raw;
  double v = 2.0 * eps / (std::abs(x0) * (a - b_rate));
  double t = 0.0;
  long long count = 0;
  while (count < max_switches && t + v <= T + 1e-12) {
    t += v;
    raw.push_back(t);
    ++count;
    v = v * std::exp(-b_rate * v);
  }
  TimeSequence ts;
  ts.instants.push_back(0.0);
  if (!Td) {
    ts.instants.insert(ts.instants.end(), raw.begin(), raw.end());
    return ts;
  }
  for (double ti : raw) {
    long long j = static_cast<long long>(std::floor(ti / *Td));
    if (j % 2 == 1) ts.instants.push_back(ti);
  }
  return ts;
}

Signal random_slow_piecewise_constant(const VariationBudget& b, double T,
                                      int pieces, std::mt19937_64& rng) {
  if (pieces < 1) throw Error("need at least one piece");
  if (b.u0_box.dim() < 1) throw Error("budget needs an initial input box");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int m = b.u0_box.dim();
  Vec u0(m);
  for (int i = 0; i < m; ++i)
    u0[i] = b.u0_box.lo[i] + unit(rng) * b.u0_box.width(i);
  Signal s;
  s.dim = m;
  s.horizon = T;
  s.pieces.push_back(Piece{0.0, Piece::Constant, u0, Vec()});
  for (int k = 1; k < pieces; ++k) {
    double t0 = T * static_cast<double>(k) / static_cast<double>(pieces);
    Vec v(m);
    for (int i = 0; i < m; ++i)
      v[i] = u0[i] + (unit(rng) - 0.5) * b.eta;  // spread <= eta pairwise
    s.pieces.push_back(Piece{t0, Piece::Constant, v, Vec()});
  }
  return s;
}

void save_signal(const Signal& u, std::ostream& os) {
  os << "dim " << u.dim << " horizon " << u.horizon << "\n";
  os.precision(17);
  for (const Piece& p : u.pieces) {
    os << p.t0 << (p.kind == Piece::Constant ? " const" : " ramp");
    for (int i = 0; i < p.value.size(); ++i) os << " " << p.value[i];
    if (p.kind == Piece::Ramp)
      for (int i = 0; i < p.slope.size(); ++i) os << " " << p.slope[i];
    os << "\n";
  }
}

Signal load_signal(std::istream& is) {
  Signal s;
  std::string line;
  if (!std::getline(is, line)) throw Error("empty signal file");
  {
    std::istringstream head(line);
    std::string kw1, kw2;
    head >> kw1 >> s.dim >> kw2 >> s.horizon;
    if (kw1 != "dim" || kw2 != "horizon" || !head || s.dim < 1)
      throw Error("bad signal header: " + line);
  }
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Piece p;
    std::string kind;
    ls >> p.t0 >> kind;
    p.value = Vec(s.dim);
    for (int i = 0; i < s.dim; ++i) ls >> p.value[i];
    if (kind == "const") {
      p.kind = Piece::Constant;
    } else if (kind == "ramp") {
      p.kind = Piece::Ramp;
      p.slope = Vec(s.dim);
      for (int i = 0; i < s.dim; ++i) ls >> p.slope[i];
    } else {
      throw Error("bad piece kind: " + kind);
    }
    if (!ls) throw Error("bad signal piece: " + line);
    if (!s.pieces.empty() && p.t0 <= s.pieces.back().t0)
      throw Error("piece start times must be strictly increasing");
    s.pieces.push_back(std::move(p));
  }
  if (s.pieces.empty() || s.pieces.front().t0 != 0.0)
    throw Error("signal must start at t = 0");
  return s;
}

}  // namespace estent
