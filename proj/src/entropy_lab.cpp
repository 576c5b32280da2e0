#include "estent/entropy_lab.hpp"

#include <algorithm>
#include <cmath>

#include "estent/signals.hpp"

namespace estent {

namespace {

double family_dt(const TimeSequence& tseq, double T) {
  double mg = tseq.min_gap();
  if (!std::isfinite(mg)) mg = T;
  return std::min(mg, T) / 20.0;
}

std::string bits_to_string(long long bits, std::size_t l) {
  std::string se(l, 'a');
  for (std::size_t i = 0; i < l; ++i)
    if (bits & (1LL << i)) se[i] = 'b';
  return se;
}

}  // namespace

Mat pair_ratio_matrix(const TrajectoryFamily& family, double alpha) {
  std::size_t n = family.members.size();
  Mat R = Mat::Zero(static_cast<int>(n), static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Trajectory& ti = family.members[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Trajectory& tj = family.members[j];
      double best = 0.0;
      std::size_t npts = std::min(ti.states.size(), tj.states.size());
      for (std::size_t k = 0; k < npts; ++k) {
        double gap = inf_norm(ti.states[k] - tj.states[k]);
        best = std::max(best, gap * std::exp(alpha * ti.times[k]));
      }
      R(static_cast<int>(i), static_cast<int>(j)) = best;
      R(static_cast<int>(j), static_cast<int>(i)) = best;
    }
  }
  return R;
}

FamilyReport check_separated(const TrajectoryFamily& family, double threshold,
                             double alpha) {
  FamilyReport rep;
  rep.count = static_cast<long long>(family.members.size());
  rep.threshold = threshold;
  Mat R = pair_ratio_matrix(family, alpha);
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < R.rows(); ++i)
    for (int j = i + 1; j < R.cols(); ++j)
      min_ratio = std::min(min_ratio, R(i, j) / threshold);
  if (family.members.size() < 2) min_ratio = 0.0;
  rep.min_pair_ratio = min_ratio;
  rep.separated = family.members.size() >= 2 && min_ratio > 1.0;
  return rep;
}

std::pair<FamilyReport, TrajectoryFamily> build_family(
    const System& sys, const Vec& x0, const TimeSequence& tseq, double a,
    double b, const SeparationSpec& spec, long long max_members) {
  std::size_t l = tseq.gaps().size();
  if (l >= 63 || (1LL << l) > max_members)
    throw Error("family of 2^" + std::to_string(l) +
                " members exceeds the cap " + std::to_string(max_members));
  long long count = 1LL << l;
  TrajectoryFamily fam;
  fam.T = spec.T;
  fam.alpha = spec.alpha;
  fam.dt = family_dt(tseq, spec.T);
  for (long long bits = 0; bits < count; ++bits) {
    std::string se = bits_to_string(bits, l);
    Signal u = make_piecewise_constant(tseq, se, a, b);
    fam.members.push_back(integrate(sys, x0, u, spec.T, fam.dt));
    fam.labels.push_back(se);
  }
  FamilyReport rep = check_separated(fam, 2.0 * spec.eps, spec.alpha);
  rep.growth_log2_per_T = static_cast<double>(l) / spec.T;
  return {rep, fam};
}

std::vector<GrowthRow> growth_sweep(const std::vector<double>& eps_list,
                                    const std::vector<double>& T_list, double a,
                                    double b, double alpha,
                                    long long max_switches) {
  std::vector<GrowthRow> rows;
  for (double eps : eps_list) {
    for (double T : T_list) {
      GrowthRow row;
      row.eps = eps;
      row.T = T;
      TimeSequence ts = alpha == 0.0
                            ? tseq_uniform(T, eps, a, b, max_switches)
                            : tseq_alpha(T, eps, alpha, a, b, max_switches);
      // a degenerate {0, T} sequence has one gap but no switch
      if (alpha == 0.0 && ts.instants.size() == 2 && ts.instants[1] == T &&
          3.0 * eps / (a - b) > T)
        row.gap_count = 0;
      else
        row.gap_count = static_cast<long long>(ts.gaps().size());
      row.log2_count_per_T = static_cast<double>(row.gap_count) / T;
      row.alpha_lower_bound =
          alpha > 0.0 ? tseq_alpha_count_lower_bound(T, eps, alpha, a, b) : 0;
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

// exact maximum clique by branch and bound on <= 20 vertices
struct CliqueSolver {
  int n;
  std::vector<std::vector<bool>> adj;
  int best = 0;

  void expand(std::vector<int>& clique, std::vector<int>& cand) {
    if (static_cast<int>(clique.size()) > best)
      best = static_cast<int>(clique.size());
    if (clique.size() + cand.size() <= static_cast<std::size_t>(best)) return;
    while (!cand.empty()) {
      if (clique.size() + cand.size() <= static_cast<std::size_t>(best)) return;
      int v = cand.back();
      cand.pop_back();
      std::vector<int> next;
      for (int w : cand)
        if (adj[v][w]) next.push_back(w);
      clique.push_back(v);
      expand(clique, next);
      clique.pop_back();
    }
  }

  int solve() {
    std::vector<int> clique, cand;
    for (int i = 0; i < n; ++i) cand.push_back(i);
    expand(clique, cand);
    return best;
  }
};

int max_clique(const std::vector<std::vector<bool>>& adj) {
  CliqueSolver s;
  s.n = static_cast<int>(adj.size());
  s.adj = adj;
  return s.solve();
}

// exact minimum dominating set: member i covers j iff cover[i][j]
int min_dominating_set(const std::vector<std::vector<bool>>& cover) {
  int n = static_cast<int>(cover.size());
  if (n == 0) return 0;
  std::vector<unsigned> masks(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cover[i][j]) masks[i] |= (1u << j);
  unsigned full = n == 32 ? 0xffffffffu : (1u << n) - 1u;
  int best = n;
  for (unsigned sub = 1; sub <= full; ++sub) {
    int size = __builtin_popcount(sub);
    if (size >= best) continue;
    unsigned covered = 0;
    for (int i = 0; i < n; ++i)
      if (sub & (1u << i)) covered |= masks[i];
    if (covered == full) best = size;
  }
  return best;
}

}  // namespace

SandwichResult sandwich_check(const TrajectoryFamily& family, double eps) {
  std::size_t n = family.members.size();
  if (n > 20) throw Error("sandwich_check caps families at 20 members");
  Mat R = pair_ratio_matrix(family, family.alpha);
  auto separation_adj = [&](double thr) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) adj[i][j] = R(static_cast<int>(i), static_cast<int>(j)) > thr;
    return adj;
  };
  SandwichResult res;
  res.s_sep_eps = max_clique(separation_adj(eps));
  res.s_sep_2eps = max_clique(separation_adj(2.0 * eps));
  // i covers j iff the pair never exceeds eps (every member covers itself)
  std::vector<std::vector<bool>> cover(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cover[i][j] =
          i == j || R(static_cast<int>(i), static_cast<int>(j)) <= eps;
  res.s_star_eps = min_dominating_set(cover);
  res.holds = res.s_sep_2eps <= res.s_star_eps && res.s_star_eps <= res.s_sep_eps;
  return res;
}

std::pair<FamilyReport, TrajectoryFamily> switched_family(
    const SwitchedSystem& sw, double x0, const TimeSequence& tseq,
    const SeparationSpec& spec, long long max_members) {
  if (sw.num_modes() != 2 || sw.n != 1)
    throw Error("switched_family expects a two-mode scalar system");
  std::size_t l = tseq.gaps().size();
  if (l >= 63 || (1LL << l) > max_members)
    throw Error("family of 2^" + std::to_string(l) +
                " members exceeds the cap " + std::to_string(max_members));
  long long count = 1LL << l;
  TrajectoryFamily fam;
  fam.T = spec.T;
  fam.alpha = spec.alpha;
  fam.dt = family_dt(tseq, spec.T);
  Vec x0v(1);
  x0v[0] = x0;
  for (long long bits = 0; bits < count; ++bits) {
    std::vector<int> modes;
    std::string label;
    for (std::size_t i = 0; i < l; ++i) {
      int mode = (bits & (1LL << i)) ? 2 : 1;
      modes.push_back(mode);
      label += (mode == 1 ? '1' : '2');
    }
    if (modes.empty()) {
      modes.push_back(1);
      label = "1";
      Signal sig = switching_signal(TimeSequence{{0.0, spec.T}}, modes, 2,
                                    sw.Td, false);
      fam.members.push_back(integrate_switched(sw, x0v, sig, spec.T, fam.dt));
    } else {
      Signal sig = switching_signal(tseq, modes, 2, sw.Td, false);
      fam.members.push_back(integrate_switched(sw, x0v, sig, spec.T, fam.dt));
    }
    fam.labels.push_back(label);
  }
  FamilyReport rep = check_separated(fam, 2.0 * spec.eps, spec.alpha);
  rep.growth_log2_per_T = static_cast<double>(l) / spec.T;
  return {rep, fam};
}

}  // namespace estent
