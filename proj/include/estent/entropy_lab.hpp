#ifndef ESTENT_ENTROPY_LAB_HPP
#define ESTENT_ENTROPY_LAB_HPP

#include "estent/dynamics.hpp"
#include "estent/switched.hpp"

namespace estent {

struct SeparationSpec {
  double T = 0.0;
  double eps = 0.0;
  double alpha = 0.0;
  double tau = 0.0;  // switched mode only
};

struct FamilyReport {
  long long count = 0;
  bool separated = false;
  double threshold = 0.0;       // 2 eps
  double min_pair_ratio = 0.0;  // min over pairs of max_t gap / (thr e^{-alpha t})
  double growth_log2_per_T = 0.0;
};

struct TrajectoryFamily {
  std::vector<Trajectory> members;
  std::vector<std::string> labels;  // the {a,b} or mode strings
  double T = 0.0;
  double dt = 0.0;
  double alpha = 0.0;
};

// All 2^l piecewise-constant signals over {a,b} on tseq, simulated through
// the system from x0; pairwise checked against threshold 2 eps e^{-alpha t}.
std::pair<FamilyReport, TrajectoryFamily> build_family(
    const System& sys, const Vec& x0, const TimeSequence& tseq, double a,
    double b, const SeparationSpec& spec, long long max_members);

// Pairwise check of an existing family at the given threshold.
FamilyReport check_separated(const TrajectoryFamily& family, double threshold,
                             double alpha);

// max over grid t of ||xi_i(t) - xi_j(t)|| e^{alpha t} for every pair
Mat pair_ratio_matrix(const TrajectoryFamily& family, double alpha);

struct GrowthRow {
  double eps = 0.0;
  double T = 0.0;
  long long gap_count = 0;       // l; family size is 2^l
  double log2_count_per_T = 0.0;  // l / T
  long long alpha_lower_bound = 0;
};

// Counting-only sweep (families are exact powers of two by construction).
std::vector<GrowthRow> growth_sweep(const std::vector<double>& eps_list,
                                    const std::vector<double>& T_list, double a,
                                    double b, double alpha,
                                    long long max_switches);

struct SandwichResult {
  int s_sep_2eps = 0;
  int s_star_eps = 0;  // family-restricted spanning number
  int s_sep_eps = 0;
  bool holds = false;  // s_sep(2eps) <= s*(eps) <= s_sep(eps)
};

// Exact combinatorics on families of size <= 20: maximum clique in the
// separation graph and minimum dominating set in the eps-cover graph.
SandwichResult sandwich_check(const TrajectoryFamily& family, double eps);

// Mode-string family over a two-mode scalar switched system.
std::pair<FamilyReport, TrajectoryFamily> switched_family(
    const SwitchedSystem& sw, double x0, const TimeSequence& tseq,
    const SeparationSpec& spec, long long max_members);

}  // namespace estent

#endif
