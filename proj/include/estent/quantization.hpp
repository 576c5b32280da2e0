#ifndef ESTENT_QUANTIZATION_HPP
#define ESTENT_QUANTIZATION_HPP

#include <vector>

#include "estent/common.hpp"

namespace estent {

// Axis-aligned box. All norms and diameters are infinity-norm.
struct Box {
  Vec lo, hi;

  Box() = default;
  Box(Vec lo_, Vec hi_);

  static Box ball(const Vec& center, double radius);

  int dim() const { return static_cast<int>(lo.size()); }
  double width(int i) const { return hi[i] - lo[i]; }
  double diameter() const;
  bool contains(const Vec& x, double tol = 0.0) const;
  Vec center() const { return 0.5 * (lo + hi); }
};

// Uniform grid of cell centers over a box. Per dimension i with width w_i,
// k_i = max(1, ceil(w_i / 2 delta)) centers at lo_i + (2j+1) w_i / (2 k_i).
// The delta-balls around the centers cover the box since w_i/(2 k_i) <= delta;
// the realized half-cell w_i/(2 k_i) may be smaller than the requested delta.
struct Grid {
  Box box;
  double delta = 0.0;
  std::vector<long long> counts;

  long long total() const;
  double spacing(int d) const { return box.width(d) / static_cast<double>(counts[d]); }
  double center_coord(int d, long long j) const;
  Vec center(const std::vector<long long>& index) const;
  long long flat_index(const std::vector<long long>& index) const;
  std::vector<long long> unflatten(long long flat) const;
};

Grid make_grid(const Box& box, double delta);

struct QuantizeResult {
  Vec center;
  std::vector<long long> index;
  long long flat = 0;
  bool contained = true;  // whether the input point was inside the box
};

// Nearest center, per dimension; ties break toward the lower index; points
// outside the box clamp to the nearest cell.
QuantizeResult quantize(const Vec& x, const Grid& g);

// ceil(diam / 2 delta)^dim with the inner value floored at 1.
long long grid_count(double diam, double delta, int dim);

}  // namespace estent

#endif
