#include "estent/quantization.hpp"

#include <algorithm>
#include <cmath>

namespace estent {

Box::Box(Vec lo_, Vec hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() != hi.size()) throw DimensionError("box lo/hi size mismatch");
  for (int i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= hi[i])) throw Error("box requires lo <= hi componentwise");
}

Box Box::ball(const Vec& center, double radius) {
  return Box(center.array() - radius, center.array() + radius);
}

double Box::diameter() const {
  double d = 0.0;
  for (int i = 0; i < lo.size(); ++i) d = std::max(d, hi[i] - lo[i]);
  return d;
}

bool Box::contains(const Vec& x, double tol) const {
  if (x.size() != lo.size()) throw DimensionError("box/point size mismatch");
  for (int i = 0; i < lo.size(); ++i)
    if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
  return true;
}

long long Grid::total() const {
  long long t = 1;
  for (long long k : counts) {
    if (t > (1LL << 62) / std::max(1LL, k)) throw Error("grid too large");
    t *= k;
  }
  return t;
}

double Grid::center_coord(int d, long long j) const {
  double w = box.width(d);
  return box.lo[d] + (2.0 * static_cast<double>(j) + 1.0) * w /
                         (2.0 * static_cast<double>(counts[d]));
}

Vec Grid::center(const std::vector<long long>& index) const {
  Vec c(box.dim());
  for (int d = 0; d < box.dim(); ++d) c[d] = center_coord(d, index[d]);
  return c;
}

long long Grid::flat_index(const std::vector<long long>& index) const {
  long long flat = 0;
  for (int d = 0; d < box.dim(); ++d) {
    flat = flat * counts[d] + index[d];
  }
  return flat;
}

std::vector<long long> Grid::unflatten(long long flat) const {
  std::vector<long long> index(box.dim());
  for (int d = box.dim() - 1; d >= 0; --d) {
    index[d] = flat % counts[d];
    flat /= counts[d];
  }
  return index;
}

Grid make_grid(const Box& box, double delta) {
  if (!(delta > 0.0)) throw Error("make_grid requires delta > 0");
  Grid g;
  g.box = box;
  g.delta = delta;
  g.counts.resize(box.dim());
  for (int d = 0; d < box.dim(); ++d)
    g.counts[d] = ceil_count(box.width(d) / (2.0 * delta));
  return g;
}

QuantizeResult quantize(const Vec& x, const Grid& g) {
  if (x.size() != g.box.dim()) throw DimensionError("quantize dim mismatch");
  QuantizeResult r;
  r.index.resize(g.box.dim());
  r.center = Vec(g.box.dim());
  double tol = 1e-12 * std::max(1.0, inf_norm(x));
  r.contained = g.box.contains(x, tol);
  for (int d = 0; d < g.box.dim(); ++d) {
    long long k = g.counts[d];
    double w = g.box.width(d);
    long long j = 0;
    if (w > 0.0 && k > 1) {
      double pos = (x[d] - g.box.lo[d]) / (w / static_cast<double>(k));
      j = static_cast<long long>(std::floor(pos));
      // exact midpoint between centers j-1 and j: tie toward lower index
      if (static_cast<double>(j) == pos && j > 0) j -= 1;
      j = std::clamp(j, 0LL, k - 1);
    }
    r.index[d] = j;
    r.center[d] = g.center_coord(d, j);
  }
  r.flat = g.flat_index(r.index);
  return r;
}

long long grid_count(double diam, double delta, int dim) {
  if (!(delta > 0.0)) throw Error("grid_count requires delta > 0");
  if (dim < 1) throw Error("grid_count requires dim >= 1");
  long long per = ceil_count(diam / (2.0 * delta));
  long long t = 1;
  for (int i = 0; i < dim; ++i) {
    if (t > (1LL << 62) / std::max(1LL, per)) throw Error("count overflow");
    t *= per;
  }
  return t;
}

}  // namespace estent
