#include <doctest.h>

#include <cmath>
#include <random>

#include "estent/quantization.hpp"

using namespace estent;

namespace {

Box interval(double lo, double hi) {
  Vec l(1), h(1);
  l[0] = lo;
  h[0] = hi;
  return Box(l, h);
}

Box random_box(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> c(-5.0, 5.0);
  std::uniform_real_distribution<double> w(0.0, 4.0);
  Vec lo(dim), hi(dim);
  for (int i = 0; i < dim; ++i) {
    lo[i] = c(rng);
    hi[i] = lo[i] + w(rng);
  }
  return Box(lo, hi);
}

}  // namespace

TEST_SUITE("quantization") {

TEST_CASE("make_grid center layout") {
  Grid g = make_grid(interval(-1.0, 1.0), 0.5);
  REQUIRE(g.counts == std::vector<long long>{2});
  CHECK(g.center_coord(0, 0) == doctest::Approx(-0.5));
  CHECK(g.center_coord(0, 1) == doctest::Approx(0.5));

  Grid one = make_grid(interval(-1.0, 1.0), 1.5);
  REQUIRE(one.counts == std::vector<long long>{1});
  CHECK(one.center_coord(0, 0) == doctest::Approx(0.0));

  Grid quarter = make_grid(interval(0.0, M_PI / 2.0), M_PI / 4.0);
  CHECK(quarter.counts == std::vector<long long>{1});
}

TEST_CASE("quantize exactness, ties, and clamping") {
  Grid g = make_grid(interval(-1.0, 1.0), 0.5);
  Vec on_center(1);
  on_center[0] = 0.5;
  QuantizeResult q = quantize(on_center, g);
  CHECK(q.center[0] == doctest::Approx(0.5));
  CHECK(inf_norm(q.center - on_center) == doctest::Approx(0.0));

  // tie at 0 breaks toward the lower index
  Vec tie(1);
  tie[0] = 0.0;
  CHECK(quantize(tie, g).center[0] == doctest::Approx(-0.5));
  CHECK(quantize(tie, g).index[0] == 0);

  // outside points clamp and report non-containment
  Vec far(1);
  far[0] = 7.0;
  QuantizeResult qc = quantize(far, g);
  CHECK(qc.center[0] == doctest::Approx(0.5));
  CHECK_FALSE(qc.contained);
}

TEST_CASE("covering property against a brute-force nearest search") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> deltas(0.05, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    int dim = 1 + static_cast<int>(unit(rng) * 3);
    Box box = random_box(rng, dim);
    double delta = deltas(rng);
    Grid g = make_grid(box, delta);
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x[i] = box.lo[i] + unit(rng) * box.width(i);
    QuantizeResult q = quantize(x, g);
    CHECK(q.contained);
    CHECK(inf_norm(x - q.center) <= delta + 1e-12);
    // brute force over all centers of this (small) grid
    if (g.total() <= 4096) {
      double best = std::numeric_limits<double>::infinity();
      for (long long f = 0; f < g.total(); ++f)
        best = std::min(best, inf_norm(x - g.center(g.unflatten(f))));
      CHECK(inf_norm(x - q.center) <= best + 1e-12);
    }
  }
}

TEST_CASE("separation of realized cells") {
  // realized half-cell w/(2k) <= delta; centers are exactly 2*(w/(2k)) apart
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    Box box = random_box(rng, 2);
    Grid g = make_grid(box, 0.3);
    for (int d = 0; d < 2; ++d) {
      double spacing = g.spacing(d);
      double realized_half = 0.5 * spacing;
      CHECK(realized_half <= g.delta + 1e-12);
      if (g.counts[d] > 1)
        CHECK(g.center_coord(d, 1) - g.center_coord(d, 0) ==
              doctest::Approx(spacing));
    }
  }
}

TEST_CASE("count consistency with grid_count") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    Box box = random_box(rng, 3);
    Grid g = make_grid(box, 0.4);
    for (int d = 0; d < 3; ++d)
      CHECK(g.counts[d] == grid_count(box.width(d), 0.4, 1));
  }
  CHECK(grid_count(2.0, 0.5, 3) == 8);
  CHECK(grid_count(0.5, 0.5, 4) == 1);
  // an eps-ball of radius 0.1 has diameter 0.2: ceil(0.2/0.14)^3 = 2^3
  CHECK(grid_count(0.2, 0.07, 3) == 8);
}

TEST_CASE("flat index is a bijection") {
  std::mt19937_64 rng(29);
  Box box = random_box(rng, 3);
  Grid g = make_grid(box, 0.6);
  for (long long f = 0; f < g.total(); ++f) {
    auto idx = g.unflatten(f);
    CHECK(g.flat_index(idx) == f);
  }
}

TEST_CASE("degenerate zero-width boxes quantize to the point") {
  Vec p(2);
  p << 0.3, -0.7;
  Grid g = make_grid(Box(p, p), 0.1);
  CHECK(g.total() == 1);
  Vec x(2);
  x << 5.0, 5.0;
  CHECK(inf_norm(quantize(x, g).center - p) == doctest::Approx(0.0));
}

}  // TEST_SUITE
