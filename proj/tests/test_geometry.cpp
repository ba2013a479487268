#include <random>

#include "doctest.h"
#include "stqft/geometry.hpp"
#include "stqft/triangulation_io.hpp"

using namespace stqft;

namespace {

ShapeStructure uniform_shape(int n, double x, double y) {
  ShapeStructure a;
  a.alpha.assign(n, {x, y, kPi - x - y});
  return a;
}

}  // namespace

TEST_CASE("volume of the regular ideal tetrahedron") {
  const Triangulation X({1}, {});
  const double v = shape_volume(X, uniform_shape(1, kPi / 3, kPi / 3));
  CHECK(v == doctest::Approx(1.0149416064096536).epsilon(1e-13));
  // relabelling the quads leaves the volume alone
  ShapeStructure a = uniform_shape(1, 0.4, 1.1), b = a;
  std::swap(b.alpha[0][0], b.alpha[0][2]);
  CHECK(std::abs(shape_volume(X, a) - shape_volume(X, b)) < 1e-14);
}

TEST_CASE("volume is concave along the gauge class") {
  const Triangulation X = figure_eight_complement();
  const auto dirs = gauge_directions(X);
  REQUIRE(!dirs.empty());
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-0.15, 0.15);
  const ShapeStructure a = uniform_shape(2, kPi / 3, kPi / 3);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> y0(dirs.size()), y1(dirs.size()), ym(dirs.size());
    for (size_t k = 0; k < dirs.size(); ++k) {
      y0[k] = U(rng);
      y1[k] = U(rng);
      ym[k] = 0.5 * (y0[k] + y1[k]);
    }
    const double v0 = shape_volume(X, move_along(a, dirs, y0)), v1 = shape_volume(X, move_along(a, dirs, y1));
    CHECK(shape_volume(X, move_along(a, dirs, ym)) >= 0.5 * (v0 + v1) - 1e-14);
  }
}

TEST_CASE("moves in the gauge class keep edge weights and holonomies") {
  const Triangulation X = figure_eight_complement();
  const auto dirs = gauge_directions(X);
  const ShapeStructure a = uniform_shape(2, 1.0, 1.2);
  const ShapeStructure b = move_along(a, dirs, std::vector<double>(dirs.size(), 0.07));
  validate_shape(X, b);
  for (int e = 0; e < X.num_edges(); ++e) {
    CHECK(std::abs(edge_weight(X, a, e) - edge_weight(X, b, e)) < 1e-12);
    CHECK(std::abs(angle_holonomy(X, a, edge_loop(X, e)) - angle_holonomy(X, b, edge_loop(X, e))) < 1e-12);
  }
}

TEST_CASE("shape parameter relations in both orientations") {
  for (int o : {1, -1}) {
    const Triangulation X({o}, {});
    const ShapeStructure a = uniform_shape(1, 0.5, 1.3);
    for (int q = 0; q < 3; ++q) {
      const bool flip = o < 0;
      const cplx z = shape_parameter(X, a, 0, q);
      CHECK(std::abs(shape_parameter(X, a, 0, prev_quad(q, flip)) - 1.0 / (1.0 - z)) < 1e-10);
      CHECK(std::abs(shape_parameter(X, a, 0, next_quad(q, flip)) - (1.0 - 1.0 / z)) < 1e-10);
    }
  }
}

TEST_CASE("analytic gradient matches finite differences") {
  const Triangulation X = figure_eight_complement();
  const auto dirs = gauge_directions(X);
  const ShapeStructure a = uniform_shape(2, 0.9, 1.4);
  const auto g = volume_gradient(a, dirs);
  const double h = 1e-6;
  for (size_t k = 0; k < dirs.size(); ++k) {
    std::vector<double> yp(dirs.size(), 0.0), ym(dirs.size(), 0.0);
    yp[k] = h;
    ym[k] = -h;
    const double fd = (shape_volume(X, move_along(a, dirs, yp)) - shape_volume(X, move_along(a, dirs, ym))) / (2 * h);
    CHECK(std::abs(fd - g[k]) < 1e-7);
  }
}

TEST_CASE("maximizer on the figure-eight complement") {
  const Triangulation X = figure_eight_complement();
  ShapeStructure start = uniform_shape(2, 1.1, 0.9);
  start.alpha[1] = {0.9, 1.1, kPi - 2.0};
  CHECK(max_gluing_residual(X, start) > 1e-2);
  const VolumeMaximum m = maximize_volume_in_gauge_class(X, start);
  CHECK(m.converged);
  for (const auto& t : m.shape.alpha)
    for (double x : t) CHECK(std::abs(x - kPi / 3) < 1e-6);
  CHECK(m.volume == doctest::Approx(2.029883212819307).epsilon(1e-10));
  CHECK(max_gluing_residual(X, m.shape) < 1e-8);
  CHECK_NOTHROW(angle_holonomy_eigenvalue_report(X, m.shape, {}));
  CHECK_THROWS_AS(angle_holonomy_eigenvalue_report(X, start, {}), Error);
}

TEST_CASE("degenerate cases") {
  const Triangulation single({1}, {});
  CHECK(gluing_residuals(single, uniform_shape(1, 1.0, 1.0)).empty());
  const Triangulation X = figure_eight_complement();
  try {
    maximize_volume_in_gauge_class(X, uniform_shape(2, 1e-8, 1.5));
    FAIL("expected BoundaryDegeneration");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundaryDegeneration);
  }
}
