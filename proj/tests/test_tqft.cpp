#include <random>

#include "doctest.h"
#include "stqft/tqft.hpp"
#include "stqft/triangulation_io.hpp"

using namespace stqft;

namespace {

TriangulationFile example(const std::string& name) { return load_triangulation(std::string(STQFT_EXAMPLES_DIR) + "/" + name); }

QuadratureConfig tol(double t) {
  QuadratureConfig c;
  c.abs_tol = c.rel_tol = t;
  return c;
}

}  // namespace

TEST_CASE("regular tetrahedron weight") {
  const Triangulation X({1}, {});
  ShapeStructure a;
  a.alpha = {{kPi / 3, kPi / 3, kPi / 3}};
  const ModularParameter mp(1.1);
  const cplx g = hyperbolic_gamma(mp.Delta * kPi / 3, mp);
  CHECK(std::abs(tet_weight(X, 0, a, State(6, 0.0), mp) - g * g * g) < 1e-12);
}

TEST_CASE("Boltzmann weight is invariant under the state gauge map") {
  const ModularParameter mp(1.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  for (const char* name : {"fig8.json", "6_1.json"}) {
    const TriangulationFile f = example(name);
    const Triangulation& X = f.complex;
    State s(X.num_edges());
    for (double& x : s) x = U(rng);
    std::vector<double> g(X.num_vertices());
    for (double& x : g) x = U(rng);
    const State bg = state_gauge_image(X, g);
    State t = s;
    for (int e = 0; e < X.num_edges(); ++e) t[e] += bg[e];
    const cplx w0 = boltzmann_weight(X, f.shape, s, mp), w1 = boltzmann_weight(X, f.shape, t, mp);
    CHECK(std::abs(w1 - w0) / std::abs(w0) < 1e-12);
  }
}

TEST_CASE("integral dimension") {
  const TriangulationFile f = example("trefoil.json");
  const auto r = partition_function(f.complex, f.shape, ModularParameter(1.0), tol(1e-8));
  CHECK(r.dimension == static_cast<int>(f.complex.interior_edges().size() - f.complex.interior_vertices().size()));
}

TEST_CASE("trefoil matches its closed form") {
  const TriangulationFile f = example("trefoil.json");
  const ModularParameter mp(1.0);
  const auto r = partition_function(f.complex, f.shape, mp, tol(1e-10));
  const int knot = resolve_edge(f.complex, *f.knot_edge);
  CHECK(std::abs(r.value - knot_edge_factor(f.complex, f.shape, knot, mp)) < 1e-8);
}

TEST_CASE("reversing every orientation conjugates W") {
  TriangulationFile f = example("trefoil.json");
  f.shape.alpha[0] = {0.9, 1.3, kPi - 2.2};
  const ModularParameter mp(0.9);
  const auto w = partition_function(f.complex, f.shape, mp, tol(1e-10)).value;
  std::vector<int> o = f.complex.orientations();
  for (int& x : o) x = -x;
  const Triangulation Y(o, f.complex.gluings());
  const auto v = partition_function(Y, f.shape, mp, tol(1e-10)).value;
  CHECK(std::abs(v - std::conj(w)) / std::abs(w) < 1e-9);
}

TEST_CASE("Pachner invariance with boundary states") {
  const Triangulation X = standard_bipyramid();
  ShapeStructure a;
  a.alpha = {{2.0, 0.5, kPi - 2.5}, {2.2, 0.4, kPi - 2.6}, {2 * kPi - 4.2, 0.5, 4.2 - kPi - 0.5}};
  State bd(X.num_edges(), 0.0);
  for (int e : X.boundary_edges()) bd[e] = 0.05 * e - 0.2;
  const auto r = check_pachner_invariance(X, a, 0, bd, ModularParameter(1.2), tol(1e-10));
  CHECK(r.before.dimension == 1);
  CHECK(r.after.dimension == 0);
  CHECK(r.residual < 1e-8);
}

TEST_CASE("shape gauge invariance on the trefoil") {
  const TriangulationFile f = example("trefoil.json");
  const Triangulation& X = f.complex;
  const int knot = resolve_edge(X, *f.knot_edge);
  const ModularParameter mp(1.0);
  for (int e : X.interior_edges()) {
    if (e == knot) continue;
    const auto [lo, hi] = shape_gauge_interval(X, f.shape, e);
    const auto r = check_shape_gauge_invariance(X, f.shape, e, 0.3 * (hi > 0 ? hi : lo), State(X.num_edges(), 0.0), mp,
                                                tol(1e-10));
    CHECK(r.residual < 1e-7);
  }
}

TEST_CASE("5_2 reduced integral at the balanced point") {
  const ModularParameter mp(1.0);
  const double th = 1.0, b2 = 0.9, g2 = 0.7;
  const Knot52Angles g{th, b2, kPi - th - g2, g2, th, (kPi - th - b2) + g2};
  const auto r = knot52_reduced_2d(g, mp, tol(1e-6));
  const auto c = knot52_balanced(mp, tol(1e-10));
  CHECK(std::abs(r.value - c.value) / std::abs(c.value) < 1e-3);
}
