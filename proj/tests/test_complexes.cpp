#include <random>

#include "doctest.h"
#include "stqft/complexes.hpp"
#include "stqft/special_fn.hpp"
#include "stqft/triangulation_io.hpp"

using namespace stqft;

namespace {

TriangulationFile example(const std::string& name) { return load_triangulation(std::string(STQFT_EXAMPLES_DIR) + "/" + name); }

std::vector<Gluing> bipyramid_gluings() {
  std::vector<Gluing> g(3);
  for (int j = 0; j < 3; ++j) g[j] = Gluing{j, 2, (j + 1) % 3, 3, {0, 1, 2}};
  return g;
}

}  // namespace

TEST_CASE("quad convention") {
  CHECK(quad_of_edge(local_edge(0, 1)) == 0);
  CHECK(quad_of_edge(local_edge(2, 3)) == 0);
  CHECK(quad_of_edge(local_edge(0, 2)) == 1);
  CHECK(quad_of_edge(local_edge(1, 3)) == 1);
  CHECK(quad_of_edge(local_edge(0, 3)) == 2);
  CHECK(quad_of_edge(local_edge(1, 2)) == 2);
  for (int e = 0; e < 6; ++e) CHECK(quad_of_edge(opposite_edge(e)) == quad_of_edge(e));
  CHECK(next_quad(0) == 1);
  CHECK(next_quad(0, true) == 2);
  CHECK(prev_quad(next_quad(2)) == 2);
}

TEST_CASE("single unglued tetrahedron") {
  const Triangulation X({1}, {});
  CHECK(X.num_edges() == 6);
  CHECK(X.interior_edges().empty());
  CHECK(tas_dimension(X) == 0);
}

TEST_CASE("invalid gluings are rejected") {
  CHECK_THROWS_AS(Triangulation({1}, {Gluing{0, 0, 0, 0, {1, 2, 3}}}), Error);
  CHECK_THROWS_AS(Triangulation({1, 1}, {Gluing{0, 0, 1, 0, {1, 1, 3}}}), Error);
  CHECK_THROWS_AS(Triangulation({1, 1}, {Gluing{0, 0, 1, 4, {1, 2, 3}}}), Error);
  CHECK_THROWS_AS(Triangulation({-1, 1, 1}, bipyramid_gluings()), Error);
  CHECK_NOTHROW(Triangulation({1, 1, 1}, bipyramid_gluings()));
}

TEST_CASE("knot complexes") {
  struct Expect {
    const char* file;
    int tets, tas;
  };
  for (const Expect& ex : {Expect{"trefoil.json", 1, 1}, Expect{"fig8.json", 3, 3}, Expect{"5_2.json", 4, 4},
                           Expect{"6_1.json", 5, 5}}) {
    CAPTURE(ex.file);
    const TriangulationFile f = example(ex.file);
    const Triangulation& X = f.complex;
    CHECK(X.num_tets() == ex.tets);
    CHECK(tas_dimension(X) == ex.tas);
    CHECK(gauge_map_rank(X) == static_cast<int>(X.interior_vertices().size()));
    REQUIRE(f.knot_edge);
    CHECK(X.edge_degree(resolve_edge(X, *f.knot_edge)) == 1);
    validate_shape(X, f.shape);
  }
}

TEST_CASE("gauge fixings") {
  const TriangulationFile f = example("fig8.json");
  const Triangulation& X = f.complex;
  const int knot = resolve_edge(X, *f.knot_edge);
  const GaugeFixing a = default_gauge(X, knot);
  CHECK_NOTHROW(validate_gauge(X, a));
  for (const auto& form : a.forms)
    for (const auto& [e, c] : form.terms) CHECK(e != knot);
  const GaugeFixing b = alternative_gauge(X, a, knot);
  CHECK_NOTHROW(validate_gauge(X, b));
  CHECK(a.describe() != b.describe());
}

TEST_CASE("edge generators keep edge weights and holonomies") {
  const TriangulationFile f = example("6_1.json");
  const Triangulation& X = f.complex;
  for (int e : X.interior_edges()) {
    const auto [lo, hi] = shape_gauge_interval(X, f.shape, e);
    if (hi - lo < 1e-9) continue;
    const ShapeStructure s = shape_gauge_transform(X, f.shape, e, 0.5 * (hi > 0 ? hi : lo));
    validate_shape(X, s);
    for (int c = 0; c < X.num_edges(); ++c) CHECK(std::abs(edge_weight(X, s, c) - edge_weight(X, f.shape, c)) < 1e-12);
    for (int c : X.interior_edges())
      CHECK(std::abs(angle_holonomy(X, s, edge_loop(X, c)) - angle_holonomy(X, f.shape, edge_loop(X, c))) < 1e-12);
  }
  CHECK_THROWS_AS(shape_gauge_transform(X, f.shape, X.interior_edges().front(), 10.0), Error);
}

TEST_CASE("3-2 move on the bipyramid") {
  const Triangulation X = standard_bipyramid();
  CHECK(X.edge_degree(0) == 3);
  ShapeStructure a;
  a.alpha = {{2.0, 0.5, kPi - 2.5}, {2.2, 0.4, kPi - 2.6}, {2 * kPi - 4.2, 0.8, 4.2 - kPi - 0.8}};
  validate_shape(X, a);
  CHECK(std::abs(edge_weight(X, a, 0) - 2 * kPi) < 1e-12);
  const PachnerResult r = pachner_32(X, 0, a);
  CHECK(r.complex.num_tets() == 2);
  CHECK(r.complex.interior_edges().empty());
  validate_shape(r.complex, r.shape);
  for (int e = 1; e < X.num_edges(); ++e)
    CHECK(std::abs(edge_weight(r.complex, r.shape, r.edge_map[e]) - edge_weight(X, a, e)) < 1e-12);
  ShapeStructure off = a;
  off.alpha[0] = {1.9, 0.6, kPi - 2.5};
  CHECK_THROWS_AS(pachner_32(X, 0, off), Error);
}

TEST_CASE("triangulation files") {
  const TriangulationFile f = example("5_2.json");
  const TriangulationFile g = parse_triangulation(dump_triangulation(f));
  CHECK(dump_triangulation(g) == dump_triangulation(f));
  CHECK(g.complex.summary() == f.complex.summary());

  std::string text = dump_triangulation(f);
  const auto pos = text.find("\"angles\"");
  REQUIRE(pos != std::string::npos);
  TriangulationFile bad = f;
  bad.shape.alpha[1][0] += 0.01;
  try {
    parse_triangulation(dump_triangulation(bad));
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Schema);
    CHECK(std::string(e.what()).find("tetrahedron 1") != std::string::npos);
  }
  try {
    parse_triangulation("{\"tets\": 1,\n \"orientations\": [1,\n");
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_triangulation("{\"tets\": 2, \"orientations\": [1]}"), Error);
}
