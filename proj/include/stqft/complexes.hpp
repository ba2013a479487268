#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "stqft/errors.hpp"

namespace stqft {

// Local edges of a tetrahedron, in this order: 01 02 03 12 13 23.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Quad k separates edge (0, k+1) from its opposite edge.
inline constexpr std::array<std::array<int, 2>, 3> kQuadEdges{{{0, 5}, {1, 4}, {2, 3}}};

int local_edge(int u, int v);
int opposite_edge(int e);
int quad_of_edge(int e);
// tau(q) = q' ; the flipped convention reverses the cyclic order.
int next_quad(int q, bool flipped = false);
int prev_quad(int q, bool flipped = false);

struct Gluing {
  int tet_a = 0, face_a = 0;
  int tet_b = 0, face_b = 0;
  // Images in tet_b of the vertices of face_a, listed in increasing order.
  std::array<int, 3> perm{0, 1, 2};
};

// Full vertex map of a gluing: vertex of tet_a (on face_a) -> vertex of tet_b.
std::array<int, 4> gluing_vertex_map(const Gluing& g);

struct FaceSlot {
  int tet = -1, face = -1;
  std::array<int, 4> vmap{-1, -1, -1, -1};
  bool glued() const { return tet >= 0; }
};

class Triangulation {
 public:
  Triangulation() = default;
  Triangulation(std::vector<int> orientation, std::vector<Gluing> gluings);

  int num_tets() const { return static_cast<int>(orientation_.size()); }
  int num_vertices() const { return static_cast<int>(vertex_boundary_.size()); }
  int num_edges() const { return static_cast<int>(edge_ends_.size()); }
  int num_faces() const { return num_faces_; }
  int num_boundary_faces() const { return num_boundary_faces_; }
  int euler_characteristic() const { return num_vertices() - num_edges() + num_faces() - num_tets(); }

  int orientation(int t) const { return orientation_[t]; }
  const std::vector<int>& orientations() const { return orientation_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }

  int tet_edge(int t, int local) const { return tet_edge_[t][local]; }
  int tet_vertex(int t, int local) const { return tet_vertex_[t][local]; }
  const std::array<int, 2>& edge_ends(int e) const { return edge_ends_[e]; }
  bool edge_is_boundary(int e) const { return edge_boundary_[e]; }
  bool vertex_is_boundary(int v) const { return vertex_boundary_[v]; }
  bool edge_is_loop(int e) const { return edge_ends_[e][0] == edge_ends_[e][1]; }
  const FaceSlot& partner(int t, int face) const { return partner_[t][face]; }

  std::vector<int> interior_edges() const;
  std::vector<int> boundary_edges() const;
  std::vector<int> interior_vertices() const;
  // (tet, local edge) slots in the class of e
  std::vector<std::pair<int, int>> edge_slots(int e) const;
  int edge_degree(int e) const { return static_cast<int>(edge_slots(e).size()); }

  // Human-readable summary of cell counts.
  std::string summary() const;

 private:
  std::vector<int> orientation_;
  std::vector<Gluing> gluings_;
  std::vector<std::array<int, 6>> tet_edge_;
  std::vector<std::array<int, 4>> tet_vertex_;
  std::vector<std::array<FaceSlot, 4>> partner_;
  std::vector<std::array<int, 2>> edge_ends_;
  std::vector<bool> edge_boundary_;
  std::vector<bool> vertex_boundary_;
  int num_faces_ = 0;
  int num_boundary_faces_ = 0;
};

Triangulation build_complex(const std::vector<int>& orientation, const std::vector<Gluing>& gluings);

// Dihedral angles indexed [tet][quad].
struct ShapeStructure {
  std::vector<std::array<double, 3>> alpha;
  double operator()(int t, int q) const { return alpha[t][q]; }
};

void validate_shape(const Triangulation& X, const ShapeStructure& s, double tol = 1e-12);

using State = std::vector<double>;  // indexed by edge class

// s~(q) = s(e) + s(e') over the opposite pair separated by q.
double quad_state(const Triangulation& X, const State& s, int tet, int q);

State state_gauge_image(const Triangulation& X, const std::vector<double>& g);
int gauge_map_rank(const Triangulation& X);

struct GaugeForm {
  int vertex = -1;
  std::vector<std::pair<int, double>> terms;  // (edge, coefficient)
  bool is_coordinate() const { return terms.size() == 1; }
};

struct GaugeFixing {
  std::vector<GaugeForm> forms;
  std::string describe() const;
};

double apply_form(const GaugeForm& f, const State& s);
// Checks <lambda_v, b g> = g(v) on every interior basis potential.
void validate_gauge(const Triangulation& X, const GaugeFixing& lambda);
// First valid coordinate form per interior vertex, never using avoid_edge.
GaugeFixing default_gauge(const Triangulation& X, int avoid_edge = -1);
// Coordinate gauge at each interior vertex on the given edges, with the
// coefficient that makes the form a valid gauge fixing.
// A valid coordinate gauge differing from first at as many vertices as possible.
// Throws NotApplicable when no vertex admits a second valid edge.
GaugeFixing alternative_gauge(const Triangulation& X, const GaugeFixing& first, int avoid_edge = -1);
GaugeFixing coordinate_gauge(const Triangulation& X, const std::vector<int>& edges);

double edge_weight(const Triangulation& X, const ShapeStructure& a, int e);

// A dual edge loop: per step (tet, face entered through, face left through).
struct LoopStep {
  int tet, face_in, face_out;
};
using EdgeLoop = std::vector<LoopStep>;

int loop_quad(const LoopStep& st);
void validate_loop(const Triangulation& X, const EdgeLoop& loop);
double angle_holonomy(const Triangulation& X, const ShapeStructure& a, const EdgeLoop& loop);
// Loop around the link vertex of an interior edge.
EdgeLoop edge_loop(const Triangulation& X, int e);

using QuadVector = std::vector<std::array<double, 3>>;
QuadVector loop_generator(const Triangulation& X, const EdgeLoop& loop, bool flipped = false);
QuadVector edge_generator(const Triangulation& X, int e, bool flipped = false);
std::vector<QuadVector> tas_basis(const Triangulation& X);
// Dimension of {x : per-tet sums 0, per-edge sums 0} by dense null space.
int tas_dimension(const Triangulation& X);
int span_rank(const std::vector<QuadVector>& vs);

ShapeStructure shape_gauge_transform(const Triangulation& X, const ShapeStructure& a, int e, double t);
// Admissible interval of t for the gauge move at e.
std::pair<double, double> shape_gauge_interval(const Triangulation& X, const ShapeStructure& a, int e);

struct PachnerResult {
  Triangulation complex;
  ShapeStructure shape;
  // index of the two new tetrahedra (apex A, apex B) in the result
  std::array<int, 2> new_tets{-1, -1};
  // old tet index -> new tet index, -1 for removed tetrahedra
  std::vector<int> tet_map;
  // old edge class -> new edge class, -1 for the removed edge
  std::vector<int> edge_map;
};

PachnerResult pachner_32(const Triangulation& X, int e, const ShapeStructure& a);

// Three positive tetrahedra [A, B, X_j, X_j+1] around the interior edge AB = edge 0.
Triangulation standard_bipyramid();

}  // namespace stqft
