#include <algorithm>
#include <cmath>

#include "stqft/complexes.hpp"

namespace stqft {

namespace {

constexpr double kPiP = 3.14159265358979323846;

// Labels: 0 = A, 1 = B, 2..4 = X1..X3.
using Point = std::array<double, 3>;

Point label_point(int l) {
  if (l == 0) return {0, 0, 1};
  if (l == 1) return {0, 0, -1};
  const double th = 2.0 * kPiP * (l - 2) / 3.0;
  return {std::cos(th), std::sin(th), 0};
}

int det_sign(const std::array<int, 4>& labels) {
  const Point p0 = label_point(labels[0]);
  Point v[3];
  for (int i = 0; i < 3; ++i) {
    const Point p = label_point(labels[i + 1]);
    for (int k = 0; k < 3; ++k) v[i][k] = p[k] - p0[k];
  }
  const double d = v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) -
                   v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0]) +
                   v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]);
  return d > 0 ? 1 : -1;
}

int other_vertex(int a, int b, int c) {
  for (int x = 0; x < 4; ++x)
    if (x != a && x != b && x != c) return x;
  return -1;
}

}  // namespace

PachnerResult pachner_32(const Triangulation& X, int e, const ShapeStructure& a) {
  if (e < 0 || e >= X.num_edges() || X.edge_is_boundary(e))
    throw Error(ErrorKind::NotApplicable, "3-2 move needs an interior edge");
  const auto slots = X.edge_slots(e);
  if (slots.size() != 3) throw Error(ErrorKind::NotApplicable, "3-2 move needs an edge of degree 3");
  if (slots[0].first == slots[1].first || slots[1].first == slots[2].first || slots[0].first == slots[2].first)
    throw Error(ErrorKind::NotApplicable, "edge meets a tetrahedron twice");
  if (std::abs(edge_weight(X, a, e) - 2.0 * kPiP) > 1e-9)
    throw Error(ErrorKind::NotApplicable, "edge weight is not 2 pi");

  // Walk around the edge, labelling the vertices of the three tetrahedra.
  std::array<int, 3> tets{};
  std::array<std::array<int, 4>, 3> lab{};
  {
    int t = slots[0].first;
    int u = kEdgeVertices[slots[0].second][0], v = kEdgeVertices[slots[0].second][1];
    int c = other_vertex(u, v, -1);
    int d = other_vertex(u, v, c);
    tets[0] = t;
    lab[0][u] = 0;
    lab[0][v] = 1;
    lab[0][c] = 2;
    lab[0][d] = 3;
    for (int i = 1; i < 3; ++i) {
      // leave through the face opposite the vertex labelled X_i
      int prev_x = -1;
      for (int x = 0; x < 4; ++x)
        if (lab[i - 1][x] == i + 1) prev_x = x;
      const FaceSlot& p = X.partner(tets[i - 1], prev_x);
      tets[i] = p.tet;
      lab[i].fill(-1);
      for (int x = 0; x < 4; ++x)
        if (x != prev_x) lab[i][p.vmap[x]] = lab[i - 1][x];
      lab[i][p.face] = i + 3 > 4 ? 2 : i + 3;
    }
    // closing face: tets[2] opposite X3 must glue to tets[0] opposite X2 with matching labels
    int x3 = -1;
    for (int x = 0; x < 4; ++x)
      if (lab[2][x] == 4) x3 = x;
    const FaceSlot& p = X.partner(tets[2], x3);
    if (p.tet != tets[0] || lab[0][p.face] != 3)
      throw Error(ErrorKind::NotApplicable, "star of the edge is not a bipyramid");
    for (int x = 0; x < 4; ++x)
      if (x != x3 && lab[0][p.vmap[x]] != lab[2][x])
        throw Error(ErrorKind::NotApplicable, "star of the edge is not a bipyramid");
  }
  for (int i = 0; i < 3; ++i)
    if (std::find(tets.begin(), tets.end(), slots[i].first) == tets.end())
      throw Error(ErrorKind::NotApplicable, "star of the edge is not a bipyramid");

  int kappa = 0;
  for (int i = 0; i < 3; ++i) {
    const int k = X.orientation(tets[i]) * det_sign(lab[i]);
    if (kappa != 0 && k != kappa) throw Error(ErrorKind::NotApplicable, "inconsistent orientations in the star");
    kappa = k;
  }

  const int n_old = X.num_tets();
  PachnerResult res;
  res.tet_map.assign(n_old, -1);
  std::vector<int> orient;
  for (int t = 0; t < n_old; ++t)
    if (std::find(tets.begin(), tets.end(), t) == tets.end()) {
      res.tet_map[t] = static_cast<int>(orient.size());
      orient.push_back(X.orientation(t));
    }
  const int tA = static_cast<int>(orient.size()), tB = tA + 1;
  const std::array<std::array<int, 4>, 2> new_lab{{{0, 2, 3, 4}, {1, 2, 3, 4}}};
  orient.push_back(kappa * det_sign(new_lab[0]));
  orient.push_back(kappa * det_sign(new_lab[1]));
  res.new_tets = {tA, tB};

  auto new_local = [&](int which, int label) {
    for (int x = 0; x < 4; ++x)
      if (new_lab[which][x] == label) return x;
    return -1;
  };
  auto old_index = [&](int t) {
    for (int i = 0; i < 3; ++i)
      if (tets[i] == t) return i;
    return -1;
  };
  // Outer face of old tet i opposite vertex x -> (which new tet, its face)
  auto outer_target = [&](int i, int x) {
    const int which = lab[i][x] == 1 ? 0 : 1;
    int missing = -1;
    for (int l = 2; l <= 4; ++l)
      if (std::find(lab[i].begin(), lab[i].end(), l) == lab[i].end()) missing = l;
    return std::make_pair(which, new_local(which, missing));
  };

  std::vector<Gluing> glu;
  for (const Gluing& g : X.gluings())
    if (old_index(g.tet_a) < 0 && old_index(g.tet_b) < 0)
      glu.push_back({res.tet_map[g.tet_a], g.face_a, res.tet_map[g.tet_b], g.face_b, g.perm});
  glu.push_back({tA, 0, tB, 0, {1, 2, 3}});

  for (int i = 0; i < 3; ++i)
    for (int x = 0; x < 4; ++x) {
      if (lab[i][x] != 0 && lab[i][x] != 1) continue;
      const FaceSlot& p = X.partner(tets[i], x);
      if (!p.glued()) continue;
      const auto [which, nf] = outer_target(i, x);
      const int nt = which == 0 ? tA : tB;
      Gluing g{nt, nf, -1, -1, {}};
      const int j = old_index(p.tet);
      std::pair<int, int> tgt;
      if (j >= 0) {
        tgt = outer_target(j, p.face);
        g.tet_b = tgt.first == 0 ? tA : tB;
        g.face_b = tgt.second;
        if (std::make_pair(g.tet_a, g.face_a) > std::make_pair(g.tet_b, g.face_b)) continue;
      } else {
        g.tet_b = res.tet_map[p.tet];
        g.face_b = p.face;
      }
      int k = 0;
      for (int w = 0; w < 4; ++w) {
        if (w == nf) continue;
        const int label = new_lab[which][w];
        int ox = -1;
        for (int y = 0; y < 4; ++y)
          if (lab[i][y] == label) ox = y;
        const int img = p.vmap[ox];
        g.perm[k++] = j >= 0 ? new_local(tgt.first, lab[j][img]) : img;
      }
      glu.push_back(g);
    }

  res.complex = Triangulation(orient, glu);

  res.shape.alpha.assign(res.complex.num_tets(), {0, 0, 0});
  for (int t = 0; t < n_old; ++t)
    if (res.tet_map[t] >= 0) res.shape.alpha[res.tet_map[t]] = a.alpha[t];
  for (int which = 0; which < 2; ++which) {
    const int apex = which == 0 ? 0 : 1;
    for (int xl = 2; xl <= 4; ++xl) {
      double ang = 0.0;
      for (int i = 0; i < 3; ++i) {
        int pa = -1, px = -1;
        for (int y = 0; y < 4; ++y) {
          if (lab[i][y] == apex) pa = y;
          if (lab[i][y] == xl) px = y;
        }
        if (px >= 0) ang += a.alpha[tets[i]][quad_of_edge(local_edge(pa, px))];
      }
      if (!(ang > 0.0 && ang < kPiP))
        throw Error(ErrorKind::ShapeViolation, "3-2 move produces an angle outside (0, pi)");
      const int q = quad_of_edge(local_edge(0, new_local(which, xl)));
      res.shape.alpha[which == 0 ? tA : tB][q] = ang;
    }
  }

  res.edge_map.assign(X.num_edges(), -1);
  for (int t = 0; t < n_old; ++t) {
    for (int le = 0; le < 6; ++le) {
      const int oe = X.tet_edge(t, le);
      if (oe == e || res.edge_map[oe] >= 0) continue;
      if (res.tet_map[t] >= 0) {
        res.edge_map[oe] = res.complex.tet_edge(res.tet_map[t], le);
        continue;
      }
      const int i = old_index(t);
      const int l1 = lab[i][kEdgeVertices[le][0]], l2 = lab[i][kEdgeVertices[le][1]];
      const int which = (l1 == 1 || l2 == 1) ? 1 : 0;
      res.edge_map[oe] =
          res.complex.tet_edge(which == 0 ? tA : tB, local_edge(new_local(which, l1), new_local(which, l2)));
    }
  }
  return res;
}

Triangulation standard_bipyramid() {
  std::vector<Gluing> g(3);
  for (int j = 0; j < 3; ++j) {
    g[j].tet_a = j;
    g[j].face_a = 2;
    g[j].tet_b = (j + 1) % 3;
    g[j].face_b = 3;
    g[j].perm = {0, 1, 2};
  }
  return Triangulation({1, 1, 1}, g);
}

}  // namespace stqft
