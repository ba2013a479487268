#include "stqft/complexes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace stqft {

namespace {

constexpr double kPiC = 3.14159265358979323846;

std::array<int, 3> face_vertices(int f) {
  std::array<int, 3> out{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != f) out[k++] = v;
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

int permutation_sign(const std::array<int, 3>& p) {
  int inv = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (p[i] > p[j]) ++inv;
  return (inv % 2) ? -1 : 1;
}

bool tau_flipped(const Triangulation& X, int t, bool flipped) {
  return (X.orientation(t) < 0) != flipped;
}

}  // namespace

int local_edge(int u, int v) {
  if (u > v) std::swap(u, v);
  for (int e = 0; e < 6; ++e)
    if (kEdgeVertices[e][0] == u && kEdgeVertices[e][1] == v) return e;
  throw Error(ErrorKind::BadGluing, "not a tetrahedron edge");
}

int opposite_edge(int e) { return 5 - e; }
int quad_of_edge(int e) { return std::min(e, 5 - e); }
int next_quad(int q, bool flipped) { return flipped ? (q + 2) % 3 : (q + 1) % 3; }
int prev_quad(int q, bool flipped) { return flipped ? (q + 1) % 3 : (q + 2) % 3; }

std::array<int, 4> gluing_vertex_map(const Gluing& g) {
  std::array<int, 4> vm{-1, -1, -1, -1};
  const auto fa = face_vertices(g.face_a);
  for (int i = 0; i < 3; ++i) vm[fa[i]] = g.perm[i];
  vm[g.face_a] = g.face_b;
  return vm;
}

Triangulation::Triangulation(std::vector<int> orientation, std::vector<Gluing> gluings)
    : orientation_(std::move(orientation)), gluings_(std::move(gluings)) {
  const int n = num_tets();
  for (int t = 0; t < n; ++t)
    if (orientation_[t] != 1 && orientation_[t] != -1)
      throw Error(ErrorKind::BadGluing, "orientation of tetrahedron " + std::to_string(t) + " must be +1 or -1");
  partner_.assign(n, {});

  for (std::size_t gi = 0; gi < gluings_.size(); ++gi) {
    const Gluing& g = gluings_[gi];
    const std::string where = "gluing " + std::to_string(gi);
    if (g.tet_a < 0 || g.tet_a >= n || g.tet_b < 0 || g.tet_b >= n)
      throw Error(ErrorKind::BadGluing, where + ": tetrahedron index out of range");
    if (g.face_a < 0 || g.face_a > 3 || g.face_b < 0 || g.face_b > 3)
      throw Error(ErrorKind::BadGluing, where + ": face index out of range");
    if (g.tet_a == g.tet_b && g.face_a == g.face_b)
      throw Error(ErrorKind::BadGluing, where + ": face glued to itself");
    auto fb = face_vertices(g.face_b);
    auto sorted = g.perm;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != fb) throw Error(ErrorKind::BadGluing, where + ": perm is not a bijection onto face_b");
    if (partner_[g.tet_a][g.face_a].glued() || partner_[g.tet_b][g.face_b].glued())
      throw Error(ErrorKind::BadGluing, where + ": face glued more than once");
    // Induced boundary orientation of face i is sigma * (-1)^i on its sorted triple.
    std::array<int, 3> rank{};
    for (int i = 0; i < 3; ++i)
      rank[i] = static_cast<int>(std::find(fb.begin(), fb.end(), g.perm[i]) - fb.begin());
    const int sa = orientation_[g.tet_a] * ((g.face_a % 2) ? -1 : 1);
    const int sb = orientation_[g.tet_b] * ((g.face_b % 2) ? -1 : 1) * permutation_sign(rank);
    if (sa != -sb) throw Error(ErrorKind::BadGluing, where + ": gluing is orientation-preserving");

    const auto vm = gluing_vertex_map(g);
    std::array<int, 4> inv{-1, -1, -1, -1};
    for (int v = 0; v < 4; ++v) inv[vm[v]] = v;
    partner_[g.tet_a][g.face_a] = FaceSlot{g.tet_b, g.face_b, vm};
    partner_[g.tet_b][g.face_b] = FaceSlot{g.tet_a, g.face_a, inv};
  }

  UnionFind vuf(4 * n), euf(6 * n);
  for (const Gluing& g : gluings_) {
    const auto vm = gluing_vertex_map(g);
    const auto fa = face_vertices(g.face_a);
    for (int i = 0; i < 3; ++i) {
      vuf.unite(4 * g.tet_a + fa[i], 4 * g.tet_b + vm[fa[i]]);
      for (int j = i + 1; j < 3; ++j)
        euf.unite(6 * g.tet_a + local_edge(fa[i], fa[j]), 6 * g.tet_b + local_edge(vm[fa[i]], vm[fa[j]]));
    }
  }

  std::vector<int> vclass(4 * n, -1), eclass(6 * n, -1);
  int nv = 0, ne = 0;
  tet_vertex_.assign(n, {});
  tet_edge_.assign(n, {});
  for (int t = 0; t < n; ++t) {
    for (int v = 0; v < 4; ++v) {
      const int r = vuf.find(4 * t + v);
      if (vclass[r] < 0) vclass[r] = nv++;
      tet_vertex_[t][v] = vclass[r];
    }
    for (int e = 0; e < 6; ++e) {
      const int r = euf.find(6 * t + e);
      if (eclass[r] < 0) {
        eclass[r] = ne++;
        std::array<int, 2> ends{tet_vertex_[t][kEdgeVertices[e][0]], tet_vertex_[t][kEdgeVertices[e][1]]};
        std::sort(ends.begin(), ends.end());
        edge_ends_.push_back(ends);
      }
      tet_edge_[t][e] = eclass[r];
    }
  }

  vertex_boundary_.assign(nv, false);
  edge_boundary_.assign(ne, false);
  int glued_faces = 0;
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      if (partner_[t][f].glued()) {
        ++glued_faces;
        continue;
      }
      ++num_boundary_faces_;
      const auto fv = face_vertices(f);
      for (int i = 0; i < 3; ++i) {
        vertex_boundary_[tet_vertex_[t][fv[i]]] = true;
        for (int j = i + 1; j < 3; ++j) edge_boundary_[tet_edge_[t][local_edge(fv[i], fv[j])]] = true;
      }
    }
  num_faces_ = glued_faces / 2 + num_boundary_faces_;
}

std::vector<int> Triangulation::interior_edges() const {
  std::vector<int> out;
  for (int e = 0; e < num_edges(); ++e)
    if (!edge_boundary_[e]) out.push_back(e);
  return out;
}

std::vector<int> Triangulation::boundary_edges() const {
  std::vector<int> out;
  for (int e = 0; e < num_edges(); ++e)
    if (edge_boundary_[e]) out.push_back(e);
  return out;
}

std::vector<int> Triangulation::interior_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < num_vertices(); ++v)
    if (!vertex_boundary_[v]) out.push_back(v);
  return out;
}

std::vector<std::pair<int, int>> Triangulation::edge_slots(int e) const {
  std::vector<std::pair<int, int>> out;
  for (int t = 0; t < num_tets(); ++t)
    for (int le = 0; le < 6; ++le)
      if (tet_edge_[t][le] == e) out.emplace_back(t, le);
  return out;
}

std::string Triangulation::summary() const {
  std::ostringstream os;
  os << "tets=" << num_tets() << " vertices=" << num_vertices() << " edges=" << num_edges()
     << " faces=" << num_faces() << " boundary_faces=" << num_boundary_faces()
     << " interior_edges=" << interior_edges().size() << " interior_vertices=" << interior_vertices().size()
     << " euler=" << euler_characteristic();
  return os.str();
}

Triangulation build_complex(const std::vector<int>& orientation, const std::vector<Gluing>& gluings) {
  return Triangulation(orientation, gluings);
}

void validate_shape(const Triangulation& X, const ShapeStructure& s, double tol) {
  if (static_cast<int>(s.alpha.size()) != X.num_tets())
    throw Error(ErrorKind::ShapeViolation, "shape structure has wrong number of tetrahedra");
  for (int t = 0; t < X.num_tets(); ++t) {
    double sum = 0.0;
    for (int q = 0; q < 3; ++q) {
      const double a = s.alpha[t][q];
      if (!(a > 0.0 && a < kPiC))
        throw Error(ErrorKind::ShapeViolation, "angle outside (0, pi) in tetrahedron " + std::to_string(t));
      sum += a;
    }
    if (std::abs(sum - kPiC) > tol)
      throw Error(ErrorKind::ShapeViolation, "angles do not sum to pi in tetrahedron " + std::to_string(t));
  }
}

double quad_state(const Triangulation& X, const State& s, int tet, int q) {
  return s[X.tet_edge(tet, kQuadEdges[q][0])] + s[X.tet_edge(tet, kQuadEdges[q][1])];
}

State state_gauge_image(const Triangulation& X, const std::vector<double>& g) {
  State out(X.num_edges(), 0.0);
  for (int e = 0; e < X.num_edges(); ++e) {
    const auto& ends = X.edge_ends(e);
    out[e] = g[ends[0]] + g[ends[1]];
  }
  return out;
}

int gauge_map_rank(const Triangulation& X) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(X.num_edges(), X.num_vertices());
  for (int e = 0; e < X.num_edges(); ++e) {
    const auto& ends = X.edge_ends(e);
    m(e, ends[0]) += 1.0;
    m(e, ends[1]) += 1.0;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  return static_cast<int>(lu.rank());
}

std::string GaugeFixing::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (i) os << "; ";
    os << "v" << forms[i].vertex << ":";
    for (const auto& [e, c] : forms[i].terms) os << " " << c << "*s" << e;
  }
  return os.str();
}

double apply_form(const GaugeForm& f, const State& s) {
  double v = 0.0;
  for (const auto& [e, c] : f.terms) v += c * s[e];
  return v;
}

namespace {

bool form_is_valid(const Triangulation& X, const GaugeForm& f) {
  for (int w : X.interior_vertices()) {
    std::vector<double> g(X.num_vertices(), 0.0);
    g[w] = 1.0;
    const double lhs = apply_form(f, state_gauge_image(X, g));
    if (std::abs(lhs - (w == f.vertex ? 1.0 : 0.0)) > 1e-12) return false;
  }
  return true;
}

}  // namespace

void validate_gauge(const Triangulation& X, const GaugeFixing& lambda) {
  const auto inner = X.interior_vertices();
  if (lambda.forms.size() != inner.size())
    throw Error(ErrorKind::InvalidGauge, "need exactly one gauge form per interior vertex");
  std::vector<bool> seen(X.num_vertices(), false);
  for (const auto& f : lambda.forms) {
    if (f.vertex < 0 || f.vertex >= X.num_vertices() || X.vertex_is_boundary(f.vertex) || seen[f.vertex])
      throw Error(ErrorKind::InvalidGauge, "gauge form attached to an invalid vertex");
    seen[f.vertex] = true;
    for (const auto& [e, c] : f.terms)
      if (e < 0 || e >= X.num_edges() || X.edge_is_boundary(e))
        throw Error(ErrorKind::InvalidGauge, "gauge form uses a non-interior edge");
    if (!form_is_valid(X, f))
      throw Error(ErrorKind::InvalidGauge, "<lambda_v, b g> != g(v) at vertex " + std::to_string(f.vertex));
  }
}

GaugeFixing default_gauge(const Triangulation& X, int avoid_edge) {
  GaugeFixing out;
  for (int v : X.interior_vertices()) {
    bool found = false;
    for (int e : X.interior_edges()) {
      const auto& ends = X.edge_ends(e);
      if (e == avoid_edge || (ends[0] != v && ends[1] != v)) continue;
      GaugeForm f{v, {{e, X.edge_is_loop(e) ? 0.5 : 1.0}}};
      if (form_is_valid(X, f)) {
        out.forms.push_back(f);
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorKind::InvalidGauge, "no coordinate gauge at vertex " + std::to_string(v));
  }
  return out;
}

GaugeFixing alternative_gauge(const Triangulation& X, const GaugeFixing& first, int avoid_edge) {
  validate_gauge(X, first);
  GaugeFixing out;
  bool changed = false;
  for (const GaugeForm& f0 : first.forms) {
    GaugeForm pick = f0;
    for (int e : X.interior_edges()) {
      const auto& ends = X.edge_ends(e);
      if (e == avoid_edge || (ends[0] != f0.vertex && ends[1] != f0.vertex)) continue;
      if (f0.is_coordinate() && f0.terms[0].first == e) continue;
      GaugeForm f{f0.vertex, {{e, X.edge_is_loop(e) ? 0.5 : 1.0}}};
      if (form_is_valid(X, f)) {
        pick = f;
        changed = true;
        break;
      }
    }
    out.forms.push_back(pick);
  }
  if (!changed) throw Error(ErrorKind::NotApplicable, "no second coordinate gauge");
  return out;
}

GaugeFixing coordinate_gauge(const Triangulation& X, const std::vector<int>& edges) {
  const auto inner = X.interior_vertices();
  if (edges.size() != inner.size()) throw Error(ErrorKind::InvalidGauge, "one edge per interior vertex required");
  GaugeFixing out;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const int v = inner[i], e = edges[i];
    if (e < 0 || e >= X.num_edges()) throw Error(ErrorKind::InvalidGauge, "edge index out of range");
    const auto& ends = X.edge_ends(e);
    const int incidence = (ends[0] == v) + (ends[1] == v);
    if (incidence == 0) throw Error(ErrorKind::InvalidGauge, "gauge edge not incident to its vertex");
    out.forms.push_back(GaugeForm{v, {{e, 1.0 / incidence}}});
  }
  validate_gauge(X, out);
  return out;
}

double edge_weight(const Triangulation& X, const ShapeStructure& a, int e) {
  double w = 0.0;
  for (const auto& [t, le] : X.edge_slots(e)) w += a.alpha[t][quad_of_edge(le)];
  return w;
}

int loop_quad(const LoopStep& st) {
  int u = -1, v = -1;
  for (int x = 0; x < 4; ++x)
    if (x != st.face_in && x != st.face_out) (u < 0 ? u : v) = x;
  return quad_of_edge(local_edge(u, v));
}

void validate_loop(const Triangulation& X, const EdgeLoop& loop) {
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const LoopStep& s = loop[i];
    if (s.tet < 0 || s.tet >= X.num_tets() || s.face_in < 0 || s.face_in > 3 || s.face_out < 0 ||
        s.face_out > 3 || s.face_in == s.face_out)
      throw Error(ErrorKind::BadLoop, "malformed loop step " + std::to_string(i));
    const FaceSlot& p = X.partner(s.tet, s.face_out);
    const LoopStep& nx = loop[(i + 1) % n];
    if (!p.glued() || p.tet != nx.tet || p.face != nx.face_in)
      throw Error(ErrorKind::BadLoop, "loop step " + std::to_string(i) + " does not continue through a glued face");
  }
}

double angle_holonomy(const Triangulation& X, const ShapeStructure& a, const EdgeLoop& loop) {
  validate_loop(X, loop);
  double h = 0.0;
  for (const auto& st : loop) h += a.alpha[st.tet][loop_quad(st)];
  return h;
}

EdgeLoop edge_loop(const Triangulation& X, int e) {
  if (e < 0 || e >= X.num_edges() || X.edge_is_boundary(e))
    throw Error(ErrorKind::BadLoop, "edge loops exist only around interior edges");
  const auto slots = X.edge_slots(e);
  int t = slots.front().first;
  int u = kEdgeVertices[slots.front().second][0], v = kEdgeVertices[slots.front().second][1];
  int c = -1, d = -1;
  for (int x = 0; x < 4; ++x)
    if (x != u && x != v) (c < 0 ? c : d) = x;
  const int t0 = t, c0 = c, d0 = d;
  EdgeLoop loop;
  for (std::size_t guard = 0; guard <= slots.size(); ++guard) {
    loop.push_back({t, c, d});
    const FaceSlot& p = X.partner(t, d);
    if (!p.glued()) throw Error(ErrorKind::BadLoop, "edge loop reached the boundary");
    const int nu = p.vmap[u], nv = p.vmap[v], nc = p.face;
    int nd = -1;
    for (int x = 0; x < 4; ++x)
      if (x != nu && x != nv && x != nc) nd = x;
    t = p.tet;
    u = nu;
    v = nv;
    c = nc;
    d = nd;
    if (t == t0 && c == c0 && d == d0) return loop;
  }
  throw Error(ErrorKind::BadLoop, "edge loop did not close");
}

QuadVector loop_generator(const Triangulation& X, const EdgeLoop& loop, bool flipped) {
  QuadVector g(X.num_tets(), {0.0, 0.0, 0.0});
  for (const auto& st : loop) {
    const int q = loop_quad(st);
    const bool f = tau_flipped(X, st.tet, flipped);
    g[st.tet][next_quad(q, f)] += 1.0;
    g[st.tet][prev_quad(q, f)] -= 1.0;
  }
  return g;
}

QuadVector edge_generator(const Triangulation& X, int e, bool flipped) {
  return loop_generator(X, edge_loop(X, e), flipped);
}

std::vector<QuadVector> tas_basis(const Triangulation& X) {
  std::vector<QuadVector> out;
  for (int e : X.interior_edges()) out.push_back(edge_generator(X, e));
  return out;
}

int tas_dimension(const Triangulation& X) {
  const int n = X.num_tets();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + X.num_edges(), 3 * n);
  for (int t = 0; t < n; ++t)
    for (int q = 0; q < 3; ++q) m(t, 3 * t + q) = 1.0;
  for (int t = 0; t < n; ++t)
    for (int le = 0; le < 6; ++le) m(n + X.tet_edge(t, le), 3 * t + quad_of_edge(le)) += 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  return 3 * n - static_cast<int>(lu.rank());
}

int span_rank(const std::vector<QuadVector>& vs) {
  if (vs.empty()) return 0;
  const int n = static_cast<int>(vs.front().size());
  Eigen::MatrixXd m(vs.size(), 3 * n);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (int t = 0; t < n; ++t)
      for (int q = 0; q < 3; ++q) m(i, 3 * t + q) = vs[i][t][q];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  return static_cast<int>(lu.rank());
}

std::pair<double, double> shape_gauge_interval(const Triangulation& X, const ShapeStructure& a, int e) {
  const QuadVector g = edge_generator(X, e);
  double lo = -1e300, hi = 1e300;
  for (int t = 0; t < X.num_tets(); ++t)
    for (int q = 0; q < 3; ++q) {
      const double gv = g[t][q], x = a.alpha[t][q];
      if (gv > 0) {
        lo = std::max(lo, -x / gv);
        hi = std::min(hi, (kPiC - x) / gv);
      } else if (gv < 0) {
        lo = std::max(lo, (kPiC - x) / gv);
        hi = std::min(hi, -x / gv);
      }
    }
  return {lo, hi};
}

ShapeStructure shape_gauge_transform(const Triangulation& X, const ShapeStructure& a, int e, double t) {
  if (e < 0 || e >= X.num_edges() || X.edge_is_boundary(e))
    throw Error(ErrorKind::NotApplicable, "shape gauge transformations need an interior edge");
  const QuadVector g = edge_generator(X, e);
  ShapeStructure out = a;
  for (int k = 0; k < X.num_tets(); ++k)
    for (int q = 0; q < 3; ++q) {
      out.alpha[k][q] += t * g[k][q];
      if (!(out.alpha[k][q] > 0.0 && out.alpha[k][q] < kPiC))
        throw Error(ErrorKind::ShapeViolation, "gauge move leaves (0, pi) in tetrahedron " + std::to_string(k));
    }
  return out;
}

}  // namespace stqft
