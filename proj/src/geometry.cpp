#include "stqft/geometry.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "stqft/errors.hpp"

namespace stqft {

namespace {

constexpr double kEdgeGap = 1e-6;

bool inside(const ShapeStructure& a) {
  for (const auto& row : a.alpha)
    for (double x : row)
      if (!(x > kEdgeGap && x < kPi - kEdgeGap)) return false;
  return true;
}

}  // namespace

double shape_volume(const Triangulation& X, const ShapeStructure& a) {
  double v = 0.0;
  for (int t = 0; t < X.num_tets(); ++t)
    for (int q = 0; q < 3; ++q) v += lobachevsky(a.alpha[t][q]);
  return v;
}

cplx shape_parameter(const Triangulation& X, const ShapeStructure& a, int t, int q) {
  const bool flip = X.orientation(t) < 0;
  const double x = a.alpha[t][q];
  return std::polar(std::sin(a.alpha[t][prev_quad(q, flip)]) / std::sin(a.alpha[t][next_quad(q, flip)]), x);
}

std::vector<GluingResidual> gluing_residuals(const Triangulation& X, const ShapeStructure& a) {
  std::vector<GluingResidual> out;
  for (int e : X.interior_edges()) {
    GluingResidual r;
    r.edge = e;
    for (const auto& [t, le] : X.edge_slots(e)) r.product *= shape_parameter(X, a, t, quad_of_edge(le));
    r.residual = std::abs(r.product - 1.0);
    out.push_back(r);
  }
  return out;
}

double max_gluing_residual(const Triangulation& X, const ShapeStructure& a) {
  double m = 0.0;
  for (const auto& r : gluing_residuals(X, a)) m = std::max(m, r.residual);
  return m;
}

std::vector<QuadVector> gauge_directions(const Triangulation& X) {
  // orthonormal basis of the tangential angle structures: per-tet sums and
  // edge weights fixed
  const int n = X.num_tets();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + X.num_edges(), 3 * n);
  for (int t = 0; t < n; ++t)
    for (int q = 0; q < 3; ++q) m(t, 3 * t + q) = 1.0;
  for (int t = 0; t < n; ++t)
    for (int le = 0; le < 6; ++le)
      m(n + X.tet_edge(t, le), 3 * t + quad_of_edge(le)) += 1.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  std::vector<QuadVector> basis;
  for (int k = rank; k < 3 * n; ++k) {
    QuadVector v(n, {0.0, 0.0, 0.0});
    for (int t = 0; t < n; ++t)
      for (int q = 0; q < 3; ++q) v[t][q] = svd.matrixV()(3 * t + q, k);
    basis.push_back(v);
  }
  return basis;
}

ShapeStructure move_along(const ShapeStructure& a, const std::vector<QuadVector>& dirs, const std::vector<double>& y) {
  ShapeStructure b = a;
  for (std::size_t k = 0; k < dirs.size(); ++k)
    for (std::size_t t = 0; t < b.alpha.size(); ++t)
      for (int q = 0; q < 3; ++q) b.alpha[t][q] += y[k] * dirs[k][t][q];
  return b;
}

std::vector<double> volume_gradient(const ShapeStructure& a, const std::vector<QuadVector>& dirs) {
  std::vector<double> g(dirs.size(), 0.0);
  for (std::size_t k = 0; k < dirs.size(); ++k)
    for (std::size_t t = 0; t < a.alpha.size(); ++t)
      for (int q = 0; q < 3; ++q) g[k] += dirs[k][t][q] * lobachevsky_derivative(a.alpha[t][q]);
  return g;
}

VolumeMaximum maximize_volume_in_gauge_class(const Triangulation& X, const ShapeStructure& a, double tol,
                                             int max_iterations) {
  validate_shape(X, a, 1e-9);
  if (!inside(a)) throw Error(ErrorKind::BoundaryDegeneration, "start shape is within 1e-6 of the angle box");
  const auto dirs = gauge_directions(X);
  VolumeMaximum out;
  out.shape = a;
  out.volume = shape_volume(X, a);
  double step = 0.5;
  for (int it = 0; it < max_iterations; ++it) {
    const auto g = volume_gradient(out.shape, dirs);
    double gn = 0.0;
    for (double x : g) gn += x * x;
    gn = std::sqrt(gn);
    out.gradient_norm = gn;
    out.iterations = it;
    if (gn < tol) {
      out.converged = true;
      return out;
    }
    bool moved = false;
    for (step = std::min(1.0, 4.0 * step); step > 1e-16; step *= 0.5) {
      std::vector<double> y(g.size());
      for (std::size_t k = 0; k < g.size(); ++k) y[k] = step * g[k];
      ShapeStructure b = move_along(out.shape, dirs, y);
      if (!inside(b)) continue;
      const double v = shape_volume(X, b);
      bool ok = v >= out.volume + 0.25 * step * gn * gn;
      if (!ok && std::abs(v - out.volume) < 1e-12 * std::abs(out.volume)) {
        // below volume roundoff; require the slope to keep its sign instead
        const auto gb = volume_gradient(b, dirs);
        double d = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) d += gb[k] * g[k];
        ok = d >= 0.0;
      }
      if (ok) {
        out.shape = b;
        out.volume = v;
        moved = true;
        break;
      }
    }
    if (!moved) {
      for (const auto& row : out.shape.alpha)
        for (double x : row)
          if (x < 1e-3 || x > kPi - 1e-3)
            throw Error(ErrorKind::BoundaryDegeneration, "volume ascent stalls against the angle box");
      out.converged = gn < 1e3 * tol;
      return out;
    }
  }
  return out;
}

std::vector<HolonomyPhase> angle_holonomy_eigenvalue_report(const Triangulation& X, const ShapeStructure& b,
                                                            const std::vector<EdgeLoop>& loops, double tol) {
  if (max_gluing_residual(X, b) > tol) throw Error(ErrorKind::NotCritical, "shape does not satisfy the gluing equations");
  std::vector<HolonomyPhase> out;
  for (const auto& l : loops) {
    const double h = angle_holonomy(X, b, l);
    out.push_back({h, h / 2.0});
  }
  return out;
}

Triangulation figure_eight_complement() {
  std::vector<Gluing> g(4);
  const std::array<std::array<int, 3>, 4> perms{{{1, 3, 2}, {2, 0, 3}, {0, 3, 1}, {1, 0, 2}}};
  for (int f = 0; f < 4; ++f) {
    g[f].tet_a = 0;
    g[f].face_a = f;
    g[f].tet_b = 1;
    g[f].face_b = f;
    g[f].perm = perms[f];
  }
  return Triangulation({1, 1}, g);
}

}  // namespace stqft
