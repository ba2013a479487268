#include <random>
#include <sstream>

#include "commands.hpp"
#include "stqft/errors.hpp"
#include "stqft/geometry.hpp"
#include "stqft/tqft.hpp"
#include "stqft/triangulation_io.hpp"

namespace stqft::cli {

using nlohmann::json;

namespace {

TriangulationFile load(const std::string& path, std::string& text) {
  text = read_file(path);
  try {
    TriangulationFile f = parse_triangulation(text);
    if (f.shape.alpha.empty()) throw Error(ErrorKind::Schema, "angles: missing");
    return f;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    throw Error(ErrorKind::Schema, path + ": " + e.what());
  }
}

json shape_json(const ShapeStructure& a) { return a.alpha; }

}  // namespace

int cmd_partition(const PartitionArgs& a, json& out) {
  std::string text;
  const TriangulationFile f = load(a.input, text);
  const Triangulation& X = f.complex;
  const ModularParameter mp(a.b);
  const QuadratureConfig cfg = quadrature(a.tol);

  int knot = -1;
  if (f.knot_edge) knot = resolve_edge(X, *f.knot_edge);
  GaugeFixing lambda;
  if (a.gauge == "spec") {
    if (f.gauge_edges.size() != X.interior_vertices().size())
      throw Error(ErrorKind::Schema, "gauge_edges: need one edge per interior vertex for --gauge spec");
    std::vector<int> edges;
    for (const auto& r : f.gauge_edges) edges.push_back(resolve_edge(X, r));
    lambda = coordinate_gauge(X, edges);
  } else {
    lambda = default_gauge(X, knot);
  }
  if (!a.renormalize.empty() && knot < 0) throw Error(ErrorKind::Schema, "knot_edge: required for --renormalize");

  const PartitionResult r = partition_function(X, f.shape, State(X.num_edges(), 0.0), lambda, mp, cfg);
  cplx w = r.value;
  double err = r.error_estimate;
  const json config = {{"input", text}, {"b", a.b}, {"gauge", a.gauge}, {"tol", a.tol}, {"renormalize", a.renormalize}};

  out["schema"] = "stqft.partition/1";
  if (!f.name.empty()) out["name"] = f.name;
  if (!a.renormalize.empty()) {
    const double k = knot_edge_factor(X, f.shape, knot, mp);
    w /= k;
    err /= k;
    out["renormalize"] = a.renormalize;
    out["knot_edge_factor"] = k;
  }
  out["W_re"] = w.real();
  out["W_im"] = w.imag();
  out["abs_err"] = err;
  out["dim"] = r.dimension;
  out["gauge"] = r.gauge;
  out["b"] = a.b;
  out["method"] = to_string(r.method);
  out["evaluations"] = r.evaluations;
  out["config_hash"] = config_hash(config);
  return kOk;
}

int cmd_angles(const AnglesArgs& a, json& out) {
  std::string text;
  const TriangulationFile f = load(a.input, text);
  const Triangulation& X = f.complex;
  const VolumeMaximum m = maximize_volume_in_gauge_class(X, f.shape, a.tol);
  out["schema"] = "stqft.angles/1";
  if (!f.name.empty()) out["name"] = f.name;
  out["converged"] = m.converged;
  out["iterations"] = m.iterations;
  out["gradient_norm"] = m.gradient_norm;
  out["volume"] = m.volume;
  out["start_volume"] = shape_volume(X, f.shape);
  out["angles"] = shape_json(m.shape);
  json res = json::array();
  for (const auto& g : gluing_residuals(X, m.shape))
    res.push_back({{"edge", g.edge}, {"product", {g.product.real(), g.product.imag()}}, {"residual", g.residual}});
  out["gluing_residuals"] = res;
  out["config_hash"] = config_hash({{"input", text}, {"tol", a.tol}});
  return m.converged ? kOk : kResidual;
}

int cmd_pachner(const PachnerArgs& a, json& out) {
  std::string text;
  const TriangulationFile f = load(a.input, text);
  const Triangulation& X = f.complex;
  int e = a.edge;
  if (!a.edge_ref.empty()) {
    EdgeRef r{};
    char c1 = 0, c2 = 0;
    std::istringstream in(a.edge_ref);
    if (!(in >> r[0] >> c1 >> r[1] >> c2 >> r[2]) || c1 != ',' || c2 != ',') throw UsageError("--edge-ref expects tet,u,v");
    e = resolve_edge(X, r);
  }
  if (e < 0) {
    for (int c : X.interior_edges())
      if (X.edge_degree(c) == 3) {
        e = c;
        break;
      }
    if (e < 0) throw UsageError("no interior edge of degree 3; pass --edge");
  }
  if (e >= X.num_edges()) throw UsageError("--edge out of range");

  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> U(-0.3, 0.3);
  State boundary(X.num_edges(), 0.0);
  for (int c : X.boundary_edges()) boundary[c] = U(rng);

  const ModularParameter mp(a.b);
  const InvarianceReport r = check_pachner_invariance(X, f.shape, e, boundary, mp, quadrature(a.tol));
  out["schema"] = "stqft.pachner/1";
  out["edge"] = e;
  out["b"] = a.b;
  out["before"] = {{"W_re", r.before.value.real()}, {"W_im", r.before.value.imag()}, {"dim", r.before.dimension}};
  out["after"] = {{"W_re", r.after.value.real()}, {"W_im", r.after.value.imag()}, {"dim", r.after.dimension}};
  out["residual"] = r.residual;
  out["max_residual"] = a.max_residual;
  out["passed"] = r.residual <= a.max_residual;
  out["config_hash"] = config_hash({{"input", text}, {"edge", e}, {"b", a.b}, {"tol", a.tol}, {"seed", a.seed}});
  return r.residual <= a.max_residual ? kOk : kResidual;
}

}  // namespace stqft::cli
