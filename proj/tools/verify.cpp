#include <random>

#include "commands.hpp"
#include "stqft/errors.hpp"
#include "stqft/identities.hpp"
#include "stqft/tqft.hpp"
#include "stqft/triangulation_io.hpp"

namespace stqft::cli {

using nlohmann::json;

namespace {

struct Entry {
  std::string label;
  double residual;
  double threshold;
  json detail;
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

ShapeStructure random_bipyramid_shape(const Triangulation& X, std::mt19937_64& rng) {
  while (true) {
    const double t0 = uniform(rng, 0.5, 2.6), t1 = uniform(rng, 0.5, 2.6), t2 = 2.0 * kPi - t0 - t1;
    if (t2 < 0.3 || t2 > kPi - 0.3) continue;
    ShapeStructure a;
    for (double th : {t0, t1, t2}) {
      const double r = uniform(rng, 0.25, 0.75) * (kPi - th);
      a.alpha.push_back({th, r, kPi - th - r});
    }
    try {
      pachner_32(X, 0, a);
      return a;
    } catch (const Error&) {
    }
  }
}

void pentagon(const VerifyArgs& a, std::mt19937_64& rng, std::vector<Entry>& out) {
  const ModularParameter mp(a.b);
  const QuadratureConfig cfg = quadrature(a.tol);
  const int n = a.trials > 0 ? a.trials : 20;
  for (int i = 0; i < n; ++i) {
    const auto p = random_pentagon_params(rng, mp);
    const auto r = check_hyperbolic_pentagon(p, mp, cfg);
    out.push_back({"hyperbolic", r.residual, 1e-5, {{"lhs", cjson(r.lhs)}, {"rhs", cjson(r.rhs)}}});
  }
  for (int i = 0; i < std::min(n, 10); ++i) {
    std::array<cplx, 3> x;
    std::array<cplx, 2> y;
    for (auto& v : x) v = {uniform(rng, 0.2, 1.0), uniform(rng, -1.0, 1.0)};
    for (auto& v : y) v = {uniform(rng, 0.2, 1.0), uniform(rng, -1.0, 1.0)};
    const auto r = check_classical_pentagon(x, y, cfg);
    out.push_back({"classical", r.residual, 1e-7, {{"lhs", cjson(r.lhs)}, {"rhs", cjson(r.rhs)}}});
  }
}

void elliptic(const VerifyArgs& a, std::mt19937_64& rng, std::vector<Entry>& out) {
  const EllipticBases e{0.3, 0.3};
  const int n = a.trials > 0 ? a.trials : 10;
  for (int i = 0; i < n; ++i) {
    const auto s = random_elliptic_params(rng, e);
    const auto r = check_elliptic_beta_integral(s, e, std::min(a.tol, 1e-12));
    out.push_back({"elliptic beta integral", r.residual, 1e-8, {{"lhs", cjson(r.lhs)}, {"rhs", cjson(r.rhs)}}});
  }
}

void orthogonality(const VerifyArgs& a, std::vector<Entry>& out) {
  const ModularParameter mp(a.b);
  QuadratureConfig cfg = quadrature(std::max(a.tol, 1e-7));
  for (const auto& [sigma, thr] : {std::pair{0.5, 0.1}, std::pair{0.25, 0.05}}) {
    const auto r = check_orthogonality_smeared(0.2, 0.2, sigma, 0.05, mp, cfg);
    out.push_back({"sigma " + std::to_string(sigma), r.relative_deviation, thr,
                   {{"smeared", cjson(r.smeared)}, {"prediction", cjson(r.prediction)}}});
  }
}

void bailey(const VerifyArgs& a, std::mt19937_64& rng, std::vector<Entry>& out) {
  const ModularParameter mp(a.b);
  const QuadratureConfig cfg = quadrature(a.tol);
  const int n = a.trials > 0 ? a.trials : 5;
  for (int i = 0; i < n; ++i) {
    const auto p = random_octahedron_params(rng, mp);
    const BaileyPair pair = bailey_seed(p.al, p.be, mp);
    const cplx w(uniform(rng, -0.1, 0.1), uniform(rng, -0.5, 0.5));
    const auto r = check_bailey_pair(pair, w, mp, cfg);
    out.push_back({"seed pair", r.residual, 1e-5, {{"w", cjson(w)}, {"t", cjson(pair.t)}}});
  }
}

void octahedron(const VerifyArgs& a, std::mt19937_64& rng, std::vector<Entry>& out) {
  const ModularParameter mp(a.b);
  const QuadratureConfig cfg = quadrature(a.tol);
  const int n = a.trials > 0 ? a.trials : 5;
  for (int i = 0; i < n; ++i) {
    const auto p = random_octahedron_params(rng, mp);
    const auto r = check_octahedron_duality(p, mp, cfg);
    out.push_back({"4 vs 5 tetrahedra", r.residual, 1e-3, {{"Z4", cjson(r.lhs)}, {"Z5", cjson(r.rhs)}}});
  }
}

void entropy(const VerifyArgs& a, std::mt19937_64& rng, std::vector<Entry>& out) {
  const int n = a.trials > 0 ? a.trials : 100;
  for (int i = 0; i < n; ++i) {
    const auto t = random_entropy_tuple(rng);
    out.push_back({"entropy", check_entropy_pentagon(t[0], t[1], t[2], t[3], t[4]), 1e-12, t});
  }
}

void pachner(const VerifyArgs& a, std::mt19937_64& rng, std::vector<Entry>& out) {
  const ModularParameter mp(a.b);
  const QuadratureConfig cfg = quadrature(a.tol);
  const Triangulation X = standard_bipyramid();
  const int n = a.trials > 0 ? a.trials : 5;
  for (int i = 0; i < n; ++i) {
    const ShapeStructure s = random_bipyramid_shape(X, rng);
    State boundary(X.num_edges(), 0.0);
    for (int e : X.boundary_edges()) boundary[e] = uniform(rng, -0.3, 0.3);
    const auto r = check_pachner_invariance(X, s, 0, boundary, mp, cfg);
    out.push_back({"3-2 move", r.residual, 1e-5, {{"before", cjson(r.before.value)}, {"after", cjson(r.after.value)}}});
  }
}

void gauge(const VerifyArgs& a, std::mt19937_64& rng, std::vector<Entry>& out) {
  const ModularParameter mp(a.b);
  const QuadratureConfig cfg = quadrature(a.tol);
  Triangulation X;
  ShapeStructure s;
  State boundary;
  int knot = -1;
  if (a.input.empty()) {
    X = standard_bipyramid();
    s = random_bipyramid_shape(X, rng);
    boundary.assign(X.num_edges(), 0.0);
    for (int e : X.boundary_edges()) boundary[e] = uniform(rng, -0.3, 0.3);
  } else {
    TriangulationFile f = parse_triangulation(read_file(a.input));
    X = f.complex;
    s = f.shape;
    boundary.assign(X.num_edges(), 0.0);
    if (f.knot_edge) knot = resolve_edge(X, *f.knot_edge);
  }
  if (!X.interior_vertices().empty()) {
    const GaugeFixing l1 = default_gauge(X, knot);
    const GaugeFixing l2 = alternative_gauge(X, l1, knot);
    const auto r = faddeev_popov_check(X, s, l1, l2, boundary, mp, cfg);
    out.push_back({"faddeev-popov", r.residual, 1e-5,
                   {{"gauges", {l1.describe(), l2.describe()}}, {"before", cjson(r.before.value)}, {"after", cjson(r.after.value)}}});
  }
  const int n = a.trials > 0 ? a.trials : 1;
  int done = 0;
  for (int e : X.interior_edges()) {
    if (e == knot || done >= n) continue;
    const auto [lo, hi] = shape_gauge_interval(X, s, e);
    if (hi - lo < 1e-6) continue;
    const double t = uniform(rng, 0.2, 0.8) * (hi > 0.0 ? hi : lo);
    const auto r = check_shape_gauge_invariance(X, s, e, t, boundary, mp, cfg);
    out.push_back({"shape gauge edge " + std::to_string(e), r.residual, 1e-5,
                   {{"t", t}, {"before", cjson(r.before.value)}, {"after", cjson(r.after.value)}}});
    ++done;
  }
}

}  // namespace

int cmd_verify(const VerifyArgs& a, json& out) {
  std::mt19937_64 rng(a.seed);
  std::vector<Entry> entries;
  const std::string& s = a.suite;
  if (s == "pentagon") pentagon(a, rng, entries);
  else if (s == "elliptic") elliptic(a, rng, entries);
  else if (s == "orthogonality") orthogonality(a, entries);
  else if (s == "bailey") bailey(a, rng, entries);
  else if (s == "octahedron") octahedron(a, rng, entries);
  else if (s == "entropy") entropy(a, rng, entries);
  else if (s == "pachner") pachner(a, rng, entries);
  else if (s == "gauge") gauge(a, rng, entries);
  else throw UsageError("unknown suite '" + s + "'");

  bool ok = true;
  double worst = 0.0;
  json list = json::array();
  for (const Entry& e : entries) {
    const double thr = a.max_residual >= 0.0 ? a.max_residual : e.threshold;
    const bool pass = e.residual <= thr;
    ok = ok && pass;
    worst = std::max(worst, e.residual);
    list.push_back({{"label", e.label}, {"residual", e.residual}, {"threshold", thr}, {"passed", pass}, {"detail", e.detail}});
  }
  const json config = {{"suite", s}, {"trials", a.trials}, {"seed", a.seed}, {"b", a.b}, {"tol", a.tol},
                       {"max_residual", a.max_residual}, {"input", a.input.empty() ? "" : read_file(a.input)}};
  out["schema"] = "stqft.verify/1";
  out["suite"] = s;
  out["seed"] = a.seed;
  out["b"] = a.b;
  out["entries"] = list;
  out["worst_residual"] = worst;
  out["passed"] = ok;
  out["config_hash"] = config_hash(config);
  return ok ? kOk : kResidual;
}

}  // namespace stqft::cli
