#include "stqft/tqft.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stqft {

cplx log_tet_weight(const Triangulation& X, int t, const ShapeStructure& a, const State& s,
                    const ModularParameter& mp) {
  double st[3];
  for (int q = 0; q < 3; ++q) st[q] = quad_state(X, s, t, q);
  cplx sum = 0.0;
  for (int q = 0; q < 3; ++q) {
    const cplx arg(mp.Delta * a.alpha[t][q], st[next_quad(q)] - st[prev_quad(q)]);
    sum += log_hyperbolic_gamma(arg, mp);
  }
  return X.orientation(t) < 0 ? std::conj(sum) : sum;
}

cplx tet_weight(const Triangulation& X, int t, const ShapeStructure& a, const State& s,
                const ModularParameter& mp) {
  return std::exp(log_tet_weight(X, t, a, s, mp));
}

cplx boltzmann_weight(const Triangulation& X, const ShapeStructure& a, const State& s,
                      const ModularParameter& mp) {
  cplx sum = 0.0;
  for (int t = 0; t < X.num_tets(); ++t) sum += log_tet_weight(X, t, a, s, mp);
  return std::exp(sum);
}

namespace {

// B(X, s) on the free interior coordinates; tetrahedra whose edges involve
// only coordinates before first_changed keep their cached log weight.
class PartitionIntegrand : public NdIntegrand {
 public:
  PartitionIntegrand(const Triangulation& X, const ShapeStructure& a, State base, std::vector<int> vars,
                     const ModularParameter& mp)
      : X_(X), a_(a), s_(std::move(base)), vars_(std::move(vars)), mp_(mp) {
    const int n = X.num_tets();
    dep_.assign(n, -1);
    cache_.assign(n, 0.0);
    for (int t = 0; t < n; ++t)
      for (int le = 0; le < 6; ++le) {
        const auto it = std::find(vars_.begin(), vars_.end(), X.tet_edge(t, le));
        if (it != vars_.end()) dep_[t] = std::max(dep_[t], static_cast<int>(it - vars_.begin()));
      }
    for (int t = 0; t < n; ++t)
      if (dep_[t] < 0) cache_[t] = log_tet_weight(X_, t, a_, s_, mp_);
  }

  cplx operator()(const double* x, int first_changed) override {
    const int d = static_cast<int>(vars_.size());
    for (int i = first_changed; i < d; ++i) s_[vars_[i]] = x[i];
    cplx sum = 0.0;
    for (int t = 0; t < X_.num_tets(); ++t) {
      if (dep_[t] >= first_changed) cache_[t] = log_tet_weight(X_, t, a_, s_, mp_);
      sum += cache_[t];
    }
    return std::exp(sum);
  }

 private:
  const Triangulation& X_;
  const ShapeStructure& a_;
  State s_;
  std::vector<int> vars_;
  const ModularParameter& mp_;
  std::vector<int> dep_;
  std::vector<cplx> cache_;
};

}  // namespace

PartitionResult partition_function(const Triangulation& X, const ShapeStructure& a,
                                   const State& boundary, const GaugeFixing& lambda,
                                   const ModularParameter& mp, const QuadratureConfig& cfg) {
  validate_shape(X, a, 1e-9);
  validate_gauge(X, lambda);
  if (static_cast<int>(boundary.size()) != X.num_edges())
    throw Error(ErrorKind::ConstraintViolation, "boundary state must have one entry per edge class");

  State base(X.num_edges(), 0.0);
  for (int e : X.boundary_edges()) base[e] = boundary[e];
  std::vector<bool> pinned(X.num_edges(), false);
  double jacobian = 1.0;
  for (const auto& f : lambda.forms) {
    if (!f.is_coordinate()) throw Error(ErrorKind::InvalidGauge, "only coordinate gauge forms are supported");
    pinned[f.terms[0].first] = true;
    jacobian /= std::abs(f.terms[0].second);
  }

  std::vector<int> vars;
  for (int e : X.interior_edges())
    if (!pinned[e]) vars.push_back(e);
  // Coordinates touching many tetrahedra go outermost so inner sweeps reuse cached factors.
  std::vector<int> reach(X.num_edges(), 0);
  for (int e : vars) {
    std::vector<int> tets;
    for (const auto& [t, le] : X.edge_slots(e)) tets.push_back(t);
    std::sort(tets.begin(), tets.end());
    reach[e] = static_cast<int>(std::unique(tets.begin(), tets.end()) - tets.begin());
  }
  std::stable_sort(vars.begin(), vars.end(), [&](int x, int y) { return reach[x] > reach[y]; });

  PartitionResult out;
  out.gauge = lambda.describe();
  out.dimension = static_cast<int>(vars.size());
  PartitionIntegrand f(X, a, base, vars, mp);
  if (vars.empty()) {
    out.value = jacobian * f(nullptr, 0);
    out.evaluations = 1;
    return out;
  }
  const IntegralResult r = integrate_nd(f, out.dimension, cfg);
  out.value = jacobian * r.value;
  out.error_estimate = jacobian * r.error_estimate;
  out.evaluations = r.evaluations;
  out.method = r.method;
  return out;
}

PartitionResult partition_function(const Triangulation& X, const ShapeStructure& a,
                                   const ModularParameter& mp, const QuadratureConfig& cfg) {
  return partition_function(X, a, State(X.num_edges(), 0.0), default_gauge(X), mp, cfg);
}

double knot_edge_factor(const Triangulation& X, const ShapeStructure& a, int knot_edge,
                        const ModularParameter& mp) {
  return trefoil_closed_form(edge_weight(X, a, knot_edge), mp);
}

namespace {

InvarianceReport compare(PartitionResult before, PartitionResult after) {
  InvarianceReport r{std::move(before), std::move(after), 0.0};
  const double scale = std::abs(r.before.value);
  r.residual = std::abs(r.after.value - r.before.value) / (scale > 0 ? scale : 1.0);
  return r;
}

}  // namespace

InvarianceReport check_pachner_invariance(const Triangulation& X, const ShapeStructure& a, int edge,
                                          const State& boundary, const ModularParameter& mp,
                                          const QuadratureConfig& cfg) {
  const PachnerResult p = pachner_32(X, edge, a);
  const GaugeFixing lam = default_gauge(X, edge);
  GaugeFixing lam2;
  const Triangulation& Y = p.complex;
  for (const auto& f : lam.forms) {
    const int e = p.edge_map[f.terms[0].first];
    const auto& ends = Y.edge_ends(e);
    const int v = Y.vertex_is_boundary(ends[0]) ? ends[1] : ends[0];
    lam2.forms.push_back(GaugeForm{v, {{e, f.terms[0].second}}});
  }
  State b2(Y.num_edges(), 0.0);
  for (int e = 0; e < X.num_edges(); ++e)
    if (e != edge && p.edge_map[e] >= 0) b2[p.edge_map[e]] = boundary[e];
  return compare(partition_function(X, a, boundary, lam, mp, cfg),
                 partition_function(Y, p.shape, b2, lam2, mp, cfg));
}

InvarianceReport check_shape_gauge_invariance(const Triangulation& X, const ShapeStructure& a, int edge,
                                              double t, const State& boundary, const ModularParameter& mp,
                                              const QuadratureConfig& cfg) {
  const ShapeStructure a2 = shape_gauge_transform(X, a, edge, t);
  const GaugeFixing lam = default_gauge(X);
  return compare(partition_function(X, a, boundary, lam, mp, cfg),
                 partition_function(X, a2, boundary, lam, mp, cfg));
}

InvarianceReport faddeev_popov_check(const Triangulation& X, const ShapeStructure& a,
                                     const GaugeFixing& lambda, const GaugeFixing& lambda2,
                                     const State& boundary, const ModularParameter& mp,
                                     const QuadratureConfig& cfg) {
  return compare(partition_function(X, a, boundary, lambda, mp, cfg),
                 partition_function(X, a, boundary, lambda2, mp, cfg));
}

double trefoil_closed_form(double alpha0, const ModularParameter& mp) {
  return 2.0 * std::exp(2.0 * log_phi_b(mp.u(alpha0), mp).real());
}

namespace {

IntegralResult modulus_squared(const IntegralResult& r) {
  IntegralResult out = r;
  const double m = std::abs(r.value);
  out.value = m * m;
  out.error_estimate = 2.0 * m * r.error_estimate + r.error_estimate * r.error_estimate;
  return out;
}

double lowered_shift(const ModularParameter& mp, const QuadratureConfig& cfg) {
  return cfg.contour_shift * std::abs(mp.c_b.imag());
}

}  // namespace

IntegralResult fig8_reduced(const ModularParameter& mp, const QuadratureConfig& cfg) {
  auto f = [&](cplx z) { return std::exp(log_phi_b(-z, mp) - log_phi_b(z, mp)); };
  return modulus_squared(integrate_line(f, -lowered_shift(mp, cfg), cfg));
}

IntegralResult knot52_balanced(const ModularParameter& mp, const QuadratureConfig& cfg) {
  auto f = [&](cplx y) { return std::exp(kI * kPi * y * y - 3.0 * log_phi_b(y, mp)); };
  return modulus_squared(integrate_line(f, -lowered_shift(mp, cfg), cfg));
}

IntegralResult knot52_reduced_2d(const Knot52Angles& g, const ModularParameter& mp,
                                 const QuadratureConfig& cfg) {
  const cplx ub = mp.u(g.beta1), ug = mp.u(kPi - g.gamma1 - g.gamma2), ud = mp.u(g.delta1);
  const double k = g.beta2 - g.gamma2 + g.delta2;
  const double shift = lowered_shift(mp, cfg) - ud.imag();
  // X1 = x1/2 + u, X2 = u - x1/2 with X1 raised and X2 lowered by the same amount.
  FunctionIntegrand f([&](const double* v) {
    const cplx x1(v[0], 2.0 * shift), u(v[1], 0.0);
    const cplx X1 = x1 / 2.0 + u, X2 = u - x1 / 2.0;
    const cplx lg = -kI * kPi * (X1 * X1 - X2 * X2) - 2.0 * kI * mp.c_b * k * (X1 + X2) +
                    log_phi_b(ub + X1, mp) + log_phi_b(ug - X2, mp) + log_phi_b(ud + X1, mp) -
                    log_phi_b(-ub + X2, mp) - log_phi_b(-ug - X1, mp) - log_phi_b(-ud + X2, mp);
    return std::exp(lg);
  });
  return integrate_nd(f, 2, cfg);
}

IntegralResult knot61_inner(const Knot61Angles& g, const ModularParameter& mp, const QuadratureConfig& cfg) {
  const double delta3 = kPi - g.delta1 - g.delta2;
  const cplx ub = mp.u(g.beta2), ug = mp.u(g.gamma2), ur = mp.u(g.rho2), ud = mp.u(delta3);
  const double k1 = g.beta1 - g.gamma1 - g.delta1, k2 = g.rho1 + g.delta1;
  FunctionIntegrand f([&](const double* v) {
    const cplx x = v[0], z = v[1];
    const cplx lg = log_phi_b(ub + x, mp) + log_phi_b(ur + z, mp) - log_phi_b(-ug - x, mp) -
                    log_phi_b(-ud + z - x, mp) - 2.0 * kI * mp.c_b * (k1 * x + k2 * z) + kI * kPi * z * z;
    return std::exp(lg);
  });
  return integrate_nd(f, 2, cfg);
}

IntegralResult knot61_partner(const Knot61Angles& g, const ModularParameter& mp, const QuadratureConfig& cfg) {
  const double delta3 = kPi - g.delta1 - g.delta2;
  const cplx ub = mp.u(g.beta2), ug = mp.u(g.gamma2), ur = mp.u(g.rho2), ud = mp.u(delta3);
  const double k1 = g.beta1 - g.gamma1 - g.delta1, k2 = g.rho1 + g.delta1;
  FunctionIntegrand f([&](const double* v) {
    const cplx y = v[0], w = v[1];
    const cplx lg = log_phi_b(ug - y, mp) + log_phi_b(ud + w - y, mp) - log_phi_b(-ub + y, mp) -
                    log_phi_b(-ur + w, mp) - 2.0 * kI * mp.c_b * (k1 * y + k2 * w) - kI * kPi * w * w;
    return std::exp(lg);
  });
  return integrate_nd(f, 2, cfg);
}

}  // namespace stqft
