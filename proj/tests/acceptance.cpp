#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "stqft/errors.hpp"
#include "stqft/geometry.hpp"
#include "stqft/identities.hpp"
#include "stqft/tqft.hpp"
#include "stqft/triangulation_io.hpp"

using namespace stqft;

namespace {

struct Outcome {
  double value;  // worst residual or deviation
  double limit;
  std::string note;
  bool extra_ok = true;
};

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{0.0, 0.0, "", false};
  std::string err;
  try {
    o = body();
  } catch (const std::exception& e) {
    err = e.what();
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = err.empty() && o.value < o.limit && o.extra_ok && dt < budget_s;
  if (!ok) ++failures;
  std::printf("criterion %2d %s %s: worst=%.3g limit=%.1g time=%.1fs budget=%.0fs%s%s\n", id, ok ? "PASS" : "FAIL", name,
              o.value, o.limit, dt, budget_s, o.note.empty() ? "" : " ", (err.empty() ? o.note : "error: " + err).c_str());
  std::fflush(stdout);
}

std::mt19937_64 rng(20240607);
double U(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

QuadratureConfig tol(double t) {
  QuadratureConfig c;
  c.abs_tol = t;
  c.rel_tol = t;
  return c;
}

TriangulationFile example(const std::string& name) { return load_triangulation(std::string(STQFT_EXAMPLES_DIR) + "/" + name); }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

int main() {
  run(1, "special-function identities", 120, [] {
    const ModularParameter mp(1.3);
    const double h = mp.Q() / 2.0;
    double worst = 0.0, worst_ell = 0.0;
    const EllipticBases e{0.3, 0.3};
    for (int i = 0; i < 100; ++i) {
      const cplx z(U(-2.0, 2.0), U(-0.8, 0.8) * h);
      worst = std::max(worst, phi_inversion_residual(z, mp));
      worst = std::max(worst, phi_unitarity_residual(z, mp));
      const cplx zf(U(-2.0, 2.0), U(-0.5, 0.5));
      worst = std::max(worst, phi_functional_residual(zf, 1, mp));
      worst = std::max(worst, phi_functional_residual(zf, -1, mp));
      worst = std::max(worst, gamma_inversion_residual(cplx(U(0.1, 0.9) * mp.Q(), U(-1.5, 1.5)), mp));
      worst_ell = std::max(worst_ell, elliptic_reflection_residual(std::polar(U(0.35, 0.95), U(-kPi, kPi)), e));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "elliptic=%.3g (limit 1e-12)", worst_ell);
    return Outcome{worst, 1e-9, buf, worst_ell < 1e-12};
  });

  run(2, "Psi closed form vs direct integral", 60, [] {
    const ModularParameter mp(1.0);
    double worst = 0.0;
    for (int i = 0; i < 10;) {
      const cplx u(U(-0.5, 0.5), U(-0.6, 0.6)), v(U(-0.5, 0.5), U(-0.6, 0.6)), w(U(-0.5, 0.5), U(-0.6, -0.1));
      if ((u - v + w).imag() < 0.15) continue;
      worst = std::max(worst, check_psi_closed_form(u, v, w, mp, tol(1e-11)).residual);
      ++i;
    }
    return Outcome{worst, 1e-6, ""};
  });

  run(3, "hyperbolic pentagon, b in {1, 1.3}", 600, [] {
    double worst = 0.0;
    for (double b : {1.0, 1.3}) {
      const ModularParameter mp(b);
      for (int i = 0; i < 20; ++i)
        worst = std::max(worst, check_hyperbolic_pentagon(random_pentagon_params(rng, mp), mp, tol(1e-10)).residual);
    }
    return Outcome{worst, 1e-5, ""};
  });

  run(4, "elliptic beta integral, p = q = 0.3", 120, [] {
    const EllipticBases e{0.3, 0.3};
    double worst = 0.0;
    for (int i = 0; i < 10; ++i)
      worst = std::max(worst, check_elliptic_beta_integral(random_elliptic_params(rng, e), e, 1e-12).residual);
    return Outcome{worst, 1e-8, ""};
  });

  run(5, "classical pentagon", 60, [] {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      std::array<cplx, 3> a;
      std::array<cplx, 2> b;
      for (auto& x : a) x = {U(0.2, 1.0), U(-1.0, 1.0)};
      for (auto& x : b) x = {U(0.2, 1.0), U(-1.0, 1.0)};
      worst = std::max(worst, check_classical_pentagon(a, b, tol(1e-11)).residual);
    }
    return Outcome{worst, 1e-7, ""};
  });

  run(6, "entropy pentagon", 1, [] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto t = random_entropy_tuple(rng);
      worst = std::max(worst, check_entropy_pentagon(t[0], t[1], t[2], t[3], t[4]));
    }
    return Outcome{worst, 1e-12, ""};
  });

  run(7, "trefoil W = 2|Phi_b(u(alpha0))|^2", 120, [] {
    TriangulationFile f = example("trefoil.json");
    double worst = 0.0;
    for (double b : {1.0, 0.8}) {
      const ModularParameter mp(b);
      for (double a0 : {kPi / 2.0, kPi / 3.0, 2.0 * kPi / 3.0}) {
        const double side = (kPi - a0) / 2.0;
        for (auto& row : f.shape.alpha) row = {side, side, a0};
        const auto r = partition_function(f.complex, f.shape, mp, tol(1e-10));
        worst = std::max(worst, rel(r.value, trefoil_closed_form(a0, mp)));
      }
    }
    return Outcome{worst, 1e-6, ""};
  });

  run(8, "figure-eight 3D pipeline vs closed form", 900, [] {
    const TriangulationFile f = example("fig8.json");
    const ModularParameter mp(1.0);
    const int knot = resolve_edge(f.complex, *f.knot_edge);
    const auto r = partition_function(f.complex, f.shape, State(f.complex.num_edges(), 0.0),
                                      default_gauge(f.complex, knot), mp, tol(1e-6));
    const cplx w = r.value / knot_edge_factor(f.complex, f.shape, knot, mp);
    const double closed = fig8_reduced(mp, tol(1e-12)).value.real();
    const double im = std::abs(w.imag()) / std::abs(w);
    char buf[96];
    std::snprintf(buf, sizeof buf, "W=%.10g closed=%.10g |Im W|/|W|=%.2g", w.real(), closed, im);
    return Outcome{rel(w, closed), 1e-4, buf, im < 1e-6 && w.real() > 0.0};
  });

  run(9, "5_2 reduced 2D integral vs balanced closed form", 1200, [] {
    const ModularParameter mp(1.0);
    const double th = 1.0, b2 = 0.9, g2 = 0.7;
    const Knot52Angles g{th, b2, kPi - th - g2, g2, th, (kPi - th - b2) + g2};
    const auto r2 = knot52_reduced_2d(g, mp, tol(1e-7));
    const auto c = knot52_balanced(mp, tol(1e-12));
    char buf[64];
    std::snprintf(buf, sizeof buf, "2D=%.10g closed=%.10g", r2.value.real(), c.value.real());
    return Outcome{rel(r2.value, c.value), 1e-3, buf};
  });

  run(10, "6_1 inner 2D integral", 1200, [] {
    const ModularParameter mp(1.0);
    const double t = kPi / 3.0;
    const Knot61Angles g{t, t, t, t, t, t, t, t};
    const auto i1 = knot61_inner(g, mp, tol(1e-6));
    const auto i2 = knot61_inner(g, mp, tol(1e-8));
    const auto j2 = knot61_partner(g, mp, tol(1e-8));
    const cplx w = i2.value * j2.value;
    const double gap = std::abs(i1.value - i2.value), allowed = i1.error_estimate + i2.error_estimate;
    const double im = std::abs(w.imag()) / std::abs(w);
    char buf[128];
    std::snprintf(buf, sizeof buf, "budget gap=%.2g allowed=%.2g W=%.10g", gap, allowed, w.real());
    return Outcome{im, 1e-4, buf, gap <= allowed && w.real() > 0.0};
  });

  run(11, "Pachner 3-2 on the bipyramid", 600, [] {
    const Triangulation X = standard_bipyramid();
    const ModularParameter mp(1.0);
    double worst = 0.0;
    for (int done = 0; done < 5;) {
      const double t0 = U(0.5, 2.6), t1 = U(0.5, 2.6), t2 = 2.0 * kPi - t0 - t1;
      if (t2 < 0.3 || t2 > kPi - 0.3) continue;
      ShapeStructure a;
      for (double th : {t0, t1, t2}) {
        const double r = U(0.25, 0.75) * (kPi - th);
        a.alpha.push_back({th, r, kPi - th - r});
      }
      State bd(X.num_edges(), 0.0);
      for (int e : X.boundary_edges()) bd[e] = U(-0.3, 0.3);
      try {
        worst = std::max(worst, check_pachner_invariance(X, a, 0, bd, mp, tol(1e-10)).residual);
        ++done;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ShapeViolation) throw;
      }
    }
    return Outcome{worst, 1e-5, ""};
  });

  run(12, "Faddeev-Popov and shape gauge on trefoil and fig8", 600, [] {
    const ModularParameter mp(1.0);
    double worst = 0.0;
    std::string note;
    for (const char* name : {"trefoil.json", "fig8.json"}) {
      const TriangulationFile f = example(name);
      const Triangulation& X = f.complex;
      const int knot = resolve_edge(X, *f.knot_edge);
      const State zero(X.num_edges(), 0.0);
      const QuadratureConfig cfg = tol(std::string(name) == "fig8.json" ? 1e-7 : 1e-10);
      const GaugeFixing l1 = default_gauge(X, knot);
      try {
        const GaugeFixing l2 = alternative_gauge(X, l1, knot);
        worst = std::max(worst, faddeev_popov_check(X, f.shape, l1, l2, zero, mp, cfg).residual);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotApplicable) throw;
        note += std::string(name) + ": single admissible gauge edge; ";
      }
      for (int e : X.interior_edges()) {
        if (e == knot) continue;
        const auto [lo, hi] = shape_gauge_interval(X, f.shape, e);
        if (hi - lo < 1e-6) continue;
        const double t = 0.4 * (hi > 0.0 ? hi : lo);
        worst = std::max(worst, check_shape_gauge_invariance(X, f.shape, e, t, zero, mp, cfg).residual);
        break;
      }
    }
    return Outcome{worst, 1e-5, note};
  });

  run(13, "octahedron 4 vs 5 tetrahedra", 900, [] {
    const ModularParameter mp(1.0);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i)
      worst = std::max(worst, check_octahedron_duality(random_octahedron_params(rng, mp), mp, tol(1e-8)).residual);
    return Outcome{worst, 1e-3, ""};
  });

  run(14, "volume maximization on the figure-eight complement", 120, [] {
    const Triangulation X = figure_eight_complement();
    const auto dirs = gauge_directions(X);
    ShapeStructure regular;
    regular.alpha.assign(2, {kPi / 3.0, kPi / 3.0, kPi / 3.0});
    std::vector<double> y(dirs.size());
    for (auto& v : y) v = U(-0.4, 0.4);
    const VolumeMaximum m = maximize_volume_in_gauge_class(X, move_along(regular, dirs, y));
    double angle_err = 0.0;
    for (const auto& row : m.shape.alpha)
      for (double x : row) angle_err = std::max(angle_err, std::abs(x - kPi / 3.0));
    const double res = max_gluing_residual(X, m.shape);
    double grad_err = 0.0;
    for (int i = 0; i < 50; ++i) {
      for (auto& v : y) v = U(-0.4, 0.4);
      const ShapeStructure s = move_along(regular, dirs, y);
      const auto g = volume_gradient(s, dirs);
      for (std::size_t k = 0; k < dirs.size(); ++k) {
        std::vector<double> dp(dirs.size(), 0.0), dm(dirs.size(), 0.0);
        dp[k] = 1e-6;
        dm[k] = -1e-6;
        const double fd = (shape_volume(X, move_along(s, dirs, dp)) - shape_volume(X, move_along(s, dirs, dm))) / 2e-6;
        grad_err = std::max(grad_err, std::abs(fd - g[k]) / std::max(std::abs(g[k]), 1.0));
      }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "gluing=%.2g (limit 1e-8) gradient_vs_fd=%.2g (limit 1e-6) volume=%.10f", res, grad_err, m.volume);
    return Outcome{angle_err, 1e-6, buf, m.converged && res < 1e-8 && grad_err < 1e-6};
  });

  std::printf("%d of 14 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
