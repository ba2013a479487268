#include <random>

#include "doctest.h"
#include "stqft/identities.hpp"

using namespace stqft;

namespace {

QuadratureConfig tol(double t) {
  QuadratureConfig c;
  c.abs_tol = c.rel_tol = t;
  return c;
}

}  // namespace

TEST_CASE("hyperbolic beta integral") {
  const ModularParameter mp(1.0);
  BalancedParams6 sym;
  sym.alpha.fill(mp.Q() / 6.0);
  const double r0 = check_hyperbolic_beta_integral(sym, mp, tol(1e-10)).residual;
  CHECK(r0 < 1e-5);

  std::mt19937_64 rng(5);
  const BalancedParams6 p = random_beta_params(rng, mp);
  const double r1 = check_hyperbolic_beta_integral(p, mp, tol(1e-10)).residual;
  CHECK(r1 < 1e-4);

  BalancedParams6 broken = p;
  broken.alpha[0] += 1e-2;
  const double r2 = check_hyperbolic_beta_integral(broken, mp, tol(1e-10)).residual;
  CHECK(r2 >= 10.0 * std::max(r1, 1e-6));
}

TEST_CASE("elliptic beta integral") {
  const EllipticBases e{0.3, 0.3};
  std::array<cplx, 6> s;
  s.fill(std::pow(0.09, 1.0 / 6.0));
  CHECK(check_elliptic_beta_integral(s, e, 1e-13).residual < 1e-10);
  s[0] *= 1.01;
  CHECK(check_elliptic_beta_integral(s, e, 1e-13).residual > 1e-3);
}

TEST_CASE("hyperbolic pentagon") {
  std::mt19937_64 rng(9);
  for (double b : {1.0, 0.7}) {
    const ModularParameter mp(b);
    const BalancedParams33 p = random_pentagon_params(rng, mp);
    CHECK(check_hyperbolic_pentagon(p, mp, tol(1e-10)).residual < 1e-8);
  }
}

TEST_CASE("classical pentagon and its a1 <-> a2 symmetry") {
  const std::array<cplx, 3> a{cplx(0.4, 0.3), cplx(0.7, -0.2), cplx(0.5, 0.1)};
  const std::array<cplx, 2> b{cplx(0.6, 0.0), cplx(0.3, 0.5)};
  const auto r = check_classical_pentagon(a, b, tol(1e-11));
  CHECK(r.residual < 1e-7);
  const auto s = check_classical_pentagon({a[1], a[0], a[2]}, {b[1], b[0]}, tol(1e-11));
  CHECK(std::abs(s.lhs - r.lhs) / std::abs(r.lhs) < 1e-8);
  CHECK(std::abs(s.rhs - r.rhs) / std::abs(r.rhs) < 1e-12);
}

TEST_CASE("Psi closed form") {
  const ModularParameter mp(1.2);
  const auto r = check_psi_closed_form(cplx(0.1, 0.2), cplx(-0.3, -0.1), cplx(0.2, -0.1), mp, tol(1e-11));
  CHECK(r.residual < 1e-6);
}

TEST_CASE("Bailey pairs") {
  const ModularParameter mp(1.0);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  for (int i = 0; i < 5; ++i) {
    const OctahedronParams p = random_octahedron_params(rng, mp);
    const BaileyPair pair = bailey_seed(p.al, p.be, mp);
    CHECK(check_bailey_pair(pair, cplx(0.2 * U(rng), U(rng)), mp, tol(1e-10)).residual < 1e-5);
  }
  const OctahedronParams p = random_octahedron_params(rng, mp);
  const BaileyPair step = bailey_step(bailey_seed(p.al, p.be, mp), p.s, p.u, mp, tol(1e-9));
  CHECK(check_bailey_pair(step, p.w, mp, tol(1e-8)).residual < 1e-4);
}

TEST_CASE("octahedron duality") {
  const ModularParameter mp(1.0);
  OctahedronParams sym;
  sym.al = {0.35, 0.35};
  sym.be = {0.35, 0.35};
  sym.s = 0.3;
  sym.u = 0.3;
  sym.w = 0.0;
  CHECK(check_octahedron_duality(sym, mp, tol(1e-8)).residual < 1e-4);

  std::mt19937_64 rng(17);
  const OctahedronParams p = random_octahedron_params(rng, mp);
  const double r = check_octahedron_duality(p, mp, tol(1e-8)).residual;
  CHECK(r < 1e-3);
}

TEST_CASE("octahedron residual grows when the balancing is broken") {
  const ModularParameter mp(1.0);
  std::mt19937_64 rng(17);
  const OctahedronParams p = random_octahedron_params(rng, mp);
  const double r = check_octahedron_duality(p, mp, tol(1e-8)).residual;
  OctahedronParams broken = p;
  broken.t_offset = 1e-2;
  const double rb = check_octahedron_duality(broken, mp, tol(1e-8)).residual;
  CAPTURE(r);
  CHECK(rb >= 10.0 * r);
}

TEST_CASE("entropy pentagon") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto t = random_entropy_tuple(rng);
    CHECK(check_entropy_pentagon(t[0], t[1], t[2], t[3], t[4]) < 1e-12);
  }
  // a1 = a2 = a with b solved from the constraints
  const double a = 0.1, b1 = 0.2, m = 1.0 - 2 * a - b1, prod = a * a / b1;
  const double b2 = (m + std::sqrt(m * m - 4 * prod)) / 2, b3 = prod / b2;
  CHECK(check_entropy_pentagon(a, a, b1, b2, b3) < 1e-12);
  CHECK_THROWS_AS(check_entropy_pentagon(a, a, b1, b2 + 1e-2, b3 - 1e-2), Error);
  CHECK(check_entropy_pentagon(a, a, b1, b2 + 1e-2, b3 - 1e-2, false) > 1e-6);
}
