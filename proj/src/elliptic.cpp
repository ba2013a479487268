#include <cmath>

#include "stqft/special_fn.hpp"

namespace stqft {

cplx qpochhammer(cplx z, cplx p, double tol) {
  if (std::abs(p) >= 1.0) throw Error(ErrorKind::NonConvergence, "|p| >= 1 in (z;p)_inf");
  cplx prod = 1.0;
  cplx term = z;
  for (int i = 0; i < 100000; ++i) {
    prod *= 1.0 - term;
    if (std::abs(term) < tol * 1e-2) return prod;
    term *= p;
  }
  throw Error(ErrorKind::NonConvergence, "(z;p)_inf did not converge");
}

cplx theta_fn(cplx z, cplx p, double tol) {
  if (std::abs(z) == 0.0) throw Error(ErrorKind::PoleHit, "theta at z = 0");
  return qpochhammer(z, p, tol) * qpochhammer(p / z, p, tol);
}

cplx elliptic_gamma(cplx z, const EllipticBases& bases, double tol) {
  const cplx p = bases.p, q = bases.q;
  if (std::abs(p) >= 1.0 || std::abs(q) >= 1.0)
    throw Error(ErrorKind::NonConvergence, "elliptic bases must satisfy |p|, |q| < 1");
  if (std::abs(z) == 0.0) throw Error(ErrorKind::PoleHit, "elliptic gamma at z = 0");

  // Smallest N with (|z| + |pq/z|) * sum_{n>N} (n+1) r^n below tol.
  const double r = std::max(std::abs(p), std::abs(q));
  const double scale = std::abs(z) + std::abs(p * q / z);
  int order = 0;
  if (r > 0.0) {
    while (true) {
      const double n = order + 1;
      const double tail = scale * std::pow(r, n) * ((n + 1) / (1 - r) + r / ((1 - r) * (1 - r)));
      if (tail < tol * 1e-2 || order > 20000) break;
      ++order;
    }
  }
  const cplx zi = 1.0 / z;
  cplx prod = 1.0;
  cplx pi_pow = 1.0;
  for (int i = 0; i <= order; ++i) {
    cplx pq_pow = pi_pow;
    for (int j = 0; i + j <= order; ++j) {
      const cplx den = 1.0 - z * pq_pow;
      if (std::abs(den) < 1e-14) throw Error(ErrorKind::PoleHit, "elliptic gamma pole");
      prod *= (1.0 - zi * pq_pow * p * q) / den;
      pq_pow *= q;
    }
    pi_pow *= p;
  }
  return prod;
}

}  // namespace stqft
