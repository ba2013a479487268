#include "stqft/special_fn.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_clausen.h>
#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "stqft/integrate.hpp"

namespace stqft {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DecayEstimateFailure: return "DecayEstimateFailure";
    case ErrorKind::BadGluing: return "BadGluing";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::ShapeViolation: return "ShapeViolation";
    case ErrorKind::BadLoop: return "BadLoop";
    case ErrorKind::InvalidGauge: return "InvalidGauge";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::NotCritical: return "NotCritical";
    case ErrorKind::BoundaryDegeneration: return "BoundaryDegeneration";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

namespace {

std::shared_ptr<const DilogKernel> make_kernel(double b) {
  auto k = std::make_shared<DilogKernel>();
  k->m = std::min(b, 1.0 / b);
  const double big = std::max(b, 1.0 / b);
  k->h = k->m / 4.0;
  k->eps = kPi * k->m / 2.0;
  k->n = static_cast<int>(std::ceil(42.0 / big / k->h));
  k->weight.resize(2 * k->n + 1);
  for (int j = -k->n; j <= k->n; ++j) {
    const cplx w(j * k->h, k->eps);
    k->weight[j + k->n] = k->h / (4.0 * std::sinh(b * w) * std::sinh(w / b) * w);
  }
  return k;
}

cplx log_zeta_inv(const ModularParameter& mp) { return 2.0 * mp.log_sqrt_zeta_inv; }

// Trapezoid sum on the lifted contour; needs |Im z| <= m/2 and Re z <= 0.
cplx kernel_sum(cplx z, const DilogKernel& k) {
  const cplx step = std::exp(-2.0 * kI * z * k.h);
  const cplx back = 1.0 / step;
  cplx sum = k.weight[k.n];
  cplx up = 1.0, down = 1.0;
  for (int j = 1; j <= k.n; ++j) {
    if (j % 32 == 0) {
      up = std::exp(-2.0 * kI * z * (j * k.h));
      down = std::exp(2.0 * kI * z * (j * k.h));
    } else {
      up *= step;
      down *= back;
    }
    sum += k.weight[k.n + j] * up + k.weight[k.n - j] * down;
  }
  return std::exp(2.0 * z * k.eps) * sum;
}

}  // namespace

ModularParameter::ModularParameter(double b_) : b(b_) {
  if (!(b_ > 0.0) || !std::isfinite(b_))
    throw Error(ErrorKind::ConstraintViolation, "modular parameter b must be positive");
  omega1 = b;
  omega2 = 1.0 / b;
  c_b = kI * (b + 1.0 / b) / 2.0;
  zeta_inv = std::exp(kI * kPi * (1.0 + 2.0 * c_b * c_b) / 6.0);
  zeta_o = std::exp(kI * kPi * (1.0 - 4.0 * c_b * c_b) / 12.0);
  log_sqrt_zeta_inv = kI * kPi * (1.0 + 2.0 * c_b * c_b) / 12.0;
  Delta = (omega1 + omega2) / kPi;
  kernel_ = make_kernel(b);
}

cplx log_phi_b(cplx z, const ModularParameter& mp) {
  const DilogKernel& k = mp.kernel();
  const double m = k.m;
  const double half = m / 2.0;
  cplx acc = 0.0;
  // Phi(z) = Phi(z - i m) / (1 + exp(2 pi m z - i pi m^2))
  while (z.imag() > half + 1e-12) {
    const cplx e = std::exp(2.0 * kPi * m * z - kI * kPi * m * m);
    const cplx f = 1.0 + e;
    if (std::abs(f) <= 1e-13 * (1.0 + std::abs(e)))
      throw Error(ErrorKind::PoleHit, "phi_b evaluated at a pole");
    acc -= std::log(f);
    z -= kI * m;
  }
  // Phi(z) = (1 + exp(2 pi m z + i pi m^2)) Phi(z + i m)
  while (z.imag() < -half - 1e-12) {
    const cplx e = std::exp(2.0 * kPi * m * z + kI * kPi * m * m);
    const cplx f = 1.0 + e;
    if (std::abs(f) <= 1e-13 * (1.0 + std::abs(e)))
      return {-std::numeric_limits<double>::infinity(), 0.0};
    acc += std::log(f);
    z += kI * m;
  }
  if (z.real() > 0.0) {
    // Phi(z) Phi(-z) = zeta_inv^{-1} exp(i pi z^2)
    return acc - log_zeta_inv(mp) + kI * kPi * z * z - kernel_sum(-z, k);
  }
  return acc + kernel_sum(z, k);
}

cplx phi_b(cplx z, const ModularParameter& mp, const QuadratureConfig&) {
  const cplx l = log_phi_b(z, mp);
  if (std::isinf(l.real()) && l.real() < 0) return 0.0;
  return std::exp(l);
}

cplx phi_b_reference(cplx z, const ModularParameter& mp, const QuadratureConfig& cfg,
                     double delta) {
  const double b = mp.b;
  const double strip = mp.Q() / 2.0;
  if (std::abs(z.imag()) >= strip)
    throw Error(ErrorKind::NonConvergence, "reference phi_b needs |Im z| < |Im c_b|");
  if (delta <= 0.0) delta = 0.5 * std::min(b, 1.0 / b);

  QuadratureConfig qc = cfg;
  qc.abs_tol = std::min(cfg.abs_tol, 1e-14);
  qc.rel_tol = std::min(cfg.rel_tol, 1e-13);
  qc.max_depth = std::max(cfg.max_depth, 60);

  const double mu = 2.0 * (strip - std::abs(z.imag()));
  const double radius = std::log(40.0 / (qc.abs_tol * mu)) / mu + delta;
  auto line = [&](double t) -> cplx {
    return -kI * std::sin(2.0 * z * t) / (2.0 * t * std::sinh(b * t) * std::sinh(t / b));
  };
  const IntegralResult real_part = integrate_interval(line, delta, radius, qc);

  auto arc = [&](double phi) -> cplx {
    const cplx w = delta * std::exp(kI * phi);
    const cplx g = std::exp(-2.0 * kI * z * w) / (4.0 * std::sinh(b * w) * std::sinh(w / b) * w);
    return -g * kI * w;
  };
  const IntegralResult arc_part = integrate_interval(arc, 0.0, kPi, qc);
  return std::exp(real_part.value + arc_part.value);
}

cplx log_hyperbolic_gamma(cplx u, const ModularParameter& mp) {
  const cplx x = kI * u - mp.c_b;
  const cplx lp = log_phi_b(x, mp);
  if (std::isinf(lp.real())) throw Error(ErrorKind::PoleHit, "hyperbolic gamma evaluated at a pole");
  return kI * kPi * x * x / 2.0 - mp.log_sqrt_zeta_inv - lp;
}

cplx hyperbolic_gamma(cplx u, const ModularParameter& mp, const QuadratureConfig&) {
  return std::exp(log_hyperbolic_gamma(u, mp));
}

cplx bernoulli_b22(cplx u, cplx w1, cplx w2) {
  return u * u / (w1 * w2) - u / w1 - u / w2 + w1 / (6.0 * w2) + w2 / (6.0 * w1) + 0.5;
}

cplx bernoulli_b22(cplx u, const ModularParameter& mp) {
  return bernoulli_b22(u, cplx(mp.omega1), cplx(mp.omega2));
}

cplx hyperbolic_gamma_product(cplx u, cplx w1, cplx w2, double tol) {
  const cplx q = std::exp(2.0 * kI * kPi * w1 / w2);
  const cplx qt = std::exp(-2.0 * kI * kPi * w2 / w1);
  if (std::abs(q) >= 1.0 || std::abs(qt) >= 1.0)
    throw Error(ErrorKind::NonConvergence, "product form needs Im(w1/w2) > 0");
  const cplx num = qpochhammer(std::exp(2.0 * kI * kPi * u / w1) * qt, qt, tol);
  const cplx den = qpochhammer(std::exp(2.0 * kI * kPi * u / w2), q, tol);
  if (std::abs(den) == 0.0) throw Error(ErrorKind::PoleHit, "hyperbolic gamma product pole");
  return std::exp(-kI * kPi * bernoulli_b22(u, w1, w2) / 2.0) * num / den;
}

cplx log_hyper_B(cplx x, cplx y, const ModularParameter& mp) {
  return log_hyperbolic_gamma(x, mp) + log_hyperbolic_gamma(y, mp) +
         log_hyperbolic_gamma(mp.Q() - x - y, mp);
}

cplx hyper_B(cplx x, cplx y, const ModularParameter& mp, const QuadratureConfig&) {
  return std::exp(log_hyper_B(x, y, mp));
}

cplx hyper_B_quotient(cplx x, cplx y, const ModularParameter& mp) {
  return std::exp(log_hyperbolic_gamma(x, mp) + log_hyperbolic_gamma(y, mp) -
                  log_hyperbolic_gamma(x + y, mp));
}

cplx cap_psi(cplx u, cplx v, cplx w, const ModularParameter& mp, const QuadratureConfig&) {
  const cplx c = mp.c_b;
  const cplx l = log_phi_b(u - v - c, mp) + log_phi_b(w + c, mp) - log_phi_b(u - v + w - c, mp) -
                 2.0 * kPi * kI * w * (v + c);
  return mp.zeta_o * std::exp(l);
}

cplx psi_fn(cplx x, cplx y, const ModularParameter& mp, const QuadratureConfig& cfg) {
  return cap_psi(x, -x, y, mp, cfg);
}

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw Error(ErrorKind::PoleHit, "gamma function pole");
  gsl_sf_result lnr, arg;
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  const int status = gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
  gsl_set_error_handler(old);
  if (status != GSL_SUCCESS) throw Error(ErrorKind::NonConvergence, "complex log-gamma failed");
  return {lnr.val, arg.val};
}

cplx classical_beta(cplx x, cplx y) {
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

double lobachevsky(double theta, double) {
  // Lambda(theta) = Cl_2(2 theta)/2
  return 0.5 * gsl_sf_clausen(2.0 * theta);
}

double lobachevsky_derivative(double theta) {
  return -std::log(std::abs(2.0 * std::sin(theta)));
}

}  // namespace stqft
