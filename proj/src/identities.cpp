#include "stqft/identities.hpp"

#include <algorithm>
#include <cmath>

#include "stqft/errors.hpp"

namespace stqft {

namespace {

double rel(cplx a, cplx b) {
  const double s = std::abs(b);
  return std::abs(a - b) / (s > 0 ? s : 1.0);
}

cplx log_gamma_reference(cplx u, const ModularParameter& mp) {
  const cplx x = kI * u - mp.c_b;
  return kI * kPi * x * x / 2.0 - mp.log_sqrt_zeta_inv - std::log(phi_b_reference(x, mp));
}

cplx B(cplx x, cplx y, const ModularParameter& mp) { return std::exp(log_hyper_B(x, y, mp)); }

IdentityResult make(cplx lhs, cplx rhs, double err) {
  return {lhs, rhs, rel(lhs, rhs), err / std::max(std::abs(rhs), 1e-300)};
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// n positive reals in [lo, hi] rescaled to sum to total, plus zero-sum imaginary parts.
std::vector<cplx> balanced(std::mt19937_64& rng, int n, double total, double imag) {
  std::vector<double> re(n), im(n);
  double s = 0.0, m = 0.0;
  for (int i = 0; i < n; ++i) {
    re[i] = uniform(rng, 0.5, 1.0);
    im[i] = uniform(rng, -imag, imag);
    s += re[i];
    m += im[i];
  }
  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) out[i] = cplx(re[i] * total / s, im[i] - m / n);
  return out;
}

}  // namespace

double phi_inversion_residual(cplx z, const ModularParameter& mp) {
  const cplx lhs = phi_b_reference(z, mp) * phi_b_reference(-z, mp);
  return rel(lhs, std::exp(kI * kPi * z * z) / mp.zeta_inv);
}

double phi_functional_residual(cplx z, int which, const ModularParameter& mp) {
  const double c = which > 0 ? mp.b : 1.0 / mp.b;
  const cplx lhs = phi_b(z - kI * c / 2.0, mp);
  const cplx rhs = (1.0 + std::exp(2.0 * kPi * c * z)) * phi_b(z + kI * c / 2.0, mp);
  return rel(lhs, rhs);
}

double phi_unitarity_residual(cplx z, const ModularParameter& mp) {
  return std::abs(std::conj(phi_b_reference(z, mp)) * phi_b_reference(std::conj(z), mp) - 1.0);
}

double gamma_inversion_residual(cplx x, const ModularParameter& mp) {
  return std::abs(std::exp(log_gamma_reference(x, mp) + log_gamma_reference(mp.Q() - x, mp)) - 1.0);
}

double elliptic_reflection_residual(cplx z, const EllipticBases& e) {
  return std::abs(elliptic_gamma(z, e) * elliptic_gamma(e.p * e.q / z, e) - 1.0);
}

IdentityResult check_psi_closed_form(cplx u, cplx v, cplx w, const ModularParameter& mp,
                                     const QuadratureConfig& cfg) {
  auto f = [&](double x) {
    return std::exp(log_phi_b(u + x, mp) - log_phi_b(v + x, mp) + 2.0 * kPi * kI * w * x);
  };
  const IntegralResult r = integrate_1d(f, cfg);
  return make(r.value, cap_psi(u, v, w, mp), r.error_estimate);
}

IdentityResult check_hyperbolic_pentagon(const BalancedParams33& p, const ModularParameter& mp,
                                         const QuadratureConfig& cfg) {
  auto f = [&](double tau) {
    const cplx u(0.0, tau);
    cplx l = 0.0;
    for (int i = 0; i < 3; ++i) l += log_hyper_B(p.a[i] - u, p.b[i] + u, mp);
    return std::exp(l);
  };
  const IntegralResult r = integrate_1d(f, cfg);
  const cplx rhs = B(p.a[1] + p.b[0], p.a[2] + p.b[1], mp) * B(p.a[0] + p.b[1], p.a[2] + p.b[0], mp);
  return make(r.value, rhs, r.error_estimate);
}

IdentityResult check_hyperbolic_beta_integral(const BalancedParams6& p, const ModularParameter& mp,
                                              const QuadratureConfig& cfg) {
  auto f = [&](double tau) -> cplx {
    if (tau == 0.0) return 0.0;
    const cplx u(0.0, tau);
    // 1/gamma(+-2u) = gamma(Q -+ 2u)
    cplx l = log_hyperbolic_gamma(mp.Q() - 2.0 * u, mp) + log_hyperbolic_gamma(mp.Q() + 2.0 * u, mp);
    for (const cplx& a : p.alpha) l += log_hyperbolic_gamma(a + u, mp) + log_hyperbolic_gamma(a - u, mp);
    return 0.5 * std::exp(l);
  };
  const IntegralResult r = integrate_1d(f, cfg);
  cplx l = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) l += log_hyperbolic_gamma(p.alpha[i] + p.alpha[j], mp);
  return make(r.value, std::exp(l), r.error_estimate);
}

IdentityResult check_elliptic_beta_integral(const std::array<cplx, 6>& s, const EllipticBases& e, double tol) {
  auto f = [&](cplx z) {
    cplx num = 1.0;
    for (const cplx& si : s) num *= elliptic_gamma(si * z, e) * elliptic_gamma(si / z, e);
    return num / (elliptic_gamma(z * z, e) * elliptic_gamma(1.0 / (z * z), e));
  };
  const cplx kappa = qpochhammer(e.p, e.p) * qpochhammer(e.q, e.q) / 2.0;
  cplx prev = 0.0, cur = 0.0;
  double err = 1.0;
  for (int n = 16; n <= (1 << 16); n *= 2) {
    cplx sum = 0.0;
    for (int k = 0; k < n; ++k) sum += f(std::exp(kI * (2.0 * kPi * (k + 0.5) / n)));
    cur = kappa * sum / static_cast<double>(n);
    err = std::abs(cur - prev);
    if (n > 16 && err <= tol * std::abs(cur)) break;
    prev = cur;
  }
  if (err > tol * std::abs(cur) * 1e3) throw Error(ErrorKind::NonConvergence, "elliptic contour sum did not settle");
  cplx rhs = 1.0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) rhs *= elliptic_gamma(s[i] * s[j], e);
  return make(cur, rhs, err);
}

IdentityResult check_classical_pentagon(const std::array<cplx, 3>& a, const std::array<cplx, 2>& b,
                                        const QuadratureConfig& cfg) {
  auto lbeta = [](cplx x, cplx y) { return log_gamma(x) + log_gamma(y) - log_gamma(x + y); };
  const cplx s = a[0] + a[1] + b[0] + b[1];
  auto f = [&](double tau) {
    const cplx u(0.0, tau);
    return std::exp(lbeta(a[0] + u, b[0] - u) + lbeta(a[1] + u, b[1] - u) + lbeta(a[2] + u, s)) / (2.0 * kPi);
  };
  const IntegralResult r = integrate_1d(f, cfg);
  const cplx rhs = std::exp(lbeta(a[1] + b[0], a[2] + b[1]) + lbeta(a[0] + b[1], a[2] + b[0]));
  return make(r.value, rhs, r.error_estimate);
}

OrthogonalityReport check_orthogonality_smeared(double alpha, double centre, double sigma, double eps,
                                                const ModularParameter& mp, const QuadratureConfig& cfg) {
  const double nabla = std::sqrt(mp.omega1 * mp.omega2);
  auto gauss = [&](double x) { return std::exp(-0.5 * x * x / (sigma * sigma)) / (sigma * std::sqrt(2.0 * kPi)); };
  const cplx a(eps, alpha);
  FunctionIntegrand f([&](const double* v) {
    const cplx b(-eps, v[0]);
    const cplx iu(0.0, v[1]);
    const cplx l = log_hyper_B(a - iu, b + iu, mp) + log_hyper_B(-a - iu, -b + iu, mp);
    return gauss(v[0] - centre) * std::exp(l) / nabla;
  });
  QuadratureConfig c = cfg;
  if (c.truncation_radius <= 0.0) c.truncation_radius = std::max(8.0 * sigma + std::abs(centre), 12.0);
  const IntegralResult r = integrate_iterated(f, {c.truncation_radius, c.truncation_radius}, c);
  OrthogonalityReport out;
  out.sigma = sigma;
  out.smeared = r.value;
  out.prediction = 2.0 * kI * nabla * gauss(alpha - centre);
  out.relative_deviation = rel(out.smeared, out.prediction);
  return out;
}

BaileyPair bailey_seed(const std::array<cplx, 2>& al, const std::array<cplx, 2>& be, const ModularParameter& mp) {
  BaileyPair p;
  p.t = (mp.Q() - al[0] - al[1] - be[0] - be[1]) / 2.0;
  const cplx t = p.t;
  p.alpha = [al, be, &mp](cplx z) {
    return std::exp(log_hyper_B(al[0] - z, be[0] + z, mp) + log_hyper_B(al[1] - z, be[1] + z, mp));
  };
  // From the pentagon with a = (t + w, al1, al2), b = (t - w, be1, be2).
  p.beta = [al, be, t, &mp](cplx w) {
    return std::exp(log_hyper_B(t - w + al[0], t + w + be[1], mp) + log_hyper_B(t - w + al[1], t + w + be[0], mp));
  };
  return p;
}

BaileyPair bailey_step(const BaileyPair& p, cplx s, cplx u, const ModularParameter& mp, const QuadratureConfig& cfg) {
  BaileyPair q;
  q.t = s + p.t;
  const cplx t = p.t;
  auto alpha = p.alpha;
  auto beta = p.beta;
  q.alpha = [alpha, t, s, u, &mp](cplx w) { return B(t + u + w, 2.0 * s, mp) * alpha(w); };
  q.beta = [beta, t, s, u, &mp, cfg](cplx w) {
    auto f = [&](double tau) {
      const cplx x(0.0, tau);
      return std::exp(log_hyper_B(s + w - x, u + x, mp) + log_hyper_B(s + 2.0 * t + u + w, s - w + x, mp)) * beta(x);
    };
    return integrate_1d(f, cfg).value;
  };
  return q;
}

IdentityResult check_bailey_pair(const BaileyPair& p, cplx w, const ModularParameter& mp,
                                 const QuadratureConfig& cfg) {
  auto f = [&](double tau) {
    const cplx z(0.0, tau);
    return B(p.t + w - z, p.t - w + z, mp) * p.alpha(z);
  };
  const IntegralResult r = integrate_1d(f, cfg);
  return make(r.value, p.beta(w), r.error_estimate);
}

namespace {

class Octahedron5 : public NdIntegrand {
 public:
  Octahedron5(const OctahedronParams& p, cplx t, const ModularParameter& mp) : p_(p), t_(t), mp_(mp) {}
  // x[0] = Im y (outer), x[1] = Im x (inner)
  cplx operator()(const double* v, int first_changed) override {
    const cplx y(0.0, v[0]), x(0.0, v[1]);
    if (first_changed == 0)
      outer_ = log_hyper_B(p_.al[0] - y, p_.be[0] + y, mp_) + log_hyper_B(p_.al[1] - y, p_.be[1] + y, mp_);
    const cplx s = p_.s, u = p_.u, w = p_.w, t = t_;
    const cplx l = log_hyper_B(s + w - x, u + x, mp_) + log_hyper_B(s - w + x, 2.0 * t + s + u + w, mp_) +
                   log_hyper_B(t + x - y, t - x + y, mp_);
    return std::exp(outer_ + l);
  }

 private:
  OctahedronParams p_;
  cplx t_;
  const ModularParameter& mp_;
  cplx outer_{0.0, 0.0};
};

}  // namespace

IdentityResult check_octahedron_duality(const OctahedronParams& p, const ModularParameter& mp,
                                        const QuadratureConfig& cfg) {
  const cplx t = (mp.Q() - p.al[0] - p.al[1] - p.be[0] - p.be[1]) / 2.0 + p.t_offset;
  const cplx s = p.s, u = p.u, w = p.w;
  auto f4 = [&](double tau) {
    const cplx x(0.0, tau);
    return std::exp(log_hyper_B(s + t + w - x, s + t - w + x, mp) + log_hyper_B(t + u + x, 2.0 * s, mp) +
                    log_hyper_B(p.al[0] - x, p.be[0] + x, mp) + log_hyper_B(p.al[1] - x, p.be[1] + x, mp));
  };
  const IntegralResult z4 = integrate_1d(f4, cfg);
  Octahedron5 f5(p, t, mp);
  const IntegralResult z5 = integrate_nd(f5, 2, cfg);
  IdentityResult r = make(z4.value, z5.value, z4.error_estimate + z5.error_estimate);
  return r;
}

double check_entropy_pentagon(double a1, double a2, double b1, double b2, double b3, bool enforce) {
  const double a[2] = {a1, a2}, b[3] = {b1, b2, b3};
  for (double x : {a1, a2, b1, b2, b3})
    if (!(x > 0.0)) throw Error(ErrorKind::ConstraintViolation, "entropy pentagon needs positive entries");
  if (enforce && std::abs(a1 + a2 + b1 + b2 + b3 - 1.0) > 1e-12)
    throw Error(ErrorKind::ConstraintViolation, "entries must sum to 1");
  if (enforce && std::abs(a1 * a2 - b1 * b2 * b3) > 1e-12)
    throw Error(ErrorKind::ConstraintViolation, "a1 a2 must equal b1 b2 b3");
  auto xlx = [](double x) { return x * std::log(x); };
  double lhs = 0.0, rhs = 0.0;
  for (double ai : a)
    for (double bj : b) lhs += xlx(ai + bj);
  for (double ai : a) rhs += xlx(ai);
  for (double bj : b) rhs += xlx(bj) + xlx(1.0 - bj);
  return std::abs(lhs - rhs);
}

BalancedParams33 random_pentagon_params(std::mt19937_64& rng, const ModularParameter& mp) {
  const auto v = balanced(rng, 6, mp.Q(), 0.3);
  BalancedParams33 p;
  for (int i = 0; i < 3; ++i) {
    p.a[i] = v[i];
    p.b[i] = v[i + 3];
  }
  return p;
}

BalancedParams6 random_beta_params(std::mt19937_64& rng, const ModularParameter& mp) {
  const auto v = balanced(rng, 6, mp.Q(), 0.2);
  BalancedParams6 p;
  for (int i = 0; i < 6; ++i) p.alpha[i] = v[i];
  return p;
}

std::array<cplx, 6> random_elliptic_params(std::mt19937_64& rng, const EllipticBases& e) {
  const cplx pq = e.p * e.q;
  const double target = std::pow(std::abs(pq), 1.0 / 6.0);
  while (true) {
    std::array<cplx, 6> s;
    cplx prod = 1.0;
    for (int i = 0; i < 5; ++i) {
      s[i] = std::polar(uniform(rng, 0.96, 1.04) * target, uniform(rng, -kPi, kPi));
      prod *= s[i];
    }
    s[5] = pq / prod;
    if (std::abs(s[5]) <= 0.7) return s;
  }
}

std::array<double, 5> random_entropy_tuple(std::mt19937_64& rng) {
  while (true) {
    const double a1 = uniform(rng, 0.02, 0.3), a2 = uniform(rng, 0.02, 0.3);
    const double sum = 1.0 - a1 - a2, prod = a1 * a2;
    const double b1 = uniform(rng, 0.01, sum);
    const double m = sum - b1, disc = m * m - 4.0 * prod / b1;
    if (disc < 0.0) continue;
    const double r = std::sqrt(disc);
    const double b2 = (m + r) / 2.0;
    const double b3 = prod / (b1 * b2);  // stable small root
    if (b3 <= 0.0) continue;
    return {a1, a2, b1, b2, b3};
  }
}

OctahedronParams random_octahedron_params(std::mt19937_64& rng, const ModularParameter& mp) {
  OctahedronParams p;
  const double t = uniform(rng, 0.2, 0.35);
  const auto v = balanced(rng, 4, mp.Q() - 2.0 * t, 0.2);
  p.al = {v[0], v[1]};
  p.be = {v[2], v[3]};
  p.s = uniform(rng, 0.2, 0.35);
  p.u = uniform(rng, 0.2, 0.4);
  p.w = cplx(uniform(rng, -0.5, 0.5) * p.s.real(), uniform(rng, -0.3, 0.3));
  return p;
}

}  // namespace stqft
