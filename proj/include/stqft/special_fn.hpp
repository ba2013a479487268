#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "stqft/errors.hpp"
#include "stqft/quadrature_config.hpp"

namespace stqft {

using cplx = std::complex<double>;
using ComplexValue = cplx;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Trapezoid nodes for log Phi_b on the lifted contour R + i*pi*m/2, m = min(b, 1/b).
struct DilogKernel {
  double m = 1.0;
  double h = 0.25;
  double eps = 0.0;
  int n = 0;
  std::vector<cplx> weight;  // index k + n for node t_k = k*h
};

// omega1 = b, omega2 = 1/b, so sqrt(omega1*omega2) = 1.
class ModularParameter {
 public:
  explicit ModularParameter(double b);

  double b;
  double omega1, omega2;
  cplx c_b;
  cplx zeta_inv;
  cplx zeta_o;
  // log of sqrt(zeta_inv), taken as i*pi*(1 + 2 c_b^2)/12.
  cplx log_sqrt_zeta_inv;
  double Delta;
  double nabla = 1.0;

  double Q() const { return omega1 + omega2; }
  // u(x) = c_b (1 - x/pi)
  cplx u(double x) const { return c_b * (1.0 - x / kPi); }
  const DilogKernel& kernel() const { return *kernel_; }

 private:
  std::shared_ptr<const DilogKernel> kernel_;
};

struct EllipticBases {
  cplx p;
  cplx q;
};

// Faddeev's quantum dilogarithm. Lifted-contour trapezoid rule after
// reducing Im z with the functional equations and Re z with inversion.
cplx log_phi_b(cplx z, const ModularParameter& mp);
cplx phi_b(cplx z, const ModularParameter& mp, const QuadratureConfig& cfg = {});

// Direct adaptive quadrature of the defining integral: real axis for
// |t| >= delta plus a half circle of radius delta above the origin.
// Requires |Im z| < |Im c_b|.
cplx phi_b_reference(cplx z, const ModularParameter& mp, const QuadratureConfig& cfg = {},
                     double delta = -1.0);

cplx log_hyperbolic_gamma(cplx u, const ModularParameter& mp);
cplx hyperbolic_gamma(cplx u, const ModularParameter& mp, const QuadratureConfig& cfg = {});

// Product form with q = exp(2 pi i w1/w2); only for Im(w1/w2) > 0.
cplx hyperbolic_gamma_product(cplx u, cplx omega1, cplx omega2, double tol = 1e-15);

cplx bernoulli_b22(cplx u, cplx omega1, cplx omega2);
cplx bernoulli_b22(cplx u, const ModularParameter& mp);

// B(x, y) = g(x) g(y) / g(x + y) = g(x) g(y) g(w1 + w2 - x - y)
cplx log_hyper_B(cplx x, cplx y, const ModularParameter& mp);
cplx hyper_B(cplx x, cplx y, const ModularParameter& mp, const QuadratureConfig& cfg = {});
cplx hyper_B_quotient(cplx x, cplx y, const ModularParameter& mp);

cplx cap_psi(cplx u, cplx v, cplx w, const ModularParameter& mp, const QuadratureConfig& cfg = {});
cplx psi_fn(cplx x, cplx y, const ModularParameter& mp, const QuadratureConfig& cfg = {});

cplx qpochhammer(cplx z, cplx p, double tol = 1e-16);
cplx theta_fn(cplx z, cplx p, double tol = 1e-16);
cplx elliptic_gamma(cplx z, const EllipticBases& bases, double tol = 1e-16);

cplx log_gamma(cplx z);
cplx classical_beta(cplx x, cplx y);

double lobachevsky(double theta, double tol = 1e-14);
double lobachevsky_derivative(double theta);

}  // namespace stqft
