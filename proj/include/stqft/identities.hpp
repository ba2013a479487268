#pragma once

#include <array>
#include <functional>
#include <random>

#include "stqft/integrate.hpp"
#include "stqft/special_fn.hpp"

namespace stqft {

// Contour integrals along iR are computed as integrals over R with u = i*tau,
// so du / (i sqrt(w1 w2)) = d tau (sqrt(w1 w2) = 1 for w1 = b, w2 = 1/b).

struct IdentityResult {
  cplx lhs{0.0, 0.0};
  cplx rhs{0.0, 0.0};
  double residual = 0.0;  // |lhs - rhs| / |rhs|
  double error_estimate = 0.0;
};

// Special-function identity residuals.
double phi_inversion_residual(cplx z, const ModularParameter& mp);
// which = +1 for the b shift, -1 for the 1/b shift
double phi_functional_residual(cplx z, int which, const ModularParameter& mp);
double phi_unitarity_residual(cplx z, const ModularParameter& mp);
double gamma_inversion_residual(cplx x, const ModularParameter& mp);
double elliptic_reflection_residual(cplx z, const EllipticBases& bases);

// Psi(u, v, w) by direct integration against the closed form.
IdentityResult check_psi_closed_form(cplx u, cplx v, cplx w, const ModularParameter& mp,
                                     const QuadratureConfig& cfg);

struct BalancedParams33 {
  std::array<cplx, 3> a, b;
};
struct BalancedParams6 {
  std::array<cplx, 6> alpha;
};

IdentityResult check_hyperbolic_pentagon(const BalancedParams33& p, const ModularParameter& mp,
                                         const QuadratureConfig& cfg);
IdentityResult check_hyperbolic_beta_integral(const BalancedParams6& p, const ModularParameter& mp,
                                              const QuadratureConfig& cfg);
IdentityResult check_elliptic_beta_integral(const std::array<cplx, 6>& s, const EllipticBases& bases,
                                            double tol);
// Classical pentagon with Euler beta functions; needs positive real parts.
IdentityResult check_classical_pentagon(const std::array<cplx, 3>& a, const std::array<cplx, 2>& b,
                                        const QuadratureConfig& cfg);

struct OrthogonalityReport {
  double sigma = 0.0;
  cplx smeared{0.0, 0.0};     // integral of the left side against the Gaussian in b
  cplx prediction{0.0, 0.0};  // 2 i sqrt(w1 w2) times the Gaussian at a
  double relative_deviation = 0.0;
};
// a = i*alpha and b = i*beta with beta smeared by a unit-mass Gaussian of width
// sigma centred at centre; eps is the real-part regulator of a and b.
OrthogonalityReport check_orthogonality_smeared(double alpha, double centre, double sigma, double eps,
                                                const ModularParameter& mp, const QuadratureConfig& cfg);

struct BaileyPair {
  cplx t;
  std::function<cplx(cplx)> alpha;  // alpha(z, t)
  std::function<cplx(cplx)> beta;   // beta(w, t)
};

// Seed pair from the pentagon with 2t + sum(alpha_i + beta_i) = w1 + w2.
BaileyPair bailey_seed(const std::array<cplx, 2>& al, const std::array<cplx, 2>& be, const ModularParameter& mp);
// Step with parameters s and the free parameter u; the new pair is with respect to s + t.
BaileyPair bailey_step(const BaileyPair& p, cplx s, cplx u, const ModularParameter& mp, const QuadratureConfig& cfg);
// |beta(w) - int B(t + w - z, t - w + z) alpha(z) dz| / |beta(w)|
IdentityResult check_bailey_pair(const BaileyPair& p, cplx w, const ModularParameter& mp,
                                 const QuadratureConfig& cfg);

struct OctahedronParams {
  std::array<cplx, 2> al, be;
  cplx s, u, w;
  // t follows from 2t + sum(al + be) = w1 + w2, plus t_offset (nonzero only
  // to break the balancing on purpose)
  cplx t_offset{0.0, 0.0};
};
// lhs = Z over four tetrahedra (1D), rhs = Z over five tetrahedra (2D)
IdentityResult check_octahedron_duality(const OctahedronParams& p, const ModularParameter& mp,
                                        const QuadratureConfig& cfg);

// Quadrature-free; throws ConstraintViolation unless all five are positive,
// sum to 1 and a1 a2 = b1 b2 b3 (to 1e-12). With enforce = false only
// positivity is required.
double check_entropy_pentagon(double a1, double a2, double b1, double b2, double b3, bool enforce = true);

// Random parameter generators used by the verification suites.
BalancedParams33 random_pentagon_params(std::mt19937_64& rng, const ModularParameter& mp);
BalancedParams6 random_beta_params(std::mt19937_64& rng, const ModularParameter& mp);
std::array<cplx, 6> random_elliptic_params(std::mt19937_64& rng, const EllipticBases& bases);
std::array<double, 5> random_entropy_tuple(std::mt19937_64& rng);
OctahedronParams random_octahedron_params(std::mt19937_64& rng, const ModularParameter& mp);

}  // namespace stqft
