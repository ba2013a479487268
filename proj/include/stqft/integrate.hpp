#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "stqft/quadrature_config.hpp"

namespace stqft {

using cplx = std::complex<double>;

enum class Method { adaptive, tensor, monte_carlo };
const char* to_string(Method m);

struct IntegralResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  long evaluations = 0;
  Method method = Method::adaptive;
};

using Integrand1D = std::function<cplx(double)>;

// Adaptive Gauss-Kronrod (7/15) on [a, b] with global error control.
IntegralResult integrate_interval(const Integrand1D& f, double a, double b,
                                  const QuadratureConfig& cfg);

// Integral over the real line; truncation from cfg.truncation_radius or
// from the fitted exponential decay of |f|.
IntegralResult integrate_1d(const Integrand1D& f, const QuadratureConfig& cfg);

// Integral over the line {t + i*shift} parametrized by real t, dz = dt.
IntegralResult integrate_line(const std::function<cplx(cplx)>& f, double shift,
                              const QuadratureConfig& cfg);

// Multi-dimensional integrand. first_changed is the smallest coordinate
// index that differs from the previous call (0 when unknown), so an
// implementation may reuse factors depending only on earlier coordinates.
class NdIntegrand {
 public:
  virtual ~NdIntegrand() = default;
  virtual cplx operator()(const double* x, int first_changed) = 0;
};

class FunctionIntegrand : public NdIntegrand {
 public:
  explicit FunctionIntegrand(std::function<cplx(const double*)> f) : f_(std::move(f)) {}
  cplx operator()(const double* x, int) override { return f_(x); }

 private:
  std::function<cplx(const double*)> f_;
};

struct DecayEstimate {
  double rate = 0.0;       // mu in C*exp(-mu*|x|)
  double prefactor = 0.0;  // C
  double radius = 0.0;     // R solving C*exp(-mu*R) = abs_tol/(10*dim)
};

DecayEstimate estimate_decay(NdIntegrand& f, int dim, const QuadratureConfig& cfg);

// dim <= 3: iterated adaptive quadrature; dim == 4: tensor Gauss-Legendre;
// dim >= 5 or cfg.force_monte_carlo: importance-sampled Monte Carlo.
IntegralResult integrate_nd(NdIntegrand& f, int dim, const QuadratureConfig& cfg);
IntegralResult integrate_nd(const std::function<cplx(const double*)>& f, int dim,
                            const QuadratureConfig& cfg);

// Individual strategies, exposed for tests and for explicit selection.
IntegralResult integrate_iterated(NdIntegrand& f, const std::vector<double>& radius,
                                  const QuadratureConfig& cfg);
IntegralResult integrate_tensor(NdIntegrand& f, const std::vector<double>& radius, int nodes);
IntegralResult integrate_monte_carlo(NdIntegrand& f, const std::vector<double>& rate,
                                     long samples, unsigned long long seed);

}  // namespace stqft
