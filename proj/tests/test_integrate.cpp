#include <cmath>

#include "doctest.h"
#include "stqft/integrate.hpp"
#include "stqft/tqft.hpp"

using namespace stqft;

TEST_CASE("Gaussian on the real line") {
  QuadratureConfig c;
  const auto r = integrate_1d([](double x) { return cplx(std::exp(-x * x), 0.0); }, c);
  CHECK(std::abs(r.value - std::sqrt(kPi)) < 1e-10);
  CHECK(r.error_estimate < 1e-8);
}

TEST_CASE("oscillatory Fourier integral") {
  QuadratureConfig c;
  const auto r = integrate_1d([](double x) { return std::exp(cplx(-x * x, 3.0 * x)); }, c);
  CHECK(std::abs(r.value - std::sqrt(kPi) * std::exp(-9.0 / 4.0)) < 1e-10);
}

TEST_CASE("iterated and tensor rules on separable integrands") {
  QuadratureConfig c;
  c.abs_tol = c.rel_tol = 1e-9;
  auto g2 = [](const double* x) { return cplx(std::exp(-x[0] * x[0] - 2.0 * x[1] * x[1]), 0.0); };
  CHECK(std::abs(integrate_nd(g2, 2, c).value - kPi / std::sqrt(2.0)) < 1e-8);
  auto g4 = [](const double* x) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += x[i] * x[i];
    return cplx(std::exp(-s), 0.0);
  };
  const auto r = integrate_nd(g4, 4, c);
  CHECK(r.method == Method::tensor);
  CHECK(std::abs(r.value - kPi * kPi) < 1e-7);
}

TEST_CASE("contour-shift independence") {
  const ModularParameter mp(1.0);
  QuadratureConfig c;
  c.abs_tol = c.rel_tol = 1e-12;
  c.contour_shift = 0.1;
  const double ref = fig8_reduced(mp, c).value.real();
  for (double d : {0.05, 0.2}) {
    c.contour_shift = d;
    CHECK(std::abs(fig8_reduced(mp, c).value.real() - ref) / ref < 1e-9);
  }
}

TEST_CASE("Monte Carlo is unbiased over 30 seeds") {
  auto f = [](const double* x) {
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += x[i] * x[i];
    return cplx(std::exp(-s), 0.0);
  };
  FunctionIntegrand g(f);
  const double exact = std::pow(kPi, 2.5);
  double mean = 0.0, se2 = 0.0;
  for (unsigned long long seed = 1; seed <= 30; ++seed) {
    const auto r = integrate_monte_carlo(g, std::vector<double>(5, 1.5), 20000, seed);
    mean += r.value.real() / 30.0;
    se2 += r.error_estimate * r.error_estimate / 900.0;
  }
  CHECK(std::abs(mean - exact) < 3.0 * std::sqrt(se2));
}

TEST_CASE("non-decaying integrand is rejected") {
  QuadratureConfig c;
  CHECK_THROWS_AS(integrate_1d([](double) { return cplx(1.0, 0.0); }, c), Error);
}
