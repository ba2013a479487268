#include "stqft/integrate.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <queue>
#include <random>

#include "stqft/errors.hpp"

namespace stqft {

const char* to_string(Method m) {
  switch (m) {
    case Method::adaptive: return "adaptive";
    case Method::tensor: return "tensor";
    case Method::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

namespace {

using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;
using G7 = boost::math::quadrature::gauss<double, 7>;

struct Panel {
  double a, b;
  cplx value;
  double error;
  double roundoff;
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel eval_panel(const Integrand1D& f, double a, double b, int depth, long& evals) {
  const auto& xk = GK15::abscissa();
  const auto& wk = GK15::weights();
  const auto& wg = G7::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx kron = wk[0] * fc, gauss = wg[0] * fc;
  double resabs = wk[0] * std::abs(fc);
  cplx fv[16];
  fv[0] = fc;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const cplx f1 = f(c - h * xk[i]);
    const cplx f2 = f(c + h * xk[i]);
    fv[2 * i - 1] = f1;
    fv[2 * i] = f2;
    kron += wk[i] * (f1 + f2);
    resabs += wk[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 0) gauss += wg[i / 2] * (f1 + f2);
  }
  evals += 15;
  const cplx mean = kron * 0.5;
  double resasc = wk[0] * std::abs(fc - mean);
  for (std::size_t i = 1; i < xk.size(); ++i)
    resasc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
  resasc *= std::abs(h);
  resabs *= std::abs(h);
  double err = std::abs((kron - gauss) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double roundoff = 50 * 2.2e-16 * resabs;
  err = std::max(err, roundoff);
  return {a, b, kron * h, err, roundoff, depth};
}

double pick_radius(const DecayEstimate& d, const QuadratureConfig& cfg) {
  if (cfg.truncation_radius > 0.0) return cfg.truncation_radius;
  return d.radius;
}

}  // namespace

IntegralResult integrate_interval(const Integrand1D& f, double a, double b,
                                  const QuadratureConfig& cfg) {
  IntegralResult out;
  if (a == b) return out;
  const int initial = 8;
  std::priority_queue<Panel> heap;
  std::vector<Panel> retired;
  const double w = (b - a) / initial;
  for (int i = 0; i < initial; ++i)
    heap.push(eval_panel(f, a + i * w, (i + 1 == initial) ? b : a + (i + 1) * w, 0, out.evaluations));

  auto totals = [&](cplx& v, double& e, double& ro) {
    v = 0.0;
    e = 0.0;
    ro = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      ro += copy.top().roundoff;
      copy.pop();
    }
    for (const auto& p : retired) {
      v += p.value;
      e += p.error;
      ro += p.roundoff;
    }
  };

  cplx value;
  double error, roundoff;
  totals(value, error, roundoff);
  long iterations = 0;
  while (!heap.empty()) {
    const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
    if (error <= target || error <= 2.0 * roundoff) break;
    if (out.evaluations > cfg.max_evaluations) break;
    Panel worst = heap.top();
    heap.pop();
    if (worst.depth >= cfg.max_depth) {
      retired.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = eval_panel(f, worst.a, mid, worst.depth + 1, out.evaluations);
    const Panel right = eval_panel(f, mid, worst.b, worst.depth + 1, out.evaluations);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    roundoff += left.roundoff + right.roundoff - worst.roundoff;
    heap.push(left);
    heap.push(right);
    if (++iterations % 64 == 0) totals(value, error, roundoff);
  }

  // Deterministic final reduction in order of position.
  std::vector<Panel> all = retired;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  out.value = 0.0;
  out.error_estimate = 0.0;
  double total_roundoff = 0.0;
  for (const auto& p : all) {
    out.value += p.value;
    out.error_estimate += p.error;
    total_roundoff += p.roundoff;
  }
  out.method = Method::adaptive;
  const double target =
      std::max({cfg.abs_tol, cfg.rel_tol * std::abs(out.value), 2.0 * total_roundoff});
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
    throw Error(ErrorKind::QuadratureFailure, "non-finite integrand value");
  if (out.error_estimate > 100.0 * target && out.evaluations <= cfg.max_evaluations)
    throw Error(ErrorKind::QuadratureFailure, "maximum subdivision depth reached");
  return out;
}

IntegralResult integrate_1d(const Integrand1D& f, const QuadratureConfig& cfg) {
  FunctionIntegrand g([&f](const double* x) { return f(x[0]); });
  if (cfg.truncation_radius > 0.0) return integrate_interval(f, -cfg.truncation_radius, cfg.truncation_radius, cfg);
  const DecayEstimate d = estimate_decay(g, 1, cfg);
  IntegralResult r = integrate_interval(f, -d.radius, d.radius, cfg);
  r.error_estimate += 2.0 * d.prefactor * std::exp(-d.rate * d.radius) / d.rate;
  return r;
}

IntegralResult integrate_line(const std::function<cplx(cplx)>& f, double shift,
                              const QuadratureConfig& cfg) {
  return integrate_1d([&](double t) { return f(cplx(t, shift)); }, cfg);
}

DecayEstimate estimate_decay(NdIntegrand& f, int dim, const QuadratureConfig& cfg) {
  std::vector<std::vector<double>> dirs;
  for (int i = 0; i < dim; ++i)
    for (int s : {-1, 1}) {
      std::vector<double> d(dim, 0.0);
      d[i] = s;
      dirs.push_back(d);
    }
  if (dim > 1) {
    const double n = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int mask = 0; mask < (1 << dim); ++mask) {
      std::vector<double> d(dim);
      for (int i = 0; i < dim; ++i) d[i] = ((mask >> i) & 1) ? n : -n;
      dirs.push_back(d);
    }
  }
  const double radii[] = {2.0, 4.0, 8.0};
  double logs[3];
  std::vector<double> x(dim);
  for (int k = 0; k < 3; ++k) {
    double worst = 0.0;
    for (const auto& d : dirs)
      for (double jitter : {0.0, 0.17, 0.31}) {
        const double r = radii[k] + jitter;
        for (int i = 0; i < dim; ++i) x[i] = r * d[i];
        const double v = std::abs(f(x.data(), 0));
        if (!std::isfinite(v)) throw Error(ErrorKind::DecayEstimateFailure, "non-finite integrand sample");
        worst = std::max(worst, v);
      }
    logs[k] = std::log(std::max(worst, 1e-300));
  }
  // least-squares line through (r, log max|f|)
  const double rm = (radii[0] + radii[1] + radii[2]) / 3.0;
  const double lm = (logs[0] + logs[1] + logs[2]) / 3.0;
  double num = 0.0, den = 0.0;
  for (int k = 0; k < 3; ++k) {
    num += (radii[k] - rm) * (logs[k] - lm);
    den += (radii[k] - rm) * (radii[k] - rm);
  }
  DecayEstimate d;
  d.rate = -num / den;
  if (!(d.rate > 0.0)) throw Error(ErrorKind::DecayEstimateFailure, "integrand does not decay");
  // Envelope through the largest sample so that C exp(-mu r) bounds all three.
  double logc = -1e300;
  for (int k = 0; k < 3; ++k) logc = std::max(logc, logs[k] + d.rate * radii[k]);
  d.prefactor = std::exp(logc);
  const double target = cfg.abs_tol / (10.0 * dim);
  d.radius = std::clamp((logc - std::log(target)) / d.rate, 4.0, 400.0);
  return d;
}

namespace {

struct IteratedState {
  NdIntegrand& f;
  const std::vector<double>& radius;
  const QuadratureConfig& cfg;
  std::vector<double> x;
  int dirty = 0;
  long evals = 0;

  IntegralResult level(int l, double abs_tol) {
    const int dim = static_cast<int>(x.size());
    QuadratureConfig qc = cfg;
    qc.abs_tol = abs_tol;
    double inner_err = 0.0;
    long inner_count = 0;
    const double inner_tol = abs_tol / (2.0 * radius[l]);
    Integrand1D g = [&](double t) -> cplx {
      x[l] = t;
      dirty = std::min(dirty, l);
      if (l == dim - 1) {
        const cplx v = f(x.data(), dirty);
        dirty = dim;
        ++evals;
        return v;
      }
      const IntegralResult r = level(l + 1, inner_tol);
      inner_err += r.error_estimate;
      ++inner_count;
      return r.value;
    };
    IntegralResult r = integrate_interval(g, -radius[l], radius[l], qc);
    if (inner_count > 0) r.error_estimate += 2.0 * radius[l] * inner_err / inner_count;
    return r;
  }
};

}  // namespace

IntegralResult integrate_iterated(NdIntegrand& f, const std::vector<double>& radius,
                                  const QuadratureConfig& cfg) {
  IteratedState st{f, radius, cfg, std::vector<double>(radius.size(), 0.0)};
  IntegralResult r = st.level(0, cfg.abs_tol);
  r.evaluations = st.evals;
  r.method = Method::adaptive;
  return r;
}

namespace {

cplx tensor_sum(NdIntegrand& f, const std::vector<double>& radius, int nodes, long& evals) {
  gsl_integration_glfixed_table* tab = gsl_integration_glfixed_table_alloc(nodes);
  std::vector<double> xs(nodes), ws(nodes);
  for (int i = 0; i < nodes; ++i) gsl_integration_glfixed_point(-1.0, 1.0, i, &xs[i], &ws[i], tab);
  gsl_integration_glfixed_table_free(tab);
  const int dim = static_cast<int>(radius.size());
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  cplx sum = 0.0;
  int changed = 0;
  while (true) {
    double w = 1.0;
    for (int i = 0; i < dim; ++i) {
      x[i] = radius[i] * xs[idx[i]];
      w *= radius[i] * ws[idx[i]];
    }
    sum += w * f(x.data(), changed);
    ++evals;
    int k = dim - 1;
    while (k >= 0 && ++idx[k] == nodes) idx[k--] = 0;
    if (k < 0) break;
    changed = k;
  }
  return sum;
}

}  // namespace

IntegralResult integrate_tensor(NdIntegrand& f, const std::vector<double>& radius, int nodes) {
  IntegralResult r;
  const cplx fine = tensor_sum(f, radius, nodes, r.evaluations);
  const cplx coarse = tensor_sum(f, radius, std::max(4, (2 * nodes) / 3), r.evaluations);
  r.value = fine;
  r.error_estimate = std::abs(fine - coarse);
  r.method = Method::tensor;
  return r;
}

IntegralResult integrate_monte_carlo(NdIntegrand& f, const std::vector<double>& rate, long samples,
                                     unsigned long long seed) {
  const int dim = static_cast<int>(rate.size());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> x(dim);
  cplx mean = 0.0;
  double m2 = 0.0;
  for (long n = 1; n <= samples; ++n) {
    double logp = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double u = unif(rng);
      const double s = (u < 0.5) ? -1.0 : 1.0;
      const double v = std::max(1e-300, 1.0 - std::abs(2.0 * u - 1.0));
      x[i] = -s * std::log(v) / rate[i];
      logp += std::log(0.5 * rate[i]) - rate[i] * std::abs(x[i]);
    }
    const cplx val = f(x.data(), 0) * std::exp(-logp);
    const cplx delta = val - mean;
    mean += delta / static_cast<double>(n);
    m2 += std::real(std::conj(delta) * (val - mean));
  }
  IntegralResult r;
  r.value = mean;
  r.error_estimate = samples > 1 ? std::sqrt(m2 / (samples - 1) / samples) : 0.0;
  r.evaluations = samples;
  r.method = Method::monte_carlo;
  return r;
}

IntegralResult integrate_nd(NdIntegrand& f, int dim, const QuadratureConfig& cfg) {
  if (dim < 1) throw Error(ErrorKind::QuadratureFailure, "dimension must be positive");
  const DecayEstimate d = estimate_decay(f, dim, cfg);
  const double radius = pick_radius(d, cfg);
  if (cfg.force_monte_carlo || dim >= 5) {
    std::vector<double> rate(dim, 0.8 * d.rate);
    return integrate_monte_carlo(f, rate, cfg.mc_samples, cfg.rng_seed);
  }
  std::vector<double> radii(dim, radius);
  IntegralResult r = dim == 4 ? integrate_tensor(f, radii, cfg.tensor_nodes) : integrate_iterated(f, radii, cfg);
  if (cfg.truncation_radius <= 0.0)
    r.error_estimate += 2.0 * dim * std::pow(2.0 * radius, dim - 1) * d.prefactor * std::exp(-d.rate * radius) / d.rate;
  return r;
}

IntegralResult integrate_nd(const std::function<cplx(const double*)>& f, int dim,
                            const QuadratureConfig& cfg) {
  FunctionIntegrand g(f);
  return integrate_nd(g, dim, cfg);
}

}  // namespace stqft
