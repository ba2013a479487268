#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "stqft/errors.hpp"
#include "stqft/identities.hpp"
#include "stqft/special_fn.hpp"

namespace stqft::cli {

using nlohmann::json;

namespace {

cplx parse_complex(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw UsageError("bad complex number '" + s + "'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw UsageError("bad complex number '" + s + "', expected re,im");
  }
  return {re, im};
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

QuadratureConfig quadrature(double tol) {
  QuadratureConfig c;
  c.abs_tol = tol;
  c.rel_tol = tol;
  return c;
}

std::string config_hash(const json& config) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Schema, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_special(const SpecialArgs& a, json& out) {
  const ModularParameter mp(a.b);
  const QuadratureConfig cfg = quadrature(a.tol);
  const std::string& f = a.function;
  out["schema"] = "stqft.special/1";
  out["function"] = f;
  out["b"] = a.b;
  double residual = -1.0;
  cplx value;
  if (f == "phi_b") {
    const cplx z = parse_complex(a.z);
    out["z"] = cjson(z);
    value = phi_b(z, mp, cfg);
    if (a.check_inversion) residual = phi_inversion_residual(z, mp);
  } else if (f == "gamma2") {
    const cplx x = parse_complex(a.x);
    out["x"] = cjson(x);
    value = hyperbolic_gamma(x, mp, cfg);
    if (a.check_inversion) residual = gamma_inversion_residual(x, mp);
  } else if (f == "B") {
    const cplx x = parse_complex(a.x), y = parse_complex(a.y);
    out["x"] = cjson(x);
    out["y"] = cjson(y);
    value = hyper_B(x, y, mp, cfg);
  } else if (f == "psi") {
    const cplx u = parse_complex(a.u), v = parse_complex(a.v), w = parse_complex(a.w);
    out["u"] = cjson(u);
    out["v"] = cjson(v);
    out["w"] = cjson(w);
    value = cap_psi(u, v, w, mp, cfg);
  } else if (f == "elliptic_gamma") {
    const cplx z = parse_complex(a.z);
    const EllipticBases e{a.p, a.q};
    out["z"] = cjson(z);
    out["p"] = a.p;
    out["q"] = a.q;
    value = elliptic_gamma(z, e);
    if (a.check_inversion) residual = elliptic_reflection_residual(z, e);
  } else if (f == "lobachevsky") {
    const cplx x = parse_complex(a.x);
    out["x"] = x.real();
    value = lobachevsky(x.real());
  } else {
    throw UsageError("unknown function '" + f + "'");
  }
  if (a.check_inversion && residual < 0.0) throw UsageError("--check-inversion is not available for " + f);
  out["value_re"] = value.real();
  out["value_im"] = value.imag();
  if (residual >= 0.0) {
    out["inversion_residual"] = residual;
    out["passed"] = residual < 1e-9;
    return residual < 1e-9 ? kOk : kResidual;
  }
  return kOk;
}

}  // namespace stqft::cli
