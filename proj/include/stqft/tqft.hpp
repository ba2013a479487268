#pragma once

#include <string>
#include <vector>

#include "stqft/complexes.hpp"
#include "stqft/integrate.hpp"
#include "stqft/special_fn.hpp"

namespace stqft {

// log B(T, s) for tetrahedron t; negative tetrahedra carry the conjugate weight.
cplx log_tet_weight(const Triangulation& X, int t, const ShapeStructure& a, const State& s,
                    const ModularParameter& mp);
cplx tet_weight(const Triangulation& X, int t, const ShapeStructure& a, const State& s,
                const ModularParameter& mp);
// B(X, s) = prod_T B(T, s)
cplx boltzmann_weight(const Triangulation& X, const ShapeStructure& a, const State& s,
                      const ModularParameter& mp);

struct PartitionResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  std::string gauge;
  int dimension = 0;
  long evaluations = 0;
  Method method = Method::adaptive;
};

// Gauge-fixed integral of B(X, .) over the interior edge states.
// boundary holds one value per edge class; only boundary entries are read.
PartitionResult partition_function(const Triangulation& X, const ShapeStructure& a,
                                   const State& boundary, const GaugeFixing& lambda,
                                   const ModularParameter& mp, const QuadratureConfig& cfg);
PartitionResult partition_function(const Triangulation& X, const ShapeStructure& a,
                                   const ModularParameter& mp, const QuadratureConfig& cfg);

// 2 |Phi_b(u(w))|^2 with w the weight of the knot edge.
double knot_edge_factor(const Triangulation& X, const ShapeStructure& a, int knot_edge,
                        const ModularParameter& mp);

struct InvarianceReport {
  PartitionResult before;
  PartitionResult after;
  double residual = 0.0;  // |after - before| / |before|
};

InvarianceReport check_pachner_invariance(const Triangulation& X, const ShapeStructure& a, int edge,
                                          const State& boundary, const ModularParameter& mp,
                                          const QuadratureConfig& cfg);
InvarianceReport check_shape_gauge_invariance(const Triangulation& X, const ShapeStructure& a, int edge,
                                              double t, const State& boundary, const ModularParameter& mp,
                                              const QuadratureConfig& cfg);
InvarianceReport faddeev_popov_check(const Triangulation& X, const ShapeStructure& a,
                                     const GaugeFixing& lambda, const GaugeFixing& lambda2,
                                     const State& boundary, const ModularParameter& mp,
                                     const QuadratureConfig& cfg);

// Reduced knot integrals.
double trefoil_closed_form(double alpha0, const ModularParameter& mp);
// |int_{R - i delta} Phi_b(-z)/Phi_b(z) dz|^2, delta = cfg.contour_shift * |Im c_b|
IntegralResult fig8_reduced(const ModularParameter& mp, const QuadratureConfig& cfg);
// |int_{R - i delta} exp(i pi y^2)/Phi_b(y)^3 dy|^2
IntegralResult knot52_balanced(const ModularParameter& mp, const QuadratureConfig& cfg);

struct Knot52Angles {
  double beta1, beta2, gamma1, gamma2, delta1, delta2;
};
// Non-separable 2D form in the variables (x1, u) before the final factorization.
IntegralResult knot52_reduced_2d(const Knot52Angles& ang, const ModularParameter& mp,
                                 const QuadratureConfig& cfg);

struct Knot61Angles {
  double beta1, beta2, gamma1, gamma2, delta1, delta2, rho1, rho2;
};
// The inner 2D integral I of the 6_1 factorization and its partner J; W~ = I J.
IntegralResult knot61_inner(const Knot61Angles& ang, const ModularParameter& mp,
                            const QuadratureConfig& cfg);
IntegralResult knot61_partner(const Knot61Angles& ang, const ModularParameter& mp,
                              const QuadratureConfig& cfg);

}  // namespace stqft
