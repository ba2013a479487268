#pragma once

#include <vector>

#include "stqft/complexes.hpp"
#include "stqft/special_fn.hpp"

namespace stqft {

double shape_volume(const Triangulation& X, const ShapeStructure& a);

// z(q) = exp(i a(q)) sin a(q'') / sin a(q'), with q' = next_quad(q) in the
// orientation of tetrahedron t.
cplx shape_parameter(const Triangulation& X, const ShapeStructure& a, int t, int q);

struct GluingResidual {
  int edge = -1;
  cplx product{1.0, 0.0};
  double residual = 0.0;  // |product - 1|
};
std::vector<GluingResidual> gluing_residuals(const Triangulation& X, const ShapeStructure& a);
double max_gluing_residual(const Triangulation& X, const ShapeStructure& a);

// Orthonormal basis of the tangential angle structures (tet sums and all edge
// weights held fixed); the edge generators lie in this span.
std::vector<QuadVector> gauge_directions(const Triangulation& X);
ShapeStructure move_along(const ShapeStructure& a, const std::vector<QuadVector>& dirs,
                          const std::vector<double>& y);
// d V / d y_k at y = 0, from Lambda'(x) = -ln|2 sin x|.
std::vector<double> volume_gradient(const ShapeStructure& a, const std::vector<QuadVector>& dirs);

struct VolumeMaximum {
  ShapeStructure shape;
  double volume = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Gradient ascent over the edge-type gauge class of a, with backtracking.
// Throws BoundaryDegeneration when the ascent presses an angle against 0 or pi.
VolumeMaximum maximize_volume_in_gauge_class(const Triangulation& X, const ShapeStructure& a,
                                             double tol = 1e-10, int max_iterations = 20000);

struct HolonomyPhase {
  double holonomy = 0.0;
  double phase = 0.0;  // eigenvalue phases are +-phase
};
std::vector<HolonomyPhase> angle_holonomy_eigenvalue_report(const Triangulation& X, const ShapeStructure& b,
                                                            const std::vector<EdgeLoop>& loops,
                                                            double tol = 1e-8);

// Two-tetrahedron ideal triangulation of the figure-eight knot complement.
Triangulation figure_eight_complement();

}  // namespace stqft
