#pragma once

#include <cstdint>

namespace stqft {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 40;
  // <= 0 selects the radius from the estimated decay rate.
  double truncation_radius = 0.0;
  // Downward shift of R - i0 contours, as a fraction of |Im c_b|.
  double contour_shift = 0.1;
  int nodes_per_panel = 15;
  // Used by the tensor rule (dim 4) as points per axis, and by Monte Carlo.
  int tensor_nodes = 48;
  long mc_samples = 200000;
  bool force_monte_carlo = false;
  std::uint64_t rng_seed = 12345;
  long max_evaluations = 400000000;
};

}  // namespace stqft
