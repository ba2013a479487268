#include "doctest.h"
#include "stqft/identities.hpp"

using namespace stqft;

// Smeared orthogonality of the B(a + z, -z) kernels against a Gaussian in b.
TEST_CASE("smeared orthogonality") {
  const ModularParameter mp(1.0);
  QuadratureConfig c;
  c.abs_tol = c.rel_tol = 1e-8;
  const auto wide = check_orthogonality_smeared(0.3, 0.3, 0.5, 0.05, mp, c);
  CAPTURE(wide.smeared);
  CAPTURE(wide.prediction);
  CHECK(wide.relative_deviation < 0.1);
  const auto narrow = check_orthogonality_smeared(0.3, 0.3, 0.25, 0.05, mp, c);
  CAPTURE(narrow.smeared);
  CAPTURE(narrow.prediction);
  CHECK(narrow.relative_deviation < 0.05);
}
