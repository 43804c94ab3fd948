#pragma once

#include <cstddef>
#include <vector>

#include "stochorder/rational.hpp"

namespace stochorder::lp {

// Dense equality system A x = b over the rationals, x >= 0.
struct EqualitySystem {
  std::size_t num_vars = 0;
  std::vector<std::vector<Rational>> rows;  // each of length num_vars
  std::vector<Rational> rhs;
};

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> x;  // a basic feasible point when feasible
  std::size_t pivots = 0;
};

// Phase-1 simplex with one artificial variable per row, Bland's rule for
// both the entering and the leaving variable, exact pivots. Artificials never
// re-enter once they leave the basis. Deterministic for a fixed input.
FeasibilityResult find_feasible_point(const EqualitySystem& system);

}  // namespace stochorder::lp
