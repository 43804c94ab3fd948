#pragma once

#include <optional>
#include <string_view>

#include "stochorder/rational.hpp"

namespace stochorder {

enum class WitnessKind {
  level_p,      // a probability level p (ES / integrated-quantile comparisons)
  threshold_x,  // a threshold x (survival functions, conditional expectations)
  angle_t,      // the kink t of an angle function min(x,t) or (x-t)+
};

std::string_view to_string(WitnessKind kind);

// A concrete point where a checked inequality lhs >= rhs (or lhs <= rhs for
// the conditional-expectation checks) breaks. Values from floating-point
// routes are stored as the exact rational of the double and flagged inexact.
struct Witness {
  WitnessKind kind;
  Rational value;
  Rational lhs;
  Rational rhs;
  bool exact = true;
};

struct OrderVerdict {
  bool holds = true;
  std::optional<Witness> witness;  // present iff !holds

  static OrderVerdict pass() { return {}; }
  static OrderVerdict fail(Witness w) { return {false, std::move(w)}; }
  static OrderVerdict fail_inexact(WitnessKind kind, double value, double lhs, double rhs) {
    return fail(Witness{kind, rational_from_double(value), rational_from_double(lhs),
                        rational_from_double(rhs), false});
  }

  explicit operator bool() const { return holds; }
};

}  // namespace stochorder
