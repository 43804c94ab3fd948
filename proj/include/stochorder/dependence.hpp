#pragma once

#include <vector>

#include "stochorder/dist.hpp"
#include "stochorder/verdict.hpp"

namespace stochorder {

// Sufficient conditions on a finite joint law of (W, Z) under which W + Z is
// dominated by W. All sums are exact; boundary values (= 0) satisfy the
// non-strict inequalities.
//
// Only W-atoms need checking: x -> E[Z | W <= x] is constant between
// consecutive W-atoms, and x is relevant iff P(W <= x) > 0, i.e. x >= min W.

// Sorted distinct W-atoms.
std::vector<Rational> relevant_thresholds(const JointDist& j);

// E[Z | W <= x] <= 0 for every relevant x. Witness: threshold_x with
// lhs = E[Z | W <= x], rhs = 0.
OrderVerdict cond_new(const JointDist& j);

// E[Z | W = w] <= 0 for every W-atom w (the supermartingale condition).
OrderVerdict cond_classic(const JointDist& j);

// E[Z | W >= x] >= 0 for every relevant x. Witness lhs = E[Z | W >= x].
OrderVerdict cond_icx(const JointDist& j);

// E[Z] = 0 together with cond_new. The upper-tail form (E[Z] = 0 with
// cond_icx) is evaluated as well; the two must agree, otherwise
// std::logic_error. A nonzero mean is reported at x = max W with lhs = E[Z].
OrderVerdict cond_cx_pair(const JointDist& j);

// Atoms (y, z, p): E[Z | Y - Z <= x] <= 0 at every atom x of Y - Z.
OrderVerdict cond_theorem2(const JointDist& y_and_z);

struct Theorem2Certificate {
  OrderVerdict condition;  // cond_theorem2
  bool mean_zero = false;
  // E[Z] = 0 and the condition: then law(Y - Z) <=cx law(Y).
  bool certifies_cx = false;
};
Theorem2Certificate theorem2_certificate(const JointDist& y_and_z);

struct WeightedPair {
  Rational a;
  Rational b;
  Rational prob;
};

// No two positive-mass atoms with (a - a')(b - b') < 0.
bool is_comonotone(const std::vector<WeightedPair>& pairs);

}  // namespace stochorder
