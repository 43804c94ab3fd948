#pragma once

#include "stochorder/dist.hpp"
#include "stochorder/verdict.hpp"

namespace stochorder {

// Raised when two laws cannot be compared exactly (e.g. a discrete law against
// a normal one). Use an explicit discretization first.
class UnsupportedPairing : public InputError {
 public:
  using InputError::InputError;
};

// Decision procedures. Supported pairings: both finitely supported (discrete,
// point mass, Bernoulli; decided exactly at the merged breakpoints of both
// laws) or both normal (closed-form parameter criteria). Ties count as holding.
//
// Witness conventions on failure:
//   check_icx  level_p      lhs = ES_p(X),          rhs = ES_p(Y),          lhs < rhs
//   check_ssd  level_p      lhs = int_0^p Q_X,      rhs = int_0^p Q_Y,      lhs < rhs
//   check_cx   level_p      as check_ssd; at p = 1 the two means, which must be equal
//   check_st   threshold_x  lhs = P(X > x),         rhs = P(Y > x),         lhs < rhs
// Normal-route witnesses are inexact. When the violating level lies beyond
// binary64 resolution (p < Phi(-37) or p > Phi(37)) the level is reported as 0
// or 1 and lhs/rhs are the bounds mu + sigma z on the conditional tail means.

// X >=icx Y.
OrderVerdict check_icx(const Distribution& x, const Distribution& y);
// X >=ssd Y. The discrete route decides it twice (ES of the negated laws and
// integrated quantiles) and throws std::logic_error if the routes disagree.
OrderVerdict check_ssd(const Distribution& x, const Distribution& y);
// X <=cx Y.
OrderVerdict check_cx(const Distribution& x, const Distribution& y);
// X >=st Y.
OrderVerdict check_st(const Distribution& x, const Distribution& y);

OrderVerdict check_icx(const DiscreteDist& x, const DiscreteDist& y);
OrderVerdict check_ssd(const DiscreteDist& x, const DiscreteDist& y);
OrderVerdict check_cx(const DiscreteDist& x, const DiscreteDist& y);
OrderVerdict check_st(const DiscreteDist& x, const DiscreteDist& y);

// Brute-force oracles over the angle-function families, sharing no code with
// the ES machinery. Both sides are piecewise linear in t with kinks only at
// atoms, so the union of supports is an exhaustive set of test points.
//   oracle_ssd: E[min(X,t)] >= E[min(Y,t)]  for all t   (witness angle_t)
//   oracle_icx: E[(X-t)_+]  >= E[(Y-t)_+]   for all t   (witness angle_t)
OrderVerdict oracle_ssd(const DiscreteDist& x, const DiscreteDist& y);
OrderVerdict oracle_icx(const DiscreteDist& x, const DiscreteDist& y);

}  // namespace stochorder
