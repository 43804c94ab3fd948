#pragma once

#include <vector>

#include "stochorder/dist.hpp"

namespace stochorder {

struct PhiBreakpoint {
  Rational p;
  Rational value;
};

// The map p -> (1-p) ES_p(X) on [0,1] for a discrete law: continuous,
// concave and piecewise linear with kinks at the cumulative probabilities of
// the atoms. On [F(x_{k-1}), F(x_k)] the slope is -x_k = -Q_X(p).
class PhiEnvelope {
 public:
  explicit PhiEnvelope(const DiscreteDist& d);

  // (0, mean), (F(x_1), .), ..., (1, 0).
  const std::vector<PhiBreakpoint>& breakpoints() const { return breakpoints_; }

  // Slope of piece k, i.e. between breakpoints k and k+1.
  const Rational& slope(std::size_t k) const { return slopes_[k]; }

  // Exact linear interpolation; p must lie in [0,1].
  Rational operator()(const Rational& p) const;

 private:
  std::vector<PhiBreakpoint> breakpoints_;
  std::vector<Rational> slopes_;
};

PhiEnvelope phi_envelope(const DiscreteDist& d);

Rational phi(const DiscreteDist& d, const Rational& p);
double phi(const ParamDist& d, double p);

// Expected Shortfall (1/(1-p)) * integral_p^1 Q_X(t) dt for p in [0,1).
// p = 1 is outside the domain and throws InputError.
Rational es(const DiscreteDist& d, const Rational& p);
double es(const ParamDist& d, double p);

// integral_0^p Q_X(t) dt = mean - phi(p), for p in [0,1].
Rational integrated_quantile(const DiscreteDist& d, const Rational& p);
double integrated_quantile(const ParamDist& d, double p);

// E[(X - deductible)_+].
Rational stop_loss(const DiscreteDist& d, const Rational& deductible);
double stop_loss(const ParamDist& d, double deductible);

// Whether P(X < Q_X(p)) = p; at such levels ES_p equals the upper tail mean
// E[X | X >= Q_X(p)]. Requires 0 < p < 1.
bool is_regular_level(const DiscreteDist& d, const Rational& p);
Rational tail_mean_at_level(const DiscreteDist& d, const Rational& p);

}  // namespace stochorder
