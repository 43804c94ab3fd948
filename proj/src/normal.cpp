#include "stochorder/normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stochorder::normal {

double pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double quantile(double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("normal quantile level must lie in (0,1)");
  if (t > 0.5) return -quantile(1.0 - t);  // 1 - t is exact here
  if (t == 0.5) return 0.0;
  // Phi(-38.5) underflows the smallest subnormal, so [-40, 0] brackets every t.
  double lo = -40.0;
  double hi = 0.0;
  for (int i = 0; i < 2000; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (cdf(mid) > t) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double lower_tail_mean(double x) {
  double mass = cdf(x);
  if (mass <= 0.0) throw std::domain_error("conditioning event has probability 0");
  return -pdf(x) / mass;
}

double upper_tail_mean(double x) {
  double mass = cdf(-x);
  if (mass <= 0.0) throw std::domain_error("conditioning event has probability 0");
  return pdf(x) / mass;
}

}  // namespace stochorder::normal
