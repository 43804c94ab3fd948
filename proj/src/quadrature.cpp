#include "stochorder/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stochorder {

GaussLegendre::GaussLegendre(std::size_t n) : nodes_(n), weights_(n) {
  if (n == 0) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  // Newton iteration on P_n from the Chebyshev-like initial guesses; roots
  // are symmetric so only the upper half is computed.
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[n - 1 - i] = x;
    nodes_[i] = -x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
}

double GaussLegendre::integrate(const std::function<double(double)>& f, double a, double b) const {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(mid + half * nodes_[i]);
  return half * acc;
}

}  // namespace stochorder
