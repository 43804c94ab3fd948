#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace stochorder {

// n-point Gauss-Legendre rule on [-1, 1]; nodes ascending.
class GaussLegendre {
 public:
  explicit GaussLegendre(std::size_t n);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  // Integral of f over [a, b].
  double integrate(const std::function<double(double)>& f, double a, double b) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace stochorder
