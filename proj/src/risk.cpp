#include "stochorder/risk.hpp"

#include <algorithm>
#include <cmath>

#include "stochorder/normal.hpp"

namespace stochorder {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_es_level(double p) {
  if (!(p >= 0 && p < 1)) throw InputError("ES level must lie in [0,1)");
}

}  // namespace

PhiEnvelope::PhiEnvelope(const DiscreteDist& d) {
  const auto& atoms = d.atoms();
  breakpoints_.reserve(atoms.size() + 1);
  slopes_.reserve(atoms.size());
  Rational upper = mean(d);
  Rational cum{0};
  breakpoints_.push_back({cum, upper});
  for (const auto& a : atoms) {
    cum += a.prob;
    upper -= a.value * a.prob;
    breakpoints_.push_back({cum, upper});
    slopes_.push_back(-a.value);
  }
  // The last value is mean minus every atom's contribution, so exactly 0.
}

Rational PhiEnvelope::operator()(const Rational& p) const {
  if (p < 0 || p > 1) throw InputError("phi level must lie in [0,1]");
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), p,
                             [](const Rational& v, const PhiBreakpoint& b) { return v < b.p; });
  if (it == breakpoints_.end()) return breakpoints_.back().value;  // p == 1
  auto k = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it)) - 1;
  return breakpoints_[k].value + slopes_[k] * (p - breakpoints_[k].p);
}

PhiEnvelope phi_envelope(const DiscreteDist& d) { return PhiEnvelope(d); }

Rational phi(const DiscreteDist& d, const Rational& p) { return PhiEnvelope(d)(p); }

double phi(const ParamDist& d, double p) {
  if (!(p >= 0 && p <= 1)) throw InputError("phi level must lie in [0,1]");
  if (p == 1) return 0.0;
  return (1 - p) * es(d, p);
}

Rational es(const DiscreteDist& d, const Rational& p) {
  if (p < 0 || p >= 1) throw InputError("ES level must lie in [0,1)");
  return PhiEnvelope(d)(p) / (1 - p);
}

double es(const ParamDist& d, double p) {
  check_es_level(p);
  if (p == 0) return mean(d);
  return std::visit(
      Overloaded{
          [&](const Normal& n) { return n.mu + n.sigma * normal::pdf(normal::quantile(p)) / (1 - p); },
          [&](const Exponential& e) { return (1.0 - std::log1p(-p)) / e.rate; },
          [&](const Bernoulli& b) { return (1.0 - std::max(p, 1.0 - b.q)) / (1.0 - p); },
          [&](const LogNormal& l) {
            double m = std::exp(l.mu + 0.5 * l.sigma * l.sigma);
            return m * normal::cdf(l.sigma - normal::quantile(p)) / (1 - p);
          },
          [&](const PointMass& pm) { return pm.c; },
      },
      d.kind());
}

Rational integrated_quantile(const DiscreteDist& d, const Rational& p) {
  return mean(d) - phi(d, p);
}

double integrated_quantile(const ParamDist& d, double p) {
  if (!(p >= 0 && p <= 1)) throw InputError("level must lie in [0,1]");
  if (p == 0) return 0.0;
  if (p == 1) return mean(d);
  if (const auto* n = d.as<Normal>()) {
    // Closed form avoids cancellation in mean - phi for small p.
    return n->mu * p - n->sigma * normal::pdf(normal::quantile(p));
  }
  return mean(d) - phi(d, p);
}

Rational stop_loss(const DiscreteDist& d, const Rational& deductible) {
  Rational acc{0};
  for (const auto& a : d.atoms()) {
    if (a.value > deductible) acc += (a.value - deductible) * a.prob;
  }
  return acc;
}

double stop_loss(const ParamDist& d, double t) {
  return std::visit(
      Overloaded{
          [&](const Normal& n) {
            double z = (n.mu - t) / n.sigma;
            return (n.mu - t) * normal::cdf(z) + n.sigma * normal::pdf(z);
          },
          [&](const Exponential& e) {
            return t >= 0 ? std::exp(-e.rate * t) / e.rate : 1.0 / e.rate - t;
          },
          [&](const Bernoulli& b) {
            return b.q * std::max(1.0 - t, 0.0) + (1.0 - b.q) * std::max(-t, 0.0);
          },
          [&](const LogNormal& l) {
            double m = std::exp(l.mu + 0.5 * l.sigma * l.sigma);
            if (t <= 0) return m - t;
            double d1 = (l.mu + l.sigma * l.sigma - std::log(t)) / l.sigma;
            return m * normal::cdf(d1) - t * normal::cdf(d1 - l.sigma);
          },
          [&](const PointMass& p) { return std::max(p.c - t, 0.0); },
      },
      d.kind());
}

bool is_regular_level(const DiscreteDist& d, const Rational& p) {
  return prob_below(d, quantile_right(d, p)) == p;
}

Rational tail_mean_at_level(const DiscreteDist& d, const Rational& p) {
  return upper_tail_mean(d, quantile_right(d, p));
}

}  // namespace stochorder
