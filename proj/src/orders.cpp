#include "stochorder/orders.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stochorder/normal.hpp"
#include "stochorder/risk.hpp"

namespace stochorder {

namespace {

// Cumulative probabilities of both laws, merged, within [lo, hi].
std::vector<Rational> merged_levels(const DiscreteDist& x, const DiscreteDist& y) {
  std::vector<Rational> levels{Rational{0}};
  for (const auto* d : {&x, &y}) {
    Rational cum{0};
    for (const auto& a : d->atoms()) {
      cum += a.prob;
      levels.push_back(cum);
    }
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

std::vector<Rational> merged_values(const DiscreteDist& x, const DiscreteDist& y) {
  std::vector<Rational> values;
  values.reserve(x.size() + y.size());
  for (const auto& a : x.atoms()) values.push_back(a.value);
  for (const auto& a : y.atoms()) values.push_back(a.value);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

// ES dominance of x over y at every merged level in [0,1). phi is linear
// between consecutive levels and both phis vanish at 1, so this is exhaustive.
OrderVerdict icx_by_es(const DiscreteDist& x, const DiscreteDist& y) {
  PhiEnvelope phi_x(x), phi_y(y);
  for (const auto& p : merged_levels(x, y)) {
    if (p == 1) break;
    Rational lhs = phi_x(p) / (1 - p);
    Rational rhs = phi_y(p) / (1 - p);
    if (lhs < rhs) return OrderVerdict::fail({WitnessKind::level_p, p, lhs, rhs});
  }
  return OrderVerdict::pass();
}

OrderVerdict ssd_by_integrated_quantiles(const DiscreteDist& x, const DiscreteDist& y) {
  PhiEnvelope phi_x(x), phi_y(y);
  Rational mean_x = phi_x.breakpoints().front().value;
  Rational mean_y = phi_y.breakpoints().front().value;
  for (const auto& p : merged_levels(x, y)) {
    if (p == 0) continue;
    Rational lhs = mean_x - phi_x(p);
    Rational rhs = mean_y - phi_y(p);
    if (lhs < rhs) return OrderVerdict::fail({WitnessKind::level_p, p, lhs, rhs});
  }
  return OrderVerdict::pass();
}

struct Pairing {
  std::optional<DiscreteDist> dx, dy;
  const Normal* nx = nullptr;
  const Normal* ny = nullptr;
};

std::optional<DiscreteDist> finite_form(const Distribution& d) {
  if (const auto* dd = std::get_if<DiscreteDist>(&d)) return *dd;
  return as_discrete(std::get<ParamDist>(d));
}

const Normal* normal_form(const Distribution& d) {
  if (const auto* p = std::get_if<ParamDist>(&d)) return p->as<Normal>();
  return nullptr;
}

Pairing resolve(const Distribution& x, const Distribution& y) {
  Pairing out;
  out.dx = finite_form(x);
  out.dy = finite_form(y);
  if (out.dx && out.dy) return out;
  out.nx = normal_form(x);
  out.ny = normal_form(y);
  if (out.nx && out.ny) return out;
  throw UnsupportedPairing(
      "order checks need two finitely supported laws or two normal laws; "
      "discretize explicitly to compare other kinds");
}

// At a common level p = Phi(z) both laws share the standard quantile z, so
//   int_0^p Q_X - int_0^p Q_Y = p (dmu + dsigma E[N | N <= z])
//   ES_p(X) - ES_p(Y)        =    dmu + dsigma E[N | N >= z]
// with N standard normal. E[N | N <= z] < z and E[N | N >= z] > z, which gives
// a violating z in closed form. Past |z| = 37 the level is not representable
// in binary64; the witness then carries the tail-mean bounds mu + sigma z and
// a level rounded to 0 or 1.
constexpr double kTailLimit = 37.0;

OrderVerdict normal_icx(const Normal& x, const Normal& y) {
  // X >=icx Y iff mu_X >= mu_Y and sigma_X >= sigma_Y.
  if (x.mu < y.mu) return OrderVerdict::fail_inexact(WitnessKind::level_p, 0.0, x.mu, y.mu);
  if (x.sigma < y.sigma) {
    const double z = std::max(1.0, (x.mu - y.mu) / (y.sigma - x.sigma)) + 1.0;
    const double p = normal::cdf(z);
    const double tail = z < kTailLimit ? normal::upper_tail_mean(z) : z;
    return OrderVerdict::fail_inexact(WitnessKind::level_p, p, x.mu + x.sigma * tail,
                                      y.mu + y.sigma * tail);
  }
  return OrderVerdict::pass();
}

OrderVerdict normal_ssd(const Normal& x, const Normal& y) {
  // X >=ssd Y iff mu_X >= mu_Y and sigma_X <= sigma_Y.
  if (x.mu < y.mu) return OrderVerdict::fail_inexact(WitnessKind::level_p, 1.0, x.mu, y.mu);
  if (x.sigma > y.sigma) {
    const double z = -std::max(1.0, (x.mu - y.mu) / (x.sigma - y.sigma)) - 1.0;
    if (z > -kTailLimit) {
      const double p = normal::cdf(z);
      const double tail = normal::lower_tail_mean(z);
      return OrderVerdict::fail_inexact(WitnessKind::level_p, p, p * (x.mu + x.sigma * tail),
                                        p * (y.mu + y.sigma * tail));
    }
    return OrderVerdict::fail_inexact(WitnessKind::level_p, 0.0, x.mu + x.sigma * z,
                                      y.mu + y.sigma * z);
  }
  return OrderVerdict::pass();
}

constexpr double kNormalMeanTolerance = 1e-12;

}  // namespace

// --- discrete routes -------------------------------------------------------------

OrderVerdict check_icx(const DiscreteDist& x, const DiscreteDist& y) { return icx_by_es(x, y); }

OrderVerdict check_ssd(const DiscreteDist& x, const DiscreteDist& y) {
  OrderVerdict by_es = icx_by_es(negate(y), negate(x));
  OrderVerdict by_iq = ssd_by_integrated_quantiles(x, y);
  if (by_es.holds != by_iq.holds)
    throw std::logic_error("ssd routes disagree: ES of negated laws vs integrated quantiles");
  return by_iq;
}

OrderVerdict check_cx(const DiscreteDist& x, const DiscreteDist& y) {
  OrderVerdict ssd = check_ssd(x, y);
  if (!ssd.holds) return ssd;
  Rational mx = mean(x), my = mean(y);
  if (mx != my) return OrderVerdict::fail({WitnessKind::level_p, Rational{1}, mx, my});
  return ssd;
}

OrderVerdict check_st(const DiscreteDist& x, const DiscreteDist& y) {
  // Survival functions are constant between atoms; below every atom both are 1.
  for (const auto& t : merged_values(x, y)) {
    Rational lhs = survival(x, t);
    Rational rhs = survival(y, t);
    if (lhs < rhs) return OrderVerdict::fail({WitnessKind::threshold_x, t, lhs, rhs});
  }
  return OrderVerdict::pass();
}

// --- variant front end ---------------------------------------------------------------

OrderVerdict check_icx(const Distribution& x, const Distribution& y) {
  Pairing p = resolve(x, y);
  if (p.dx) return check_icx(*p.dx, *p.dy);
  return normal_icx(*p.nx, *p.ny);
}

OrderVerdict check_ssd(const Distribution& x, const Distribution& y) {
  Pairing p = resolve(x, y);
  if (p.dx) return check_ssd(*p.dx, *p.dy);
  return normal_ssd(*p.nx, *p.ny);
}

OrderVerdict check_cx(const Distribution& x, const Distribution& y) {
  Pairing p = resolve(x, y);
  if (p.dx) return check_cx(*p.dx, *p.dy);
  const Normal& nx = *p.nx;
  const Normal& ny = *p.ny;
  if (std::abs(nx.mu - ny.mu) > kNormalMeanTolerance)
    return OrderVerdict::fail_inexact(WitnessKind::level_p, 1.0, nx.mu, ny.mu);
  // Equal means: compare spreads with the means identified.
  return normal_ssd(Normal{nx.mu, nx.sigma}, Normal{nx.mu, ny.sigma});
}

OrderVerdict check_st(const Distribution& x, const Distribution& y) {
  Pairing p = resolve(x, y);
  if (p.dx) return check_st(*p.dx, *p.dy);
  const Normal& nx = *p.nx;
  const Normal& ny = *p.ny;
  ParamDist px(nx), py(ny);
  auto sf = [](const ParamDist& d, double t) { return 1.0 - cdf(d, t); };
  if (nx.mu < ny.mu) {
    double t = 0.5 * (nx.mu + ny.mu);
    return OrderVerdict::fail_inexact(WitnessKind::threshold_x, t, sf(px, t), sf(py, t));
  }
  if (nx.sigma == ny.sigma) return OrderVerdict::pass();
  // Unequal spreads: the standardized thresholds cross at t*, and beyond it
  // (on the side of the wider law's extra tail) X's survival falls below Y's.
  double inv = 1.0 / nx.sigma - 1.0 / ny.sigma;
  double cross = (nx.mu / nx.sigma - ny.mu / ny.sigma) / inv;
  double step = std::max(nx.sigma, ny.sigma);
  double t = nx.sigma > ny.sigma ? cross - step : cross + step;
  return OrderVerdict::fail_inexact(WitnessKind::threshold_x, t, sf(px, t), sf(py, t));
}

// --- oracles ----------------------------------------------------------------------------

namespace {

Rational expected_min(const DiscreteDist& d, const Rational& t) {
  Rational acc{0};
  for (const auto& a : d.atoms()) acc += (a.value < t ? a.value : t) * a.prob;
  return acc;
}

Rational expected_excess(const DiscreteDist& d, const Rational& t) {
  Rational acc{0};
  for (const auto& a : d.atoms()) {
    if (a.value > t) acc += (a.value - t) * a.prob;
  }
  return acc;
}

template <class Angle>
OrderVerdict angle_oracle(const DiscreteDist& x, const DiscreteDist& y, Angle angle) {
  for (const auto& t : merged_values(x, y)) {
    Rational lhs = angle(x, t);
    Rational rhs = angle(y, t);
    if (lhs < rhs) return OrderVerdict::fail({WitnessKind::angle_t, t, lhs, rhs});
  }
  return OrderVerdict::pass();
}

}  // namespace

OrderVerdict oracle_ssd(const DiscreteDist& x, const DiscreteDist& y) {
  return angle_oracle(x, y, expected_min);
}

OrderVerdict oracle_icx(const DiscreteDist& x, const DiscreteDist& y) {
  return angle_oracle(x, y, expected_excess);
}

}  // namespace stochorder
