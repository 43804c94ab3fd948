#include "stochorder/apps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "stochorder/dependence.hpp"
#include "stochorder/normal.hpp"
#include "stochorder/orders.hpp"
#include "stochorder/quadrature.hpp"
#include "stochorder/risk.hpp"

namespace stochorder {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

// --- discretization ---------------------------------------------------------------

DiscreteDist discretize(const ParamDist& d, std::size_t n) {
  if (n < 2) throw InputError("discretization needs at least 2 points");
  const Rational half{1, 2};
  std::vector<Atom> raw;
  raw.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Rational t{static_cast<long>(2 * k - 1), static_cast<long>(2 * n)};
    double value;
    if (const auto* nm = d.as<Normal>()) {
      double z = 0.0;
      if (t < half) {
        z = normal::quantile(to_double(t));
      } else if (t > half) {
        z = -normal::quantile(to_double(1 - t));
      }
      value = nm->mu + nm->sigma * z;
    } else {
      value = quantile_right(d, to_double(t));
    }
    raw.push_back({rational_from_double(value), Rational{1}});
  }
  return DiscreteDist::normalize(std::move(raw));
}

// --- region tables --------------------------------------------------------------------

GaussianRegionReport gaussian_region(const GaussianCase& c) {
  if (!(c.sigma_z > 0)) throw InputError("sigma_z must be positive");
  if (!(c.rho >= -1 && c.rho <= 1)) throw InputError("rho must lie in [-1, 1]");
  GaussianRegionReport out;
  out.analytic.ssd = c.mu_z <= 0 && c.rho >= -c.sigma_z / 2;
  out.analytic.cond_new = c.mu_z <= 0 && c.rho >= 0;
  out.analytic.cond_classic = c.mu_z <= 0 && c.rho == 0;

  const double slope = c.rho * c.sigma_z;
  double grid_max = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 1600; ++k) {
    double x = (k - 800) / 100.0;
    grid_max = std::max(grid_max, c.mu_z + slope * normal::lower_tail_mean(x));
  }
  out.grid_max = grid_max;
  // sup_x E[W | W <= x] = 0 (x -> inf); inf_x E[W | W <= x] = -inf (x -> -inf).
  const bool upper_limit_ok = c.mu_z <= 0;
  const bool lower_limit_ok = slope >= 0;
  out.cond_new_numeric = grid_max <= 1e-8 && upper_limit_ok && lower_limit_ok;

  const double var_sum = 1.0 + c.sigma_z * c.sigma_z + 2.0 * c.rho * c.sigma_z;
  if (var_sum > 0) {
    out.ssd_parametric =
        check_ssd(Distribution{ParamDist(Normal{0.0, 1.0})},
                  Distribution{ParamDist(Normal{c.mu_z, std::sqrt(var_sum)})})
            .holds;
  } else {
    out.ssd_parametric = false;  // W + Z degenerate; a normal W never dominates a point
  }
  return out;
}

JointDist bernoulli_joint(const BernoulliCase& c) {
  if (c.rho < -1 || c.rho > 1) throw InputError("rho outside [-1, 1] gives a negative cell mass");
  const Rational both = (1 + c.rho) / 4;  // P(W = 1, W' = 1) = P(W = 0, W' = 0)
  const Rational mixed = Rational{1, 2} - both;
  const Rational one{1}, zero{0};
  return JointDist::normalize({
      {zero, zero - c.c, both},
      {zero, one - c.c, mixed},
      {one, zero - c.c, mixed},
      {one, one - c.c, both},
  });
}

BernoulliRegionReport bernoulli_region(const BernoulliCase& c) {
  JointDist j = bernoulli_joint(c);
  BernoulliRegionReport out;
  out.checked.cond_new = cond_new(j).holds;
  out.checked.cond_classic = cond_classic(j).holds;
  out.checked.ssd = check_ssd(joint_marginal_w(j), joint_sum(j)).holds;

  const Rational half{1, 2};
  const bool c_ok = c.c >= half;
  const bool lower = 1 - 2 * c.c <= c.rho;
  const bool upper = c.rho <= 2 * c.c - 1;
  out.analytic.cond_classic = c_ok && lower && upper;
  out.analytic.cond_new = c_ok && lower;
  out.analytic.ssd = c_ok && lower;
  return out;
}

// --- stochastic improvers ---------------------------------------------------------------

ImproverReport improver_check(const JointDist& x_and_z) {
  ImproverReport out;
  DiscreteDist x = joint_marginal_w(x_and_z);
  DiscreteDist sum = joint_sum(x_and_z);
  out.s_verdict = check_ssd(sum, x);
  // E[Z | X+Z <= x] >= 0  <=>  E[-Z | W <= x] <= 0 with W = X + Z.
  std::vector<JointAtom> flipped;
  flipped.reserve(x_and_z.size());
  for (const auto& a : x_and_z.atoms()) flipped.push_back({a.w + a.z, -a.z, a.prob});
  out.n_verdict = cond_new(JointDist::normalize(std::move(flipped)));
  if (!out.n_verdict.holds) out.n_verdict.witness->lhs = -out.n_verdict.witness->lhs;
  out.in_S = out.s_verdict.holds;
  out.in_N = out.n_verdict.holds;
  return out;
}

bool prop4_check(const JointDist& x_and_z) {
  std::vector<WeightedPair> pairs;
  pairs.reserve(x_and_z.size());
  for (const auto& a : x_and_z.atoms()) pairs.push_back({a.w, a.w + a.z, a.prob});
  if (!is_comonotone(pairs)) throw InputError("(X, X + Z) is not comonotone");
  ImproverReport r = improver_check(x_and_z);
  return r.in_S == r.in_N;
}

JointDist gaussian_improver_joint(double r, std::size_t n) {
  if (!(r >= -1 && r <= 1)) throw InputError("correlation must lie in [-1, 1]");
  DiscreteDist grid = discretize(ParamDist(Normal{0.0, 1.0}), n);
  const double s = std::sqrt(1.0 - r * r);
  std::vector<JointAtom> raw;
  raw.reserve(grid.size() * grid.size());
  for (const auto& w : grid.atoms()) {
    double wd = to_double(w.value);
    for (const auto& v : grid.atoms()) {
      Rational z = rational_from_double(r * wd + s * to_double(v.value));
      raw.push_back({w.value - z, z, w.prob * v.prob});
    }
  }
  return JointDist::normalize(std::move(raw));
}

// --- indemnity schedules ----------------------------------------------------------------

IndemnitySchedule::IndemnitySchedule(Form form) : form_(std::move(form)) {
  std::visit(Overloaded{
                 [](PiecewiseLinearIndemnity& pl) {
                   if (pl.knots.empty()) throw InputError("indemnity needs at least one knot");
                   if (pl.knots.front().first != 0) {
                     pl.knots.insert(pl.knots.begin(), {Rational{0}, Rational{0}});
                   }
                   for (std::size_t k = 0; k < pl.knots.size(); ++k) {
                     const auto& [x, v] = pl.knots[k];
                     if (x < 0) throw InputError("indemnity knots must be nonnegative");
                     if (k > 0 && x <= pl.knots[k - 1].first)
                       throw InputError("indemnity knots must be strictly increasing");
                     if (v < 0 || v > x)
                       throw InputError("indemnity must satisfy 0 <= I(x) <= x at knot " +
                                        to_string(x));
                   }
                 },
                 [](FixedIndemnity& f) {
                   if (f.amount < 0 || f.amount > f.threshold)
                     throw InputError("fixed indemnity needs 0 <= amount <= threshold");
                 },
                 [](StopLossIndemnity& s) {
                   if (s.deductible < 0) throw InputError("deductible must be nonnegative");
                 },
             },
             form_);
}

Rational IndemnitySchedule::operator()(const Rational& x) const {
  if (x <= 0) return Rational{0};
  return std::visit(Overloaded{
                        [&](const PiecewiseLinearIndemnity& pl) -> Rational {
                          const auto& k = pl.knots;
                          if (x >= k.back().first) return k.back().second;
                          auto it = std::upper_bound(
                              k.begin(), k.end(), x,
                              [](const Rational& v, const auto& knot) { return v < knot.first; });
                          const auto& [x1, y1] = *it;
                          const auto& [x0, y0] = *(it - 1);
                          return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
                        },
                        [&](const FixedIndemnity& f) -> Rational {
                          return x >= f.threshold ? f.amount : Rational{0};
                        },
                        [&](const StopLossIndemnity& s) -> Rational {
                          return x > s.deductible ? Rational(x - s.deductible) : Rational{0};
                        },
                    },
                    form_);
}

double IndemnitySchedule::operator()(double x) const {
  if (x <= 0) return 0.0;
  return std::visit(Overloaded{
                        [&](const PiecewiseLinearIndemnity&) {
                          return to_double((*this)(rational_from_double(x)));
                        },
                        [&](const FixedIndemnity& f) {
                          return x >= to_double(f.threshold) ? to_double(f.amount) : 0.0;
                        },
                        [&](const StopLossIndemnity& s) {
                          return std::max(x - to_double(s.deductible), 0.0);
                        },
                    },
                    form_);
}

bool IndemnitySchedule::is_one_lipschitz() const {
  return std::visit(Overloaded{
                        [](const PiecewiseLinearIndemnity& pl) {
                          for (std::size_t k = 1; k < pl.knots.size(); ++k) {
                            Rational slope = (pl.knots[k].second - pl.knots[k - 1].second) /
                                             (pl.knots[k].first - pl.knots[k - 1].first);
                            if (slope > 1 || slope < -1) return false;
                          }
                          return true;
                        },
                        [](const FixedIndemnity& f) { return f.amount == 0; },
                        [](const StopLossIndemnity&) { return true; },
                    },
                    form_);
}

// --- marketability -------------------------------------------------------------------------

namespace {

std::optional<std::string> premium_warning(double p0, double expected) {
  if (p0 > expected) {
    return "P0 exceeds E[I(X)]: the condition cannot hold at every relevant threshold, since "
           "the lowest threshold conditions on the whole space";
  }
  return std::nullopt;
}

}  // namespace

MarketabilityReport marketable_check(const IndemnitySchedule& indemnity, const DiscreteDist& loss,
                                     const Rational& p0) {
  if (p0 < 0) throw InputError("P0 must be nonnegative");
  if (loss.min() < 0) throw InputError("insurable losses must be nonnegative");

  struct Row {
    Rational retained;  // x - I(x)
    Rational paid;      // I(x)
    Rational prob;
  };
  std::vector<Row> rows;
  rows.reserve(loss.size());
  Rational expected{0};
  for (const auto& a : loss.atoms()) {
    Rational paid = indemnity(a.value);
    expected += paid * a.prob;
    rows.push_back({a.value - paid, std::move(paid), a.prob});
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.retained < b.retained; });

  // E[I | X - I >= x] is constant for x between consecutive retained values,
  // so the distinct retained values are exhaustive. Suffix sums from the top.
  MarketabilityReport out;
  out.expected_indemnity = to_double(expected);
  out.warning = premium_warning(to_double(p0), out.expected_indemnity);
  Rational mass{0}, paid_mass{0};
  std::optional<Witness> lowest;
  for (std::size_t k = rows.size(); k-- > 0;) {
    mass += rows[k].prob;
    paid_mass += rows[k].paid * rows[k].prob;
    if (k > 0 && rows[k - 1].retained == rows[k].retained) continue;
    Rational cond = paid_mass / mass;
    if (cond < p0) lowest = Witness{WitnessKind::threshold_x, rows[k].retained, cond, p0};
  }
  out.verdict = lowest ? OrderVerdict::fail(*lowest) : OrderVerdict::pass();
  return out;
}

double exp_fixed_conditional_indemnity(const Exponential& loss, const FixedIndemnity& indemnity,
                                       double x) {
  const double rate = loss.rate;
  const double tau = to_double(indemnity.threshold);
  const double amount = to_double(indemnity.amount);
  // X - I(X) >= 0 always, so x <= 0 conditions on the whole space.
  if (x <= 0) return amount * std::exp(-rate * tau);
  const double paid = std::exp(-rate * std::max(tau, x + amount));  // P(X >= tau, X - a >= x)
  const double unpaid = x < tau ? std::exp(-rate * x) - std::exp(-rate * tau) : 0.0;
  const double mass = paid + unpaid;
  if (mass <= 0) throw IrrelevantThreshold("P(X - I(X) >= x) underflows to 0");
  return amount * paid / mass;
}

MarketabilityReport marketable_check(const IndemnitySchedule& indemnity, const Exponential& loss,
                                     double p0) {
  if (!(p0 >= 0)) throw InputError("P0 must be nonnegative");
  const auto* fixed = std::get_if<FixedIndemnity>(&indemnity.form());
  if (!fixed) {
    throw InputError("closed form exists for fixed indemnities only; discretize the loss instead");
  }
  [[maybe_unused]] const ParamDist validated{loss};
  // The conditional mean is nondecreasing in x: constant (= E[I]) for x <= 0,
  // increasing on (0, threshold), and equal to 1 * amount beyond. Its infimum is
  // therefore attained at x = 0.
  MarketabilityReport out;
  const double floor = exp_fixed_conditional_indemnity(loss, *fixed, 0.0);
  out.expected_indemnity = floor;
  out.warning = premium_warning(p0, floor);
  out.verdict = floor >= p0 ? OrderVerdict::pass()
                            : OrderVerdict::fail_inexact(WitnessKind::threshold_x, 0.0, floor, p0);
  return out;
}

// --- utilities and premiums ------------------------------------------------------------------

Utility Utility::parse(std::string_view text) {
  auto number = [&](std::string_view s) {
    try {
      std::size_t used = 0;
      double v = std::stod(std::string(s), &used);
      if (used != s.size()) throw InputError("");
      return v;
    } catch (const std::exception&) {
      throw InputError("malformed utility parameter in '" + std::string(text) + "'");
    }
  };
  if (text == "linear") return {Kind::linear, 0.0};
  if (text.starts_with("exp:")) {
    double a = number(text.substr(4));
    if (!(a > 0)) throw InputError("exponential utility needs a > 0");
    return {Kind::exponential, a};
  }
  if (text.starts_with("power:")) {
    double g = number(text.substr(6));
    if (!(g > 0)) throw InputError("power utility needs gamma > 0");
    return {Kind::power, g};
  }
  throw InputError("unknown utility '" + std::string(text) + "' (linear, exp:a, power:gamma)");
}

std::string Utility::to_string() const {
  switch (kind) {
    case Kind::linear:
      return "linear";
    case Kind::exponential:
      return "exp:" + std::to_string(param);
    case Kind::power:
      return "power:" + std::to_string(param);
  }
  return "?";
}

double Utility::operator()(double x) const {
  switch (kind) {
    case Kind::linear:
      return x;
    case Kind::exponential:
      return -std::expm1(-param * x) / param;
    case Kind::power:
      if (x <= 0) return -std::numeric_limits<double>::infinity();
      if (param == 1.0) return std::log(x);
      return std::pow(x, 1.0 - param) / (1.0 - param);
  }
  return x;
}

double indifference_premium(const Utility& u, double wealth, const DiscreteDist& loss,
                            const IndemnitySchedule& indemnity) {
  if (loss.min() < 0) throw InputError("insurable losses must be nonnegative");
  std::vector<double> insured, uninsured, prob;
  Rational expected{0};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& a : loss.atoms()) {
    Rational paid = indemnity(a.value);
    expected += paid * a.prob;
    double x = to_double(a.value), i = to_double(paid);
    insured.push_back(wealth - x + i);
    uninsured.push_back(wealth - x);
    prob.push_back(to_double(a.prob));
    lo = std::min(lo, i);
    hi = std::max(hi, i);
  }
  if (u.kind == Utility::Kind::linear) return to_double(expected);
  if (lo == hi) return lo;  // a constant payment is worth exactly itself

  // gap(P) > 0 iff the insured position at price P is strictly preferred.
  std::function<double(double)> gap;
  if (u.kind == Utility::Kind::exponential) {
    // Compare log E[exp(-a Y)] to stay finite for large a * wealth.
    auto log_mgf = [&](const std::vector<double>& y, double shift) {
      double m = -std::numeric_limits<double>::infinity();
      for (double v : y) m = std::max(m, -u.param * (v - shift));
      double s = 0.0;
      for (std::size_t k = 0; k < y.size(); ++k) s += prob[k] * std::exp(-u.param * (y[k] - shift) - m);
      return m + std::log(s);
    };
    const double base = log_mgf(uninsured, 0.0);
    gap = [=](double p) { return base - log_mgf(insured, p); };
  } else {
    for (double v : uninsured) {
      if (v <= 0) throw InputError("power utility needs wealth - loss > 0 on every atom");
    }
    double base = 0.0;
    for (std::size_t k = 0; k < uninsured.size(); ++k) base += prob[k] * u(uninsured[k]);
    gap = [&, base](double p) {
      double acc = 0.0;
      for (std::size_t k = 0; k < insured.size(); ++k) acc += prob[k] * u(insured[k] - p);
      return acc - base;
    };
  }

  // The root lies in [min I, max I]: at min I the insured position dominates
  // pointwise, at max I it is dominated.
  double g_lo = gap(lo), g_hi = gap(hi);
  if (std::isnan(g_lo) || std::isnan(g_hi)) throw std::runtime_error("premium bracket evaluation failed");
  if (g_lo <= 0) return lo;
  if (g_hi >= 0) return hi;
  for (int iter = 0; iter < 200 && hi - lo > 1e-10; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (gap(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// --- stop-loss comparison ------------------------------------------------------------------------

StopLossReport stop_loss_compare(const JointDist& x_and_z,
                                 const std::optional<std::vector<Rational>>& deductibles) {
  DiscreteDist x = joint_marginal_w(x_and_z);
  if (x.min() < 0) throw InputError("stop-loss comparison needs a nonnegative loss X");
  DiscreteDist sum = joint_sum(x_and_z);

  std::vector<Rational> grid;
  if (deductibles) {
    grid = *deductibles;
    for (const auto& d : grid) {
      if (d < 0) throw InputError("deductibles must be nonnegative");
    }
  } else {
    grid.push_back(Rational{0});
    for (const auto* d : {&x, &sum}) {
      for (const auto& a : d->atoms()) {
        if (a.value >= 0) grid.push_back(a.value);
      }
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  StopLossReport out;
  out.condition = cond_icx(x_and_z);
  for (auto& d : grid) {
    Rational px = stop_loss(x, d);
    Rational ps = stop_loss(sum, d);
    if (ps < px) out.dominates = false;
    out.rows.push_back({std::move(d), std::move(px), std::move(ps)});
  }
  return out;
}

// --- protective put ------------------------------------------------------------------------------

double bs_put(double spot, double strike, double sigma, double tau) {
  if (tau <= 0) return std::max(strike - spot, 0.0);
  const double sd = sigma * std::sqrt(tau);
  const double d1 = (std::log(spot / strike) + 0.5 * sd * sd) / sd;
  const double d2 = d1 - sd;
  return strike * normal::cdf(-d2) - spot * normal::cdf(-d1);
}

double bs_put(const BSParams& params, double t, double spot_t) {
  return bs_put(spot_t, params.strike, params.sigma, params.horizon - t);
}

ProtectivePutReport protective_put_check(const BSParams& p, double t, std::size_t grid_points) {
  if (!(p.spot > 0 && p.strike > 0 && p.sigma > 0 && p.horizon > 0))
    throw InputError("spot, strike, sigma and horizon must be positive");
  if (p.drift > 0)
    throw InputError("the protective-put argument assumes a nonpositive return rate (drift <= 0)");
  if (!(t >= 0 && t < p.horizon)) throw InputError("evaluation time must lie in [0, horizon)");
  if (grid_points < 2) throw InputError("need at least 2 grid points");

  ProtectivePutReport out;
  out.p0 = bs_put(p.spot, p.strike, p.sigma, p.horizon);
  const double tau = p.horizon - t;
  const double vol_t = p.sigma * std::sqrt(t);
  const double drift_t = (p.drift - 0.5 * p.sigma * p.sigma) * t;
  auto spot_at = [&](double u) { return p.spot * std::exp(drift_t + vol_t * u); };
  auto put_at = [&](double u) { return bs_put(spot_at(u), p.strike, p.sigma, tau); };
  auto wealth_at = [&](double u) { return spot_at(u) + put_at(u) - out.p0; };

  // Monotonicity in the generator (equivalently in X_t).
  out.put_decreasing = true;
  out.wealth_increasing = true;
  for (int k = 0; k < 320; ++k) {
    double u0 = -8.0 + 0.05 * k, u1 = u0 + 0.05;
    if (put_at(u1) > put_at(u0) + 1e-15) out.put_decreasing = false;
    if (wealth_at(u1) < wealth_at(u0) - 1e-15) out.wealth_increasing = false;
  }

  if (t == 0) {
    // X_0 = S_0 and Z_0 = 0 deterministically.
    out.expected_pt = out.p0;
    out.points.push_back({p.spot, 0.0});
    out.verdict = OrderVerdict::pass();
    return out;
  }

  const GaussLegendre rule(200);
  constexpr double kSpan = 12.0;
  auto gaussian_mass = [&](const std::function<double(double)>& f, double a, double b) {
    return rule.integrate([&](double u) { return f(u) * normal::pdf(u); }, a, b);
  };
  out.expected_pt = gaussian_mass(put_at, -kSpan, kSpan) / gaussian_mass([](double) { return 1.0; }, -kSpan, kSpan);
  const double mean_w = gaussian_mass(wealth_at, -kSpan, kSpan);
  const double second_w = gaussian_mass([&](double u) { double w = wealth_at(u); return w * w; }, -kSpan, kSpan);
  const double sd_w = std::sqrt(std::max(second_w - mean_w * mean_w, 0.0));

  double worst = std::numeric_limits<double>::infinity();
  double worst_x = 0.0;
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double x = mean_w - 5.0 * sd_w + 10.0 * sd_w * static_cast<double>(k) / static_cast<double>(grid_points - 1);
    // {X_t + Z_t <= x} = {U <= u*} since wealth is increasing in U.
    double lo = -kSpan, hi = kSpan;
    if (wealth_at(lo) >= x) {
      ++out.irrelevant_points;
      continue;
    }
    double u_star = hi;
    if (wealth_at(hi) > x) {
      for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (wealth_at(mid) <= x) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      u_star = lo;
    }
    const double a = std::min(-kSpan, u_star - 10.0);
    const double mass = gaussian_mass([](double) { return 1.0; }, a, u_star);
    if (!(mass > 0)) {
      ++out.irrelevant_points;
      continue;
    }
    const double cond = gaussian_mass([&](double u) { return put_at(u) - out.p0; }, a, u_star) / mass;
    out.points.push_back({x, cond});
    if (cond < worst) {
      worst = cond;
      worst_x = x;
    }
  }

  constexpr double kFloor = -1e-9;
  if (!out.points.empty() && worst < kFloor) {
    out.verdict = OrderVerdict::fail_inexact(WitnessKind::threshold_x, worst_x, worst, 0.0);
  } else if (out.expected_pt - out.p0 < kFloor) {
    // x -> inf: the condition reduces to E[P_t] - P_0 >= 0.
    out.verdict = OrderVerdict::fail_inexact(WitnessKind::threshold_x,
                                             std::numeric_limits<double>::max(),
                                             out.expected_pt - out.p0, 0.0);
  } else {
    out.verdict = OrderVerdict::pass();
  }
  return out;
}

}  // namespace stochorder
