#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stochorder/dist.hpp"
#include "stochorder/verdict.hpp"

namespace stochorder {

// Equal-probability n-point discretization of a parametric law: atoms at the
// right quantiles of the midpoints (2k-1)/(2n). An approximation; never
// applied implicitly. Normal atoms are exactly symmetric about mu.
DiscreteDist discretize(const ParamDist& d, std::size_t n);

// --- region tables for W + Z <=ssd W ------------------------------------------

struct RegionVerdict {
  bool ssd = false;
  bool cond_new = false;
  bool cond_classic = false;
  bool operator==(const RegionVerdict&) const = default;
};

// (W, Z) jointly normal with W ~ N(0,1), Z ~ N(mu_z, sigma_z^2), correlation rho.
struct GaussianCase {
  double mu_z = 0.0;
  double sigma_z = 1.0;
  double rho = 0.0;
};

struct GaussianRegionReport {
  RegionVerdict analytic;
  // mu_z + rho sigma_z E[W | W <= x] <= 1e-8 on the grid x in [-8, 8] step
  // 0.01, together with the two limits x -> +inf (value mu_z) and x -> -inf
  // (unbounded when rho sigma_z < 0).
  bool cond_new_numeric = false;
  double grid_max = 0.0;
  // check_ssd(N(0,1), law of W + Z) with the normal parameter criterion.
  bool ssd_parametric = false;
};

GaussianRegionReport gaussian_region(const GaussianCase& c);

// W ~ Bernoulli(1/2), Z = W' - c with W' ~ Bernoulli(1/2) and
// P(W = W' = 1) = (1 + rho)/4.
struct BernoulliCase {
  Rational c;
  Rational rho;
};

struct BernoulliRegionReport {
  RegionVerdict checked;   // cond_new / cond_classic / check_ssd on the exact joint
  RegionVerdict analytic;  // closed-form region formulas
};

// Throws InputError when rho lies outside [-1, 1] (a negative cell mass).
JointDist bernoulli_joint(const BernoulliCase& c);
BernoulliRegionReport bernoulli_region(const BernoulliCase& c);

// --- stochastic improvers ---------------------------------------------------------

struct ImproverReport {
  bool in_S = false;  // X + Z >=ssd X
  bool in_N = false;  // E[Z | X + Z <= x] >= 0 for all relevant x
  OrderVerdict s_verdict;
  OrderVerdict n_verdict;
};

// Atoms (x, z, p) of the pair (X, Z).
ImproverReport improver_check(const JointDist& x_and_z);

// For (X, X + Z) comonotone, membership in S and N coincide; returns whether
// they do. Throws InputError when the pair is not comonotone.
bool prop4_check(const JointDist& x_and_z);

// (X, Z) with X = W - Z, W ~ N(0,1) and Z = r W + sqrt(1 - r^2) V, W and V
// independent, each replaced by its n-point discretization. X + Z = W exactly.
JointDist gaussian_improver_joint(double r, std::size_t n);

// --- indemnity schedules and marketability -----------------------------------------

// Linear interpolation between knots starting at (0, 0), constant after the
// last knot.
struct PiecewiseLinearIndemnity {
  std::vector<std::pair<Rational, Rational>> knots;
};
// amount * 1{x >= threshold}
struct FixedIndemnity {
  Rational threshold;
  Rational amount;
};
// (x - deductible)_+
struct StopLossIndemnity {
  Rational deductible;
};

class IndemnitySchedule {
 public:
  using Form = std::variant<PiecewiseLinearIndemnity, FixedIndemnity, StopLossIndemnity>;

  // Validates 0 <= I(x) <= x on [0, inf): at the knots for piecewise forms
  // (sufficient by linearity), analytically for the built-ins.
  IndemnitySchedule(Form form);  // NOLINT(google-explicit-constructor)

  const Form& form() const { return form_; }
  Rational operator()(const Rational& x) const;
  double operator()(double x) const;
  bool is_one_lipschitz() const;

 private:
  Form form_;
};

struct MarketabilityReport {
  // E[I(X) | X - I(X) >= x] >= P0 for all relevant x. Witness threshold_x
  // with lhs the conditional mean and rhs = P0.
  OrderVerdict verdict;
  double expected_indemnity = 0.0;
  std::optional<std::string> warning;  // set when P0 > E[I(X)]
};

// Exact check at the atoms of X - I(X). Requires X >= 0.
MarketabilityReport marketable_check(const IndemnitySchedule& indemnity, const DiscreteDist& loss,
                                     const Rational& p0);

// Exponential loss with a fixed indemnity, in closed form. Other schedules
// throw InputError (discretize the loss instead).
MarketabilityReport marketable_check(const IndemnitySchedule& indemnity, const Exponential& loss,
                                     double p0);

// E[I(X) | X - I(X) >= x] for X ~ Exp(rate) and I = amount * 1{X >= threshold}.
double exp_fixed_conditional_indemnity(const Exponential& loss, const FixedIndemnity& indemnity,
                                       double x);

// --- indifference premium --------------------------------------------------------------

struct Utility {
  enum class Kind { linear, exponential, power };
  Kind kind = Kind::linear;
  double param = 0.0;  // absolute risk aversion a, or relative risk aversion gamma

  // "linear", "exp:<a>", "power:<gamma>".
  static Utility parse(std::string_view text);
  std::string to_string() const;
  double operator()(double wealth) const;
};

// Root P* of E[u(w - X + I(X) - P)] = E[u(w - X)], by bisection on
// [min I(X), max I(X)] to 1e-10. Linear utility returns E[I(X)] directly.
double indifference_premium(const Utility& u, double wealth, const DiscreteDist& loss,
                            const IndemnitySchedule& indemnity);

// --- stop-loss comparison ------------------------------------------------------------------

struct StopLossRow {
  Rational deductible;
  Rational premium_x;
  Rational premium_sum;
};

struct StopLossReport {
  OrderVerdict condition;  // cond_icx on (X, Z)
  std::vector<StopLossRow> rows;
  bool dominates = true;   // premium_sum >= premium_x on every row
};

// Atoms (x, z, p) with X >= 0. Without explicit deductibles the grid is 0
// plus every nonnegative atom of X and X + Z (the kinks of both premiums).
StopLossReport stop_loss_compare(const JointDist& x_and_z,
                                 const std::optional<std::vector<Rational>>& deductibles = {});

// --- protective put ---------------------------------------------------------------------------

struct BSParams {
  double spot = 1.0;
  double strike = 1.0;
  double sigma = 0.2;
  double drift = 0.0;  // real-world return rate, must be <= 0
  double horizon = 1.0;
};

// Zero-rate Black-Scholes put with time to maturity tau.
double bs_put(double spot, double strike, double sigma, double tau);
// Time-t price of the put maturing at params.horizon.
double bs_put(const BSParams& params, double t, double spot_t);

struct ConditionalPoint {
  double x;
  double conditional_mean;  // E[Z_t | X_t + Z_t <= x]
};

struct ProtectivePutReport {
  OrderVerdict verdict;
  double p0 = 0.0;
  double expected_pt = 0.0;              // E[P_t] under the real-world law
  std::vector<ConditionalPoint> points;  // relevant grid points only
  std::size_t irrelevant_points = 0;     // grid points below inf(X_t + Z_t)
  bool put_decreasing = false;
  bool wealth_increasing = false;
};

// Z_t = P_t - P_0. Checks E[Z_t | X_t + Z_t <= x] >= -1e-9 on a grid of
// `grid_points` values spanning +-5 standard deviations of X_t + Z_t, and
// E[P_t] >= P_0 - 1e-9, by 200-node Gauss-Legendre quadrature in the
// Gaussian generator of X_t. Throws InputError for drift > 0.
ProtectivePutReport protective_put_check(const BSParams& params, double t,
                                         std::size_t grid_points = 101);

}  // namespace stochorder
