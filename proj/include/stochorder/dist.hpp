#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "stochorder/rational.hpp"

namespace stochorder {

// A conditioning event {X <= x} or {X >= x} with probability zero.
class IrrelevantThreshold : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Atom {
  Rational value;
  Rational prob;
  bool operator==(const Atom&) const = default;
};

// Finite real-valued law with exact rational atoms and probabilities.
// Canonical form: values strictly increasing, probabilities positive and
// summing to exactly 1. Only normalize() and the named factories build one.
class DiscreteDist {
 public:
  // Sorts, merges equal values (exact equality), drops zero-mass atoms and
  // rescales to total mass 1. Throws InputError on an empty list, a negative
  // probability or zero total mass.
  static DiscreteDist normalize(std::vector<Atom> raw);

  static DiscreteDist point(const Rational& c);

  // Equal weight on every listed sample point; repeated values merge.
  static DiscreteDist uniform(std::span<const Rational> values);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const Rational& min() const { return atoms_.front().value; }
  const Rational& max() const { return atoms_.back().value; }

  bool operator==(const DiscreteDist&) const = default;

 private:
  explicit DiscreteDist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

struct Normal {
  double mu = 0.0;
  double sigma = 1.0;
  bool operator==(const Normal&) const = default;
};
struct Exponential {
  double rate = 1.0;
  bool operator==(const Exponential&) const = default;
};
struct Bernoulli {
  double q = 0.5;
  bool operator==(const Bernoulli&) const = default;
};
struct LogNormal {
  double mu = 0.0;
  double sigma = 1.0;
  bool operator==(const LogNormal&) const = default;
};
struct PointMass {
  double c = 0.0;
  bool operator==(const PointMass&) const = default;
};

// Tagged parametric law with closed-form CDF, quantile, mean and tail means.
class ParamDist {
 public:
  using Kind = std::variant<Normal, Exponential, Bernoulli, LogNormal, PointMass>;

  // Validates parameter domains (sigma > 0, rate > 0, q in [0,1], finite).
  ParamDist(Kind kind);  // NOLINT(google-explicit-constructor)

  const Kind& kind() const { return kind_; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(&kind_);
  }

  bool operator==(const ParamDist&) const = default;

 private:
  Kind kind_;
};

using Distribution = std::variant<DiscreteDist, ParamDist>;

struct JointAtom {
  Rational w;
  Rational z;
  Rational prob;
  bool operator==(const JointAtom&) const = default;
};

// Finite joint law of a pair (W, Z). Atoms sorted by (w, z), no duplicate
// pairs, positive probabilities summing to 1.
class JointDist {
 public:
  static JointDist normalize(std::vector<JointAtom> raw);

  const std::vector<JointAtom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  bool operator==(const JointDist&) const = default;

 private:
  explicit JointDist(std::vector<JointAtom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<JointAtom> atoms_;
};

// --- discrete primitives (exact) -------------------------------------------

// P(X <= x), right-continuous.
Rational cdf(const DiscreteDist& d, const Rational& x);
// P(X < x).
Rational prob_below(const DiscreteDist& d, const Rational& x);
// P(X > x).
Rational survival(const DiscreteDist& d, const Rational& x);

// Right quantile inf{x : P(X <= x) > t}; always an atom. Requires 0 < t < 1.
Rational quantile_right(const DiscreteDist& d, const Rational& t);

Rational mean(const DiscreteDist& d);

// E[X | X <= x] and E[X | X >= x]. Throw IrrelevantThreshold when the
// conditioning event has probability zero.
Rational lower_tail_mean(const DiscreteDist& d, const Rational& x);
Rational upper_tail_mean(const DiscreteDist& d, const Rational& x);

DiscreteDist negate(const DiscreteDist& d);

// Law of a*X + b.
DiscreteDist affine(const DiscreteDist& d, const Rational& a, const Rational& b);

// --- parametric primitives (binary64) ---------------------------------------

double cdf(const ParamDist& d, double x);
double quantile_right(const ParamDist& d, double t);
double mean(const ParamDist& d);
double variance(const ParamDist& d);
double lower_tail_mean(const ParamDist& d, double x);
double upper_tail_mean(const ParamDist& d, double x);

// Normal and PointMass stay in their family; Bernoulli becomes a two-atom
// discrete law. Exponential and LogNormal have no negated counterpart in the
// family and throw InputError.
Distribution negate(const ParamDist& d);

// PointMass and Bernoulli are finitely supported; their exact discrete form.
std::optional<DiscreteDist> as_discrete(const ParamDist& d);

// --- variant front end -------------------------------------------------------

double cdf(const Distribution& d, double x);
double quantile_right(const Distribution& d, double t);
double mean_value(const Distribution& d);
Distribution negate(const Distribution& d);

// --- joint laws ----------------------------------------------------------------

DiscreteDist joint_marginal_w(const JointDist& j);
DiscreteDist joint_z(const JointDist& j);
// Law of W + Z.
DiscreteDist joint_sum(const JointDist& j);

}  // namespace stochorder
