#include "stochorder/dist.hpp"

#include <algorithm>
#include <cmath>

#include "stochorder/normal.hpp"
#include "stochorder/verdict.hpp"

namespace stochorder {

std::string_view to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::level_p:
      return "level_p";
    case WitnessKind::threshold_x:
      return "threshold_x";
    case WitnessKind::angle_t:
      return "angle_t";
  }
  return "unknown";
}

// --- DiscreteDist ------------------------------------------------------------

DiscreteDist DiscreteDist::normalize(std::vector<Atom> raw) {
  if (raw.empty()) throw InputError("distribution has no atoms");
  Rational total{0};
  for (const auto& a : raw) {
    if (a.prob < 0) throw InputError("negative probability " + to_string(a.prob));
    total += a.prob;
  }
  if (total == 0) throw InputError("total probability mass is zero");

  std::sort(raw.begin(), raw.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });
  std::vector<Atom> out;
  out.reserve(raw.size());
  for (auto& a : raw) {
    if (a.prob == 0) continue;
    if (!out.empty() && out.back().value == a.value) {
      out.back().prob += a.prob;
    } else {
      out.push_back(std::move(a));
    }
  }
  if (total != 1) {
    for (auto& a : out) a.prob /= total;
  }
  return DiscreteDist(std::move(out));
}

DiscreteDist DiscreteDist::point(const Rational& c) { return DiscreteDist({Atom{c, Rational{1}}}); }

DiscreteDist DiscreteDist::uniform(std::span<const Rational> values) {
  std::vector<Atom> raw;
  raw.reserve(values.size());
  for (const auto& v : values) raw.push_back({v, Rational{1}});
  return normalize(std::move(raw));
}

// --- ParamDist -------------------------------------------------------------------

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InputError(what);
}

struct Validate {
  void operator()(const Normal& n) const {
    require(std::isfinite(n.mu) && std::isfinite(n.sigma), "normal parameters must be finite");
    require(n.sigma > 0, "normal sigma must be positive");
  }
  void operator()(const Exponential& e) const {
    require(std::isfinite(e.rate) && e.rate > 0, "exponential rate must be positive");
  }
  void operator()(const Bernoulli& b) const {
    require(b.q >= 0 && b.q <= 1, "bernoulli q must lie in [0,1]");
  }
  void operator()(const LogNormal& l) const {
    require(std::isfinite(l.mu) && std::isfinite(l.sigma), "lognormal parameters must be finite");
    require(l.sigma > 0, "lognormal sigma must be positive");
  }
  void operator()(const PointMass& p) const {
    require(std::isfinite(p.c), "point mass location must be finite");
  }
};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void irrelevant(const char* side) {
  throw IrrelevantThreshold(std::string("irrelevant threshold: P(X ") + side + " x) = 0");
}

}  // namespace

ParamDist::ParamDist(Kind kind) : kind_(std::move(kind)) { std::visit(Validate{}, kind_); }

// --- discrete primitives ------------------------------------------------------------

Rational cdf(const DiscreteDist& d, const Rational& x) {
  Rational acc{0};
  for (const auto& a : d.atoms()) {
    if (a.value > x) break;
    acc += a.prob;
  }
  return acc;
}

Rational prob_below(const DiscreteDist& d, const Rational& x) {
  Rational acc{0};
  for (const auto& a : d.atoms()) {
    if (a.value >= x) break;
    acc += a.prob;
  }
  return acc;
}

Rational survival(const DiscreteDist& d, const Rational& x) { return 1 - cdf(d, x); }

Rational quantile_right(const DiscreteDist& d, const Rational& t) {
  if (!(t > 0 && t < 1)) throw InputError("quantile level must lie in (0,1)");
  Rational acc{0};
  for (const auto& a : d.atoms()) {
    acc += a.prob;
    if (acc > t) return a.value;
  }
  return d.max();  // unreachable: acc reaches 1 > t
}

Rational mean(const DiscreteDist& d) {
  Rational acc{0};
  for (const auto& a : d.atoms()) acc += a.value * a.prob;
  return acc;
}

Rational lower_tail_mean(const DiscreteDist& d, const Rational& x) {
  Rational mass{0}, first{0};
  for (const auto& a : d.atoms()) {
    if (a.value > x) break;
    mass += a.prob;
    first += a.value * a.prob;
  }
  if (mass == 0) irrelevant("<=");
  return first / mass;
}

Rational upper_tail_mean(const DiscreteDist& d, const Rational& x) {
  Rational mass{0}, first{0};
  for (const auto& a : d.atoms()) {
    if (a.value < x) continue;
    mass += a.prob;
    first += a.value * a.prob;
  }
  if (mass == 0) irrelevant(">=");
  return first / mass;
}

DiscreteDist negate(const DiscreteDist& d) { return affine(d, Rational{-1}, Rational{0}); }

DiscreteDist affine(const DiscreteDist& d, const Rational& a, const Rational& b) {
  std::vector<Atom> raw;
  raw.reserve(d.size());
  for (const auto& at : d.atoms()) raw.push_back({a * at.value + b, at.prob});
  return DiscreteDist::normalize(std::move(raw));
}

// --- parametric primitives ----------------------------------------------------------

double cdf(const ParamDist& d, double x) {
  return std::visit(
      Overloaded{
          [&](const Normal& n) { return normal::cdf((x - n.mu) / n.sigma); },
          [&](const Exponential& e) { return x <= 0 ? 0.0 : -std::expm1(-e.rate * x); },
          [&](const Bernoulli& b) { return x < 0 ? 0.0 : (x < 1 ? 1.0 - b.q : 1.0); },
          [&](const LogNormal& l) {
            return x <= 0 ? 0.0 : normal::cdf((std::log(x) - l.mu) / l.sigma);
          },
          [&](const PointMass& p) { return x >= p.c ? 1.0 : 0.0; },
      },
      d.kind());
}

double quantile_right(const ParamDist& d, double t) {
  if (!(t > 0 && t < 1)) throw InputError("quantile level must lie in (0,1)");
  return std::visit(
      Overloaded{
          [&](const Normal& n) { return n.mu + n.sigma * normal::quantile(t); },
          [&](const Exponential& e) { return -std::log1p(-t) / e.rate; },
          [&](const Bernoulli& b) { return t < 1.0 - b.q ? 0.0 : 1.0; },
          [&](const LogNormal& l) { return std::exp(l.mu + l.sigma * normal::quantile(t)); },
          [&](const PointMass& p) { return p.c; },
      },
      d.kind());
}

double mean(const ParamDist& d) {
  return std::visit(Overloaded{
                        [](const Normal& n) { return n.mu; },
                        [](const Exponential& e) { return 1.0 / e.rate; },
                        [](const Bernoulli& b) { return b.q; },
                        [](const LogNormal& l) { return std::exp(l.mu + 0.5 * l.sigma * l.sigma); },
                        [](const PointMass& p) { return p.c; },
                    },
                    d.kind());
}

double variance(const ParamDist& d) {
  return std::visit(Overloaded{
                        [](const Normal& n) { return n.sigma * n.sigma; },
                        [](const Exponential& e) { return 1.0 / (e.rate * e.rate); },
                        [](const Bernoulli& b) { return b.q * (1.0 - b.q); },
                        [](const LogNormal& l) {
                          double s2 = l.sigma * l.sigma;
                          return std::expm1(s2) * std::exp(2.0 * l.mu + s2);
                        },
                        [](const PointMass&) { return 0.0; },
                    },
                    d.kind());
}

double lower_tail_mean(const ParamDist& d, double x) {
  return std::visit(
      Overloaded{
          [&](const Normal& n) {
            double z = (x - n.mu) / n.sigma;
            if (normal::cdf(z) <= 0.0) irrelevant("<=");
            return n.mu + n.sigma * normal::lower_tail_mean(z);
          },
          [&](const Exponential& e) {
            if (x <= 0) irrelevant("<=");
            return 1.0 / e.rate - x / std::expm1(e.rate * x);
          },
          [&](const Bernoulli& b) {
            if (x < 0 || (x < 1 && b.q >= 1.0)) irrelevant("<=");
            return x < 1 ? 0.0 : b.q;
          },
          [&](const LogNormal& l) {
            if (x <= 0) irrelevant("<=");
            double z = (std::log(x) - l.mu) / l.sigma;
            double mass = normal::cdf(z);
            if (mass <= 0.0) irrelevant("<=");
            return std::exp(l.mu + 0.5 * l.sigma * l.sigma) * normal::cdf(z - l.sigma) / mass;
          },
          [&](const PointMass& p) {
            if (x < p.c) irrelevant("<=");
            return p.c;
          },
      },
      d.kind());
}

double upper_tail_mean(const ParamDist& d, double x) {
  return std::visit(
      Overloaded{
          [&](const Normal& n) {
            double z = (x - n.mu) / n.sigma;
            if (normal::cdf(-z) <= 0.0) irrelevant(">=");
            return n.mu + n.sigma * normal::upper_tail_mean(z);
          },
          [&](const Exponential& e) { return x <= 0 ? 1.0 / e.rate : x + 1.0 / e.rate; },
          [&](const Bernoulli& b) {
            if (x > 1 || (x > 0 && b.q <= 0.0)) irrelevant(">=");
            return x > 0 ? 1.0 : b.q;
          },
          [&](const LogNormal& l) {
            double m = std::exp(l.mu + 0.5 * l.sigma * l.sigma);
            if (x <= 0) return m;
            double z = (std::log(x) - l.mu) / l.sigma;
            double mass = normal::cdf(-z);
            if (mass <= 0.0) irrelevant(">=");
            return m * normal::cdf(l.sigma - z) / mass;
          },
          [&](const PointMass& p) {
            if (x > p.c) irrelevant(">=");
            return p.c;
          },
      },
      d.kind());
}

Distribution negate(const ParamDist& d) {
  return std::visit(
      Overloaded{
          [](const Normal& n) -> Distribution { return ParamDist(Normal{-n.mu, n.sigma}); },
          [](const PointMass& p) -> Distribution { return ParamDist(PointMass{-p.c}); },
          [](const Bernoulli& b) -> Distribution {
            Rational q = rational_from_double(b.q);
            return DiscreteDist::normalize({{Rational{-1}, q}, {Rational{0}, 1 - q}});
          },
          [](const Exponential&) -> Distribution {
            throw InputError("negated exponential law is outside the parametric family");
          },
          [](const LogNormal&) -> Distribution {
            throw InputError("negated lognormal law is outside the parametric family");
          },
      },
      d.kind());
}

std::optional<DiscreteDist> as_discrete(const ParamDist& d) {
  if (const auto* p = d.as<PointMass>()) return DiscreteDist::point(rational_from_double(p->c));
  if (const auto* b = d.as<Bernoulli>()) {
    Rational q = rational_from_double(b->q);
    return DiscreteDist::normalize({{Rational{0}, 1 - q}, {Rational{1}, q}});
  }
  return std::nullopt;
}

// --- variant front end ----------------------------------------------------------------

double cdf(const Distribution& d, double x) {
  if (const auto* dd = std::get_if<DiscreteDist>(&d)) return to_double(cdf(*dd, rational_from_double(x)));
  return cdf(std::get<ParamDist>(d), x);
}

double quantile_right(const Distribution& d, double t) {
  if (const auto* dd = std::get_if<DiscreteDist>(&d))
    return to_double(quantile_right(*dd, rational_from_double(t)));
  return quantile_right(std::get<ParamDist>(d), t);
}

double mean_value(const Distribution& d) {
  if (const auto* dd = std::get_if<DiscreteDist>(&d)) return to_double(mean(*dd));
  return mean(std::get<ParamDist>(d));
}

Distribution negate(const Distribution& d) {
  if (const auto* dd = std::get_if<DiscreteDist>(&d)) return negate(*dd);
  return negate(std::get<ParamDist>(d));
}

// --- joint laws --------------------------------------------------------------------------

JointDist JointDist::normalize(std::vector<JointAtom> raw) {
  if (raw.empty()) throw InputError("joint distribution has no atoms");
  Rational total{0};
  for (const auto& a : raw) {
    if (a.prob < 0) throw InputError("negative probability " + to_string(a.prob));
    total += a.prob;
  }
  if (total == 0) throw InputError("total probability mass is zero");
  std::sort(raw.begin(), raw.end(), [](const JointAtom& a, const JointAtom& b) {
    return a.w < b.w || (a.w == b.w && a.z < b.z);
  });
  std::vector<JointAtom> out;
  out.reserve(raw.size());
  for (auto& a : raw) {
    if (a.prob == 0) continue;
    if (!out.empty() && out.back().w == a.w && out.back().z == a.z) {
      out.back().prob += a.prob;
    } else {
      out.push_back(std::move(a));
    }
  }
  if (total != 1) {
    for (auto& a : out) a.prob /= total;
  }
  return JointDist(std::move(out));
}

DiscreteDist joint_marginal_w(const JointDist& j) {
  std::vector<Atom> raw;
  raw.reserve(j.size());
  for (const auto& a : j.atoms()) raw.push_back({a.w, a.prob});
  return DiscreteDist::normalize(std::move(raw));
}

DiscreteDist joint_z(const JointDist& j) {
  std::vector<Atom> raw;
  raw.reserve(j.size());
  for (const auto& a : j.atoms()) raw.push_back({a.z, a.prob});
  return DiscreteDist::normalize(std::move(raw));
}

DiscreteDist joint_sum(const JointDist& j) {
  std::vector<Atom> raw;
  raw.reserve(j.size());
  for (const auto& a : j.atoms()) raw.push_back({a.w + a.z, a.prob});
  return DiscreteDist::normalize(std::move(raw));
}

}  // namespace stochorder
