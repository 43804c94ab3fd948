#include "stochorder/dependence.hpp"

#include <algorithm>
#include <stdexcept>

namespace stochorder {

namespace {

// Per W-atom mass and first moment of Z, in increasing w.
struct Slice {
  Rational w;
  Rational mass;
  Rational z_mass;  // sum of z * p over the slice
};

std::vector<Slice> slices(const JointDist& j) {
  std::vector<Slice> out;
  for (const auto& a : j.atoms()) {
    if (out.empty() || out.back().w != a.w) out.push_back({a.w, Rational{0}, Rational{0}});
    out.back().mass += a.prob;
    out.back().z_mass += a.z * a.prob;
  }
  return out;
}

Witness threshold_witness(const Rational& x, const Rational& z_mass, const Rational& mass) {
  return {WitnessKind::threshold_x, x, z_mass / mass, Rational{0}};
}

}  // namespace

std::vector<Rational> relevant_thresholds(const JointDist& j) {
  std::vector<Rational> out;
  for (const auto& s : slices(j)) out.push_back(s.w);
  return out;
}

OrderVerdict cond_new(const JointDist& j) {
  Rational mass{0}, z_mass{0};
  for (const auto& s : slices(j)) {
    mass += s.mass;
    z_mass += s.z_mass;
    if (z_mass > 0) return OrderVerdict::fail(threshold_witness(s.w, z_mass, mass));
  }
  return OrderVerdict::pass();
}

OrderVerdict cond_classic(const JointDist& j) {
  for (const auto& s : slices(j)) {
    if (s.z_mass > 0) return OrderVerdict::fail(threshold_witness(s.w, s.z_mass, s.mass));
  }
  return OrderVerdict::pass();
}

OrderVerdict cond_icx(const JointDist& j) {
  auto sl = slices(j);
  Rational mass{0}, z_mass{0};
  std::optional<Witness> first;
  // Suffix sums run from the top, but the witness reported is the smallest
  // violating threshold so that it matches the scan order of cond_new.
  for (auto it = sl.rbegin(); it != sl.rend(); ++it) {
    mass += it->mass;
    z_mass += it->z_mass;
    if (z_mass < 0) first = threshold_witness(it->w, z_mass, mass);
  }
  if (first) return OrderVerdict::fail(*first);
  return OrderVerdict::pass();
}

OrderVerdict cond_cx_pair(const JointDist& j) {
  Rational ez{0};
  for (const auto& a : j.atoms()) ez += a.z * a.prob;
  if (ez != 0) {
    Rational top = j.atoms().back().w;
    return OrderVerdict::fail({WitnessKind::threshold_x, top, ez, Rational{0}});
  }
  OrderVerdict lower = cond_new(j);
  OrderVerdict upper = cond_icx(j);
  if (lower.holds != upper.holds)
    throw std::logic_error("lower-tail and upper-tail forms disagree although E[Z] = 0");
  return lower;
}

OrderVerdict cond_theorem2(const JointDist& y_and_z) {
  std::vector<JointAtom> shifted;
  shifted.reserve(y_and_z.size());
  for (const auto& a : y_and_z.atoms()) shifted.push_back({a.w - a.z, a.z, a.prob});
  return cond_new(JointDist::normalize(std::move(shifted)));
}

Theorem2Certificate theorem2_certificate(const JointDist& y_and_z) {
  Theorem2Certificate out;
  out.condition = cond_theorem2(y_and_z);
  Rational ez{0};
  for (const auto& a : y_and_z.atoms()) ez += a.z * a.prob;
  out.mean_zero = ez == 0;
  out.certifies_cx = out.mean_zero && out.condition.holds;
  return out;
}

bool is_comonotone(const std::vector<WeightedPair>& pairs) {
  std::vector<const WeightedPair*> live;
  for (const auto& p : pairs) {
    if (p.prob < 0) throw InputError("negative probability in pair list");
    if (p.prob > 0) live.push_back(&p);
  }
  std::sort(live.begin(), live.end(), [](const WeightedPair* x, const WeightedPair* y) {
    return x->a < y->a || (x->a == y->a && x->b < y->b);
  });
  // Every b in a group must be >= every b in all groups with smaller a.
  std::optional<Rational> max_before;
  std::size_t i = 0;
  while (i < live.size()) {
    std::size_t k = i;
    while (k < live.size() && live[k]->a == live[i]->a) ++k;
    const Rational& group_min = live[i]->b;
    const Rational& group_max = live[k - 1]->b;
    if (max_before && group_min < *max_before) return false;
    if (!max_before || group_max > *max_before) max_before = group_max;
    i = k;
  }
  return true;
}

}  // namespace stochorder
