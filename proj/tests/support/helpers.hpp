#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "stochorder/dist.hpp"

namespace stochorder::testing {

inline Rational R(const std::string& s) { return parse_rational(s); }

// D({{"0", "1/4"}, {"1", "3/4"}})
inline DiscreteDist D(std::initializer_list<std::pair<const char*, const char*>> atoms) {
  std::vector<Atom> raw;
  for (const auto& [x, p] : atoms) raw.push_back({R(x), R(p)});
  return DiscreteDist::normalize(std::move(raw));
}

// Uniform law on the listed points.
inline DiscreteDist U(std::initializer_list<const char*> values) {
  std::vector<Rational> v;
  for (const char* x : values) v.push_back(R(x));
  return DiscreteDist::uniform(v);
}

inline JointDist J(std::initializer_list<std::tuple<const char*, const char*, const char*>> atoms) {
  std::vector<JointAtom> raw;
  for (const auto& [w, z, p] : atoms) raw.push_back({R(w), R(z), R(p)});
  return JointDist::normalize(std::move(raw));
}

}  // namespace stochorder::testing
