#include "stochorder/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace stochorder::io {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string at(std::string_view where, std::string_view key) {
  return std::string(where) + "." + std::string(key);
}

const Json& field(const Json& obj, std::string_view where, const char* key) {
  if (!obj.is_object()) throw InputError(std::string(where) + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(at(where, key) + ": missing field");
  return *it;
}

std::string type_of(const Json& v, std::string_view where) {
  const Json& t = field(v, where, "type");
  if (!t.is_string()) throw InputError(at(where, "type") + ": expected a string");
  return t.get<std::string>();
}

const Json& array_field(const Json& obj, std::string_view where, const char* key) {
  const Json& a = field(obj, where, key);
  if (!a.is_array()) throw InputError(at(where, key) + ": expected an array");
  return a;
}

Json real_json(double x) { return Json(x); }

}  // namespace

Rational rational_from_json(const Json& v, std::string_view where) {
  try {
    if (v.is_number_integer()) {
      if (v.is_number_unsigned()) return Rational{v.get<std::uint64_t>()};
      return Rational{v.get<std::int64_t>()};
    }
    if (v.is_number_float()) {
      double d = v.get<double>();
      if (!std::isfinite(d)) throw InputError("non-finite number");
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, d);
      return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
    }
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(std::string(where) + ": " + e.what());
  }
  throw InputError(std::string(where) + ": expected a number or rational string");
}

double real_from_json(const Json& v, std::string_view where) {
  if (v.is_number()) {
    double d = v.get<double>();
    if (!std::isfinite(d)) throw InputError(std::string(where) + ": non-finite number");
    return d;
  }
  if (v.is_string()) return to_double(rational_from_json(v, where));
  throw InputError(std::string(where) + ": expected a number");
}

Json to_json(const Rational& r) { return to_string(r); }

Distribution distribution_from_json(const Json& v) {
  const std::string where = "$";
  const std::string type = type_of(v, where);
  auto real = [&](const char* key) { return real_from_json(field(v, where, key), at(where, key)); };
  try {
    if (type == "discrete") {
      const Json& atoms = array_field(v, where, "atoms");
      std::vector<Atom> raw;
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        const std::string here = where + ".atoms[" + std::to_string(k) + "]";
        Rational x = rational_from_json(field(atoms[k], here, "x"), at(here, "x"));
      Rational p = rational_from_json(field(atoms[k], here, "p"), at(here, "p"));
      raw.push_back({std::move(x), std::move(p)});
      }
      return DiscreteDist::normalize(std::move(raw));
    }
    if (type == "normal") return ParamDist(Normal{real("mu"), real("sigma")});
    if (type == "exponential") return ParamDist(Exponential{real("rate")});
    if (type == "bernoulli") return ParamDist(Bernoulli{real("q")});
    if (type == "lognormal") return ParamDist(LogNormal{real("mu"), real("sigma")});
    if (type == "point") return ParamDist(PointMass{real("c")});
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(at(where, "type") + ": unknown distribution type '" + type + "'");
}

JointDist joint_from_json(const Json& v) {
  const std::string where = "$";
  if (type_of(v, where) != "joint") throw InputError(at(where, "type") + ": expected \"joint\"");
  const Json& atoms = array_field(v, where, "atoms");
  std::vector<JointAtom> raw;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const std::string here = where + ".atoms[" + std::to_string(k) + "]";
    Rational w = rational_from_json(field(atoms[k], here, "w"), at(here, "w"));
    Rational z = rational_from_json(field(atoms[k], here, "z"), at(here, "z"));
    Rational p = rational_from_json(field(atoms[k], here, "p"), at(here, "p"));
    raw.push_back({std::move(w), std::move(z), std::move(p)});
  }
  return JointDist::normalize(std::move(raw));
}

IndemnitySchedule indemnity_from_json(const Json& v) {
  const std::string where = "$";
  const std::string type = type_of(v, where);
  auto exact = [&](const char* key) { return rational_from_json(field(v, where, key), at(where, key)); };
  if (type == "piecewise_linear") {
    const Json& knots = array_field(v, where, "knots");
    PiecewiseLinearIndemnity pl;
    for (std::size_t k = 0; k < knots.size(); ++k) {
      const std::string here = where + ".knots[" + std::to_string(k) + "]";
      if (!knots[k].is_array() || knots[k].size() != 2)
        throw InputError(here + ": expected a pair [x, I(x)]");
      Rational x = rational_from_json(knots[k][0], here + "[0]");
      Rational y = rational_from_json(knots[k][1], here + "[1]");
      pl.knots.emplace_back(std::move(x), std::move(y));
    }
    return IndemnitySchedule(std::move(pl));
  }
  if (type == "fixed") return IndemnitySchedule(FixedIndemnity{exact("threshold"), exact("amount")});
  if (type == "stop_loss") return IndemnitySchedule(StopLossIndemnity{exact("deductible")});
  throw InputError(at(where, "type") + ": unknown indemnity type '" + type + "'");
}

Json to_json(const DiscreteDist& d) {
  Json atoms = Json::array();
  for (const auto& a : d.atoms()) atoms.push_back({{"x", to_json(a.value)}, {"p", to_json(a.prob)}});
  return {{"type", "discrete"}, {"atoms", std::move(atoms)}};
}

Json to_json(const ParamDist& d) {
  return std::visit(Overloaded{
                        [](const Normal& n) -> Json {
                          return {{"type", "normal"}, {"mu", n.mu}, {"sigma", n.sigma}};
                        },
                        [](const Exponential& e) -> Json {
                          return {{"type", "exponential"}, {"rate", e.rate}};
                        },
                        [](const Bernoulli& b) -> Json { return {{"type", "bernoulli"}, {"q", b.q}}; },
                        [](const LogNormal& n) -> Json {
                          return {{"type", "lognormal"}, {"mu", n.mu}, {"sigma", n.sigma}};
                        },
                        [](const PointMass& p) -> Json { return {{"type", "point"}, {"c", p.c}}; },
                    },
                    d.kind());
}

Json to_json(const Distribution& d) {
  return std::visit([](const auto& x) { return to_json(x); }, d);
}

Json to_json(const JointDist& j) {
  Json atoms = Json::array();
  for (const auto& a : j.atoms())
    atoms.push_back({{"w", to_json(a.w)}, {"z", to_json(a.z)}, {"p", to_json(a.prob)}});
  return {{"type", "joint"}, {"atoms", std::move(atoms)}};
}

Json to_json(const IndemnitySchedule& s) {
  return std::visit(Overloaded{
                        [](const PiecewiseLinearIndemnity& pl) -> Json {
                          Json knots = Json::array();
                          for (const auto& [x, y] : pl.knots) knots.push_back({to_json(x), to_json(y)});
                          return {{"type", "piecewise_linear"}, {"knots", std::move(knots)}};
                        },
                        [](const FixedIndemnity& f) -> Json {
                          return {{"type", "fixed"},
                                  {"threshold", to_json(f.threshold)},
                                  {"amount", to_json(f.amount)}};
                        },
                        [](const StopLossIndemnity& s) -> Json {
                          return {{"type", "stop_loss"}, {"deductible", to_json(s.deductible)}};
                        },
                    },
                    s.form());
}

Json to_json(const Witness& w) {
  // Witnesses from floating routes are printed as plain numbers; their exact
  // binary expansions are noise.
  auto value = [&](const Rational& r) { return w.exact ? to_json(r) : real_json(to_double(r)); };
  return {{"kind", std::string(to_string(w.kind))},
          {"value", value(w.value)},
          {"lhs", value(w.lhs)},
          {"rhs", value(w.rhs)},
          {"exact", w.exact}};
}

Json to_json(const OrderVerdict& v) {
  return {{"holds", v.holds}, {"witness", v.witness ? to_json(*v.witness) : Json(nullptr)}};
}

Json to_json(const Coupling& c) {
  Json rows = Json::array(), cols = Json::array(), pi = Json::array();
  for (const auto& a : c.rows) rows.push_back({{"x", to_json(a.value)}, {"p", to_json(a.prob)}});
  for (const auto& a : c.cols) cols.push_back({{"x", to_json(a.value)}, {"p", to_json(a.prob)}});
  for (const auto& row : c.pi) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    pi.push_back(std::move(r));
  }
  return {{"rows", std::move(rows)}, {"cols", std::move(cols)}, {"pi", std::move(pi)}};
}

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace stochorder::io
