#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "stochorder/apps.hpp"
#include "stochorder/coupling.hpp"
#include "stochorder/dist.hpp"
#include "stochorder/verdict.hpp"

namespace stochorder::io {

// std::map-backed objects, so dumps have sorted keys.
using Json = nlohmann::json;

// Integers and "num/den" / decimal strings are exact. Floating JSON numbers
// are read through their shortest round-trip decimal form, so 0.1 becomes
// 1/10 rather than the nearest binary64.
Rational rational_from_json(const Json& v, std::string_view where);
double real_from_json(const Json& v, std::string_view where);

// Rationals serialize as "num/den" strings ("n" for integers).
Json to_json(const Rational& r);

Distribution distribution_from_json(const Json& v);
JointDist joint_from_json(const Json& v);
// {"type":"piecewise_linear","knots":[[x, I(x)], ...]}
// {"type":"fixed","threshold":t,"amount":a}
// {"type":"stop_loss","deductible":d}
IndemnitySchedule indemnity_from_json(const Json& v);

Json to_json(const DiscreteDist& d);
Json to_json(const ParamDist& d);
Json to_json(const Distribution& d);
Json to_json(const JointDist& j);
Json to_json(const IndemnitySchedule& s);
Json to_json(const Witness& w);
// {"holds": bool, "witness": {...} | null}
Json to_json(const OrderVerdict& v);
Json to_json(const Coupling& c);

// Reads and parses a file; syntax errors become InputError naming the file
// and byte offset.
Json load_file(const std::string& path);

}  // namespace stochorder::io
