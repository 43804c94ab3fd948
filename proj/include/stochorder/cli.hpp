#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stochorder::cli {

// Exit codes.
inline constexpr int kHolds = 0;     // property holds / computation succeeded
inline constexpr int kFails = 1;     // property fails; witness in the report
inline constexpr int kBadInput = 2;  // usage, JSON, schema or domain error
inline constexpr int kInternal = 3;  // internal consistency check tripped

// args excludes the program name. The JSON run report (or a CSV/Markdown
// table) goes to `out`, a one-line human summary and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stochorder::cli
