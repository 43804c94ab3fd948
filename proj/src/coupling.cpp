#include "stochorder/coupling.hpp"

#include <cstdlib>
#include <string>

#include "stochorder/orders.hpp"
#include "stochorder/simplex.hpp"

namespace stochorder {

std::string_view to_string(CouplingMode mode) {
  return mode == CouplingMode::supermartingale ? "supermartingale" : "martingale";
}

JointDist Coupling::to_joint() const {
  std::vector<JointAtom> raw;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (pi[i][j] > 0) raw.push_back({rows[i].value, cols[j].value - rows[i].value, pi[i][j]});
    }
  }
  return JointDist::normalize(std::move(raw));
}

std::size_t max_support() {
  if (const char* env = std::getenv("STOCHORDER_MAX_SUPPORT")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 100;
}

namespace {

bool row_ok(const Rational& drift, CouplingMode mode) {
  return mode == CouplingMode::martingale ? drift == 0 : drift <= 0;
}

Coupling empty_plan(const DiscreteDist& x, const DiscreteDist& y) {
  Coupling c{x.atoms(), y.atoms(), {}};
  c.pi.assign(x.size(), std::vector<Rational>(y.size()));
  return c;
}

// Single-atom marginals admit exactly one plan.
std::optional<SynthResult> degenerate(const DiscreteDist& x, const DiscreteDist& y,
                                      CouplingMode mode) {
  if (x.size() != 1 && y.size() != 1) return std::nullopt;
  Coupling c = empty_plan(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      c.pi[i][j] = x.size() == 1 ? y.atoms()[j].prob : x.atoms()[i].prob;
    }
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational drift{0};
    for (std::size_t j = 0; j < y.size(); ++j)
      drift += c.pi[i][j] * (y.atoms()[j].value - x.atoms()[i].value);
    if (!row_ok(drift, mode)) return SynthResult{};
  }
  return SynthResult{true, std::move(c), std::nullopt};
}

SynthResult solve_lp(const DiscreteDist& x, const DiscreteDist& y, CouplingMode mode) {
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  const bool slack = mode == CouplingMode::supermartingale;
  lp::EqualitySystem sys;
  sys.num_vars = n * m + (slack ? n : 0);
  auto var = [m](std::size_t i, std::size_t j) { return i * m + j; };
  auto blank = [&] { return std::vector<Rational>(sys.num_vars); };

  for (std::size_t i = 0; i < n; ++i) {
    auto row = blank();
    for (std::size_t j = 0; j < m; ++j) row[var(i, j)] = 1;
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(x.atoms()[i].prob);
  }
  for (std::size_t j = 0; j < m; ++j) {
    auto row = blank();
    for (std::size_t i = 0; i < n; ++i) row[var(i, j)] = 1;
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(y.atoms()[j].prob);
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto row = blank();
    for (std::size_t j = 0; j < m; ++j) row[var(i, j)] = y.atoms()[j].value - x.atoms()[i].value;
    if (slack) row[n * m + i] = 1;
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(Rational{0});
  }

  lp::FeasibilityResult lp_result = lp::find_feasible_point(sys);
  if (!lp_result.feasible) return SynthResult{};
  Coupling c = empty_plan(x, y);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) c.pi[i][j] = lp_result.x[var(i, j)];
  return SynthResult{true, std::move(c), std::nullopt};
}

}  // namespace

SynthResult synthesize(const DiscreteDist& x, const DiscreteDist& y, CouplingMode mode) {
  const std::size_t limit = max_support();
  if (x.size() > limit || y.size() > limit) {
    throw ResourceLimit("coupling supports " + std::to_string(x.size()) + " x " +
                        std::to_string(y.size()) + " exceed the limit of " + std::to_string(limit) +
                        " atoms per marginal (STOCHORDER_MAX_SUPPORT overrides)");
  }
  SynthResult out;
  if (auto d = degenerate(x, y, mode)) {
    out = std::move(*d);
  } else {
    out = solve_lp(x, y, mode);
  }
  if (!out.feasible) {
    OrderVerdict cert = mode == CouplingMode::supermartingale ? check_ssd(x, y) : check_cx(x, y);
    if (cert.holds)
      throw std::logic_error("no coupling found although the order check holds");
    out.certificate = std::move(cert);
  }
  return out;
}

SynthResult synth_supermartingale(const DiscreteDist& x, const DiscreteDist& y) {
  return synthesize(x, y, CouplingMode::supermartingale);
}

SynthResult synth_martingale(const DiscreteDist& x, const DiscreteDist& y) {
  return synthesize(x, y, CouplingMode::martingale);
}

bool verify_coupling(const Coupling& c, const DiscreteDist& x, const DiscreteDist& y,
                     CouplingMode mode) {
  if (c.rows.size() != x.size() || c.cols.size() != y.size() || c.pi.size() != x.size())
    return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (c.rows[i].value != x.atoms()[i].value) return false;
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (c.cols[j].value != y.atoms()[j].value) return false;
  }
  std::vector<Rational> col_sum(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (c.pi[i].size() != y.size()) return false;
    Rational row_sum{0}, drift{0};
    for (std::size_t j = 0; j < y.size(); ++j) {
      const Rational& v = c.pi[i][j];
      if (v < 0) return false;
      row_sum += v;
      col_sum[j] += v;
      drift += v * (y.atoms()[j].value - x.atoms()[i].value);
    }
    if (row_sum != x.atoms()[i].prob) return false;
    if (!row_ok(drift, mode)) return false;
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (col_sum[j] != y.atoms()[j].prob) return false;
  }
  return true;
}

}  // namespace stochorder
