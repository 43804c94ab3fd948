#include "stochorder/simplex.hpp"

#include <stdexcept>

namespace stochorder::lp {

FeasibilityResult find_feasible_point(const EqualitySystem& system) {
  const std::size_t m = system.rows.size();
  const std::size_t n = system.num_vars;
  if (system.rhs.size() != m) throw std::invalid_argument("rhs length does not match row count");

  // Tableau rows hold the n structural columns followed by the rhs. Artificial
  // columns are not stored: an artificial leaves the basis for good.
  const std::size_t rhs_col = n;
  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(n + 1));
  std::vector<std::size_t> basis(m);
  std::vector<Rational> cost(n + 1);  // phase-1 reduced costs; cost[rhs_col] = -objective

  for (std::size_t i = 0; i < m; ++i) {
    if (system.rows[i].size() != n) throw std::invalid_argument("ragged constraint matrix");
    bool flip = system.rhs[i] < 0;
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = flip ? Rational(-system.rows[i][j]) : system.rows[i][j];
    tab[i][rhs_col] = flip ? Rational(-system.rhs[i]) : system.rhs[i];
    basis[i] = n + i;
    for (std::size_t j = 0; j <= n; ++j) cost[j] -= tab[i][j];
  }

  FeasibilityResult result;
  std::vector<std::size_t> nonzero;
  for (;;) {
    // Bland: lowest-index structural column with negative reduced cost.
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == n) break;

    // Minimum ratio, ties to the lowest basis index.
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter] <= 0) continue;
      Rational ratio = tab[i][rhs_col] / tab[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    // The phase-1 objective is bounded below by 0, so some row must block.
    if (leave == m) throw std::logic_error("phase-1 simplex found an unbounded direction");

    auto& prow = tab[leave];
    Rational pivot = prow[enter];
    nonzero.clear();
    for (std::size_t j = 0; j <= n; ++j) {
      if (prow[j] != 0) {
        prow[j] /= pivot;
        nonzero.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[enter] == 0) return;
      Rational factor = row[enter];
      for (std::size_t j : nonzero) row[j] -= factor * prow[j];
    };
    for (std::size_t i = 0; i < m; ++i) {
      if (i != leave) eliminate(tab[i]);
    }
    eliminate(cost);
    basis[leave] = enter;
    ++result.pivots;
  }

  result.feasible = cost[rhs_col] == 0;
  if (result.feasible) {
    result.x.assign(n, Rational{0});
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) result.x[basis[i]] = tab[i][rhs_col];
    }
  }
  return result;
}

}  // namespace stochorder::lp
