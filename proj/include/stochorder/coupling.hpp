#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "stochorder/dist.hpp"
#include "stochorder/verdict.hpp"

namespace stochorder {

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CouplingMode {
  supermartingale,  // E[Y - W | W] <= 0: represents X >=ssd Y
  martingale,       // E[Y - W | W]  = 0: represents X <=cx Y
};

std::string_view to_string(CouplingMode mode);

// Transport plan between the atoms of W ~ X (rows) and Y (columns).
struct Coupling {
  std::vector<Atom> rows;
  std::vector<Atom> cols;
  std::vector<std::vector<Rational>> pi;  // rows.size() x cols.size()

  // Joint law of (W, Z) with Z = Y - W, over the positive cells.
  JointDist to_joint() const;
};

struct SynthResult {
  bool feasible = false;
  std::optional<Coupling> coupling;       // iff feasible
  std::optional<OrderVerdict> certificate;  // iff !feasible: the failing order check
};

// Largest support accepted per marginal: 100, or STOCHORDER_MAX_SUPPORT.
std::size_t max_support();

// Finds a coupling of X and Y whose rows satisfy the mode's conditional-mean
// constraint, by exact phase-1 simplex on
//   sum_j pi_ij = p_i,  sum_i pi_ij = q_j,  sum_j pi_ij (y_j - w_i) (+ s_i) = 0.
// Single-atom marginals short-circuit to the only possible plan. When no plan
// exists the certificate is check_ssd(X, Y) (supermartingale) or
// check_cx(X, Y) (martingale); a holding check there is an internal
// inconsistency and throws std::logic_error.
SynthResult synthesize(const DiscreteDist& x, const DiscreteDist& y, CouplingMode mode);
SynthResult synth_supermartingale(const DiscreteDist& x, const DiscreteDist& y);
SynthResult synth_martingale(const DiscreteDist& x, const DiscreteDist& y);

// Independent re-check of a plan: supports and marginals match X and Y
// exactly, entries are nonnegative, and every row meets the mode constraint.
bool verify_coupling(const Coupling& c, const DiscreteDist& x, const DiscreteDist& y,
                     CouplingMode mode);

}  // namespace stochorder
