#pragma once

// Exact two-phase primal simplex with Bland's rule.
//
//   minimize c^T x  subject to  A x = b,  x >= 0
//
// Free variables are the caller's business (split x = x+ - x-).

#include "netloc/linalg.hpp"

namespace netloc {

struct LinearProgram {
  RationalMatrix A;
  RationalVector b;
  RationalVector c; // empty means pure feasibility
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RationalVector x;
  Rational objective = 0;
  /// When infeasible: y with y^T A <= 0 componentwise and y^T b > 0.
  RationalVector farkas;
  std::size_t pivots = 0;
};

LpResult solve_lp(const LinearProgram& lp);

} // namespace netloc
