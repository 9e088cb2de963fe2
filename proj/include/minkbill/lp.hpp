#pragma once

#include <string>
#include <vector>

#include "minkbill/linalg.hpp"
#include "minkbill/rational.hpp"

namespace minkbill {

// Exact rational linear programming: min c.x over free variables subject to
// rows a.x {<=,=,>=} b. Two-phase primal simplex with Bland's rule, so the
// solve terminates on every input and the outcome is deterministic.
//
// Everything is exact; no tolerances appear anywhere. Coefficient growth: a
// pivot replaces entries by differences of products of current entries, so
// numerator/denominator bit lengths grow roughly linearly in the number of
// pivots (each entry of an intermediate tableau is a ratio of minors of the
// input by Cramer's rule, hence bounded by a Hadamard-type product). At the
// problem sizes used here (tens of rows and columns) this stays in the
// hundreds of bits.

enum class Rel { le, eq, ge };

struct LPConstraint {
  Vec row;
  Rel rel;
  Rat rhs;
};

struct LPProblem {
  int num_vars = 0;
  Vec objective;  // minimized
  std::vector<LPConstraint> constraints;

  static LPProblem minimize(Vec c);
  void add(Vec row, Rel rel, Rat rhs);
  void add_le(Vec row, Rat rhs) { add(std::move(row), Rel::le, std::move(rhs)); }
  void add_ge(Vec row, Rat rhs) { add(std::move(row), Rel::ge, std::move(rhs)); }
  void add_eq(Vec row, Rat rhs) { add(std::move(row), Rel::eq, std::move(rhs)); }
};

enum class LPStatus { optimal, infeasible, unbounded };

// On optimal: x satisfies every constraint exactly and duals certify
// optimality. Dual sign convention for the minimization: duals[i] <= 0 for
// `<=` rows, duals[i] >= 0 for `>=` rows, free for `=` rows, with
//   sum_i duals[i] * row_i = objective   and   duals . rhs = value.
struct LPOutcome {
  LPStatus status = LPStatus::infeasible;
  Vec x;
  Rat value;
  Vec duals;
};

LPOutcome solve(const LPProblem& problem);

// Exact verification of primal feasibility, dual feasibility (signs +
// stationarity), complementary slackness, and strong duality. Used by tests
// and by callers that want a hard guarantee.
bool certificate_ok(const LPProblem& problem, const LPOutcome& out, std::string* why = nullptr);

// The lexicographically smallest optimal point with respect to the variable
// order given in `coord_order` (indices into x). The optimal value must be
// passed in; each step pins one more coordinate at its minimum.
Vec lex_min_optimum(const LPProblem& problem, const Rat& value, const std::vector<int>& coord_order);

}  // namespace minkbill
