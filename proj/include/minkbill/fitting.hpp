#pragma once

#include <map>
#include <utility>
#include <vector>

#include "minkbill/polytope.hpp"

namespace minkbill {

// Smallest homothety ratio alpha such that all points fit in alpha*K + t for
// some translate t, together with the optimal translate and the dual
// multipliers lambda_(i,j) >= 0 (point i, facet j) certifying optimality:
//   sum lambda_ij a_j = 0,  sum lambda_ij b_j = 1,  sum lambda_ij <a_j, q_i> = alpha.
struct FittingResult {
  Rat alpha;
  Vec translate;
  std::map<std::pair<int, int>, Rat> lambda;
};

FittingResult smallest_fitting_ratio(const std::vector<Vec>& points, const Body& table);

// Exact verification of the dual identities above; tests and internal
// consistency checks use it.
bool fitting_certificate_ok(const FittingResult& fit, const std::vector<Vec>& points,
                            const Body& table);

}  // namespace minkbill
