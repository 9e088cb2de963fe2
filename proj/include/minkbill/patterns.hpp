#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "minkbill/polytope.hpp"

namespace minkbill {

// A contact pattern assigns to each of m cyclically ordered bounce slots a
// nonempty facet-index set of the table that is the active set of a nonempty
// face (an element of face_subsets). The pattern is usable by the solver when
// the union of its slots is "surrounding": some nonzero nonnegative
// combination of the involved facet normals vanishes. Points pinned to the
// slot hyperplanes of a surrounding pattern can never be covered by a smaller
// homothet of the table, which is exactly what makes the per-pattern LP a
// sound lower-bound machine.
struct ContactPattern {
  std::vector<std::vector<int>> slots;  // cyclic; each sorted and nonempty
};

// Memoized exact feasibility of: exists lambda >= 0 with sum lambda = 1 and
// sum lambda_j a_j = 0, lambda supported on a facet subset (bitmask).
class SurroundingChecker {
 public:
  explicit SurroundingChecker(const Body& table);
  bool surrounding(uint32_t mask);
  // The lambda certificate (length = facet count, zeros off the mask), or
  // nullopt when the mask is not surrounding.
  std::optional<Vec> certificate(uint32_t mask) const;

 private:
  const Body& table_;
  std::map<uint32_t, bool> cache_;
};

enum class PatternFilter {
  all,            // every surrounding cyclic assignment (the full contract)
  solver_minimal  // dominance-pruned: patterns whose LP cannot beat a smaller
                  // enumerated pattern are skipped (facet removable from a
                  // multi-facet slot, or two cyclically adjacent equal slots)
};

// Enumerates cyclic slot assignments built from face_subsets(table), one
// canonical representative per rotation class. Both traversal orientations
// appear when order_sensitive (reversal classes are merged otherwise).
// Deterministic order: lexicographic in face-subset indices, which are
// themselves ordered by (size, indices).
std::vector<ContactPattern> enumerate_patterns(const Body& table, int m, bool order_sensitive,
                                               PatternFilter filter = PatternFilter::all);

}  // namespace minkbill
