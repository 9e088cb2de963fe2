#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "minkbill/polytope.hpp"

namespace minkbill {

using Rng = std::mt19937_64;

// Seeded instance generators used by the verification suites and the
// acceptance run. All draws are exact rationals.
Rat random_fraction(Rng& rng, int lo, int hi, int max_den);
Body random_symmetric_polygon(Rng& rng, int pairs, bool require_exact_vertex_count = false);
Body random_polygon_origin_interior(Rng& rng, int points, BodyRole role = BodyRole::table);
Body random_body_inside(Rng& rng, const Body& outer);
std::vector<Vec> random_simplex_origin_interior(Rng& rng, int dim);

struct SuiteInstance {
  std::string description;
  bool ok = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  uint64_t seed = 0;
  int count = 0;
  int violations = 0;
  std::vector<SuiteInstance> instances;
};

// Named property suites. Each runs `count` generated instances and records
// one entry per instance; a violation means the implementation (not the
// mathematics) is wrong.
//   monotonicity             nested tables never lengthen the answer
//   symmetry                 swapping table and norm body preserves it
//   brunn-minkowski          superadditivity under Minkowski sums
//   symmetric-polar-4        symmetric table vs its polar gives exactly 4
//   nonsymmetric-bound       planar table vs its polar gives at least 3
//   two-periodic-stability   adding lambda * (unit ball) keeps 2 bounces and
//                            adds exactly 4*lambda
//   simplex-closed-form      closed-form trajectories, Cevian identity,
//                            order table and midpoint concurrency
//   oracle-agreement         sampling oracle dominates and converges
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, uint64_t seed, int count);

}  // namespace minkbill
