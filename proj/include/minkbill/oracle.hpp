#pragma once

#include <cstdint>

#include "minkbill/polytope.hpp"

namespace minkbill {

// Brute-force cross-check for the solver: samples bounce-point tuples on the
// table boundary, keeps those that provably do not fit into a smaller
// homothet, and minimizes the gauge length over them. Every accepted tuple is
// a genuine trajectory-candidate configuration, so the result is always an
// upper bound for the solver's exact answer, and it is non-increasing as the
// resolution grows along nested grids (r dividing r').
//
// The fit filter is the Motzkin transposition of the fitting LP: a tuple with
// facet maxima g_j = max_i <a_j, q_i> has fitting ratio >= 1 iff some
// extreme ray lambda >= 0 of {sum lambda_j a_j = 0} satisfies
// sum lambda_j (g_j - b_j) >= 0. The rays are enumerated once per table
// (minimal positive circuits of the normals), and the per-tuple test runs in
// scaled 64-bit integers when the sample grid permits, falling back to
// rationals otherwise. The final winner is re-checked with the exact fitting
// LP.

enum class OracleMode { exhaustive_2d, random_3d };

struct OracleConfig {
  int resolution = 16;  // samples per facet, >= 2
  int max_m = 3;        // 2 or 3 for exhaustive-2d, up to 4 for random-3d
  OracleMode mode = OracleMode::exhaustive_2d;
  uint64_t seed = 1;             // random mode
  long long budget = 400000000;  // tuple ceiling; exceeding it flags a partial result
};

struct OracleResult {
  Rat value;
  ClosedPolyline best;
  bool partial = false;
  long long tuples_tested = 0;
};

OracleResult oracle_xi(const Body& table, const Body& norm, const OracleConfig& cfg);

}  // namespace minkbill
