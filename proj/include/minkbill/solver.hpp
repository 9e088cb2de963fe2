#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minkbill/body_io.hpp"
#include "minkbill/fitting.hpp"
#include "minkbill/patterns.hpp"
#include "minkbill/polytope.hpp"

namespace minkbill {

// Shortest closed generalized billiard trajectory solver. The minimum over
// all point configurations that do not fit into a smaller homothet of the
// table is attained with at most dim+1 bounce points, so the solver sweeps
// m = 2..dim+1, enumerates surrounding contact patterns, and minimizes the
// gauge length by one exact LP per pattern:
//
//   minimize sum_i s_i
//   s.t.     s_i >= <p, q_{i+1} - q_i>   for every vertex p of the norm body
//            <a_j, q_i> = b_j            for every facet j in slot i
//
// Every feasible configuration of such an LP is certified by the pattern's
// surrounding multipliers to lie outside every smaller homothet, so each LP
// value bounds the answer from below-compatibly; the optimal trajectory's own
// active pattern attains it. The winning pattern is re-solved with q_i
// constrained inside the table (that keeps the optimal value and makes the
// optimal face compact) and lexicographically refined, so the reported
// trajectory is unique and reproducible byte for byte.

struct SolverOptions {
  int max_m = 0;     // 0 means dim+1
  int threads = 0;   // 0 means hardware concurrency (capped)
};

struct PatternOptimum {
  Rat value;
  ClosedPolyline points;
};

// Exact minimum of the pattern LP, or nullopt when the slot equalities are
// jointly infeasible. Unboundedness for a surrounding pattern would be an
// internal inconsistency and throws.
std::optional<PatternOptimum> pattern_min_length(const Body& table, const Body& norm,
                                                 const ContactPattern& pattern);

struct BilliardSolution {
  Rat xi;
  ClosedPolyline trajectory;  // fake vertices removed
  int bounce_count = 0;
  std::vector<Rat> segment_lengths;  // per directed edge of the trajectory
  ContactPattern pattern;            // winning pattern (pre-dedupe slots)
  int pattern_m = 0;
  Vec surround_lambda;               // per facet, sum = 1, sum lambda_j a_j = 0
  FittingResult fit;                 // fitting certificate at the trajectory; alpha == 1
  Vec boundary_translate;            // bounce points lie on the boundary of table + this
  Body table;
  Body norm;
};

BilliardSolution shortest_trajectory(const Body& table, const Body& norm,
                                     const SolverOptions& opts = {});

// Removes repeated consecutive points and vertices whose incoming and
// outgoing directions are positively proportional; the gauge length is
// unchanged exactly. Degenerating below 2 points is an input error.
ClosedPolyline dedupe_fake_vertices(const ClosedPolyline& p, const Body& norm);

struct ReflectionCertificate {
  // Per deduped bounce i: incoming momentum, outgoing momentum, multiplier
  // lambda_i > 0 and unit-combination normal n_i with
  //   p_out - p_in = -lambda_i n_i,
  // n_i a convex combination of the active facet normals at the bounce.
  std::vector<Vec> momentum_in;
  std::vector<Vec> momentum_out;
  std::vector<Rat> lambda;
  std::vector<Vec> normal;
};

struct ReflectionCheck {
  bool ok = false;
  int violated_index = -1;
  std::string reason;
  ReflectionCertificate cert;
};

// Searches momenta in the maximizing face of the norm body for each edge and
// normal-cone multipliers satisfying the reflection rule at every bounce, by
// exact LP feasibility. Succeeds on every optimal solution; a failure report
// on a solver output is an internal-consistency alarm.
ReflectionCheck verify_reflection(const BilliardSolution& sol);

bool is_two_periodic(const BilliardSolution& sol);

Json solution_to_json(const BilliardSolution& sol);
BilliardSolution solution_from_json(const Json& j);

}  // namespace minkbill
