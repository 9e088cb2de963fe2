#pragma once

#include <vector>

#include "minkbill/polytope.hpp"

namespace minkbill {

// Closed-form shortest trajectories in a simplex measured by the gauge of its
// polar. For a simplex L = conv{v_0..v_n} with the origin strictly inside,
// the barycentric coordinates (m_0..m_n) of the origin and the pairwise
// product sum M = sum_{k<l} m_k m_l determine, for every cyclic order of the
// facets, a unique inscribed closed polygonal line with edges parallel to the
// vertex vectors: q_{i+1} - q_i = (m_i / M) v_i. Its gauge length is 1/M,
// which is at least 2 + 2/n with equality exactly at the centroid.
struct SimplexSpec {
  std::vector<Vec> vertices;  // v_0..v_n in R^n
  Vec masses;                 // barycentric coordinates of the origin
  Rat pair_product_sum;       // M
};

// Exact solve of sum m_i v_i = 0, sum m_i = 1. Throws invalid_input when the
// simplex is degenerate or the origin is not strictly inside.
Vec barycentric_of_origin(const std::vector<Vec>& vertices);

SimplexSpec make_simplex_spec(std::vector<Vec> vertices);

struct SimplexTrajectory {
  std::vector<int> order;   // visiting order of facet indices; order[0] == 0
  std::vector<Vec> points;  // q_i on facet F_{order[i]} (opposite v_{order[i]})
  std::vector<Rat> steps;   // t_i with q_{i+1} - q_i = t_i v_{order[i]}
};

// order must be a permutation of 0..n with order[0] == 0 (cyclic orders are
// canonicalized by fixing index 0 first; reversal counts as a distinct order).
SimplexTrajectory closed_form_trajectory(const SimplexSpec& s, std::vector<int> order);

// sum_i |q_{i+1}-q_i| / l_i over the Cevians l_i through v_i and the origin,
// evaluated in the square-root-free ratio form t_i (1 - m_i). Always 2.
Rat cevian_identity(const SimplexSpec& s, const SimplexTrajectory& tr);

// One trajectory per cyclic order (all n! of them with index 0 pinned first).
std::vector<SimplexTrajectory> all_orders_trajectories(const SimplexSpec& s);

// The common point of the hyperplanes through the edge midpoints parallel to
// the corresponding facets. Inconsistency of the exact linear system would
// falsify the construction and raises internal_alarm.
Vec midpoint_hyperplanes_concurrent(const SimplexSpec& s, const SimplexTrajectory& tr);

// Outward facet normal of F_k scaled so <a_k, x> = 1 on the facet.
Vec simplex_facet_normal(const SimplexSpec& s, int k);

}  // namespace minkbill
