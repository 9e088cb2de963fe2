#include "minkbill/simplex_form.hpp"

#include <algorithm>
#include <numeric>

#include "minkbill/error.hpp"

namespace minkbill {

Vec barycentric_of_origin(const std::vector<Vec>& vertices) {
  size_t n1 = vertices.size();
  if (n1 < 2) fail_input("simplex needs at least 2 vertices");
  size_t d = vertices[0].size();
  if (n1 != d + 1) fail_input("simplex in dimension " + std::to_string(d) + " needs " +
                              std::to_string(d + 1) + " vertices, got " + std::to_string(n1));
  Mat sys(d + 1, Vec(n1));
  Vec rhs = zero_vec(static_cast<int>(d) + 1);
  for (size_t c = 0; c < d; ++c)
    for (size_t i = 0; i < n1; ++i) sys[c][i] = vertices[i][c];
  for (size_t i = 0; i < n1; ++i) sys[d][i] = 1;
  rhs[d] = 1;
  auto m = solve_linear(sys, rhs);
  if (!m) fail_input("degenerate simplex: vertices are affinely dependent");
  for (const Rat& mi : *m)
    if (sgn(mi) <= 0)
      fail_input("origin is not strictly inside the simplex (a barycentric coordinate is <= 0)");
  return *m;
}

SimplexSpec make_simplex_spec(std::vector<Vec> vertices) {
  SimplexSpec s;
  s.masses = barycentric_of_origin(vertices);
  s.vertices = std::move(vertices);
  s.pair_product_sum = 0;
  for (size_t k = 0; k < s.masses.size(); ++k)
    for (size_t l = k + 1; l < s.masses.size(); ++l)
      s.pair_product_sum += s.masses[k] * s.masses[l];
  // Schur concavity puts M at most n/(2n+2); a violation would mean the
  // barycentric solve went wrong.
  long n = static_cast<long>(s.masses.size()) - 1;
  if (s.pair_product_sum > frac(n, 2 * n + 2))
    fail_internal("pairwise product sum exceeds its Schur bound");
  return s;
}

SimplexTrajectory closed_form_trajectory(const SimplexSpec& s, std::vector<int> order) {
  size_t n1 = s.vertices.size();
  {
    std::vector<int> check = order;
    std::sort(check.begin(), check.end());
    for (size_t i = 0; i < check.size(); ++i)
      if (check[i] != static_cast<int>(i) || order.size() != n1)
        fail_input("order must be a permutation of 0..n");
    if (order[0] != 0) fail_input("cyclic orders are canonicalized with order[0] == 0");
  }
  // Relabel: w_i = v_{order[i]}, mu_i = m_{order[i]}; everything cyclic mod n+1.
  std::vector<Vec> w(n1);
  Vec mu(n1);
  for (size_t i = 0; i < n1; ++i) {
    w[i] = s.vertices[static_cast<size_t>(order[i])];
    mu[i] = s.masses[static_cast<size_t>(order[i])];
  }
  const Rat& M = s.pair_product_sum;
  SimplexTrajectory tr;
  tr.order = order;
  for (size_t i = 0; i < n1; ++i) {
    // q_i = (1/M) sum_{j != i} (mu_j * sum_{k cyclically in [i, j)} mu_k) w_j.
    Vec q = zero_vec(static_cast<int>(s.vertices[0].size()));
    Rat coeff_sum = 0;
    for (size_t j = 0; j < n1; ++j) {
      if (j == i) continue;
      Rat inner = 0;
      for (size_t k = i; k != j; k = (k + 1) % n1) inner += mu[k];
      Rat c = mu[j] * inner;
      coeff_sum += c;
      q = add(q, scale(w[j], c));
    }
    if (coeff_sum != M) fail_internal("facet coefficients do not sum to M");
    tr.points.push_back(scale(q, 1 / M));
    tr.steps.push_back(mu[i] / M);
  }
  // Every edge must match t_i * w_i exactly.
  for (size_t i = 0; i < n1; ++i) {
    Vec edge = sub(tr.points[(i + 1) % n1], tr.points[i]);
    if (compare_vec(edge, scale(w[i], tr.steps[i])) != 0)
      fail_internal("closed-form edge disagrees with t_i v_i");
  }
  return tr;
}

Rat cevian_identity(const SimplexSpec& s, const SimplexTrajectory& tr) {
  // |q_{i+1}-q_i| / l_i = t_i |v_i| / l_i = t_i (1 - m_i), no square roots.
  Rat total = 0;
  for (size_t i = 0; i < tr.steps.size(); ++i) {
    const Rat& m_i = s.masses[static_cast<size_t>(tr.order[i])];
    total += tr.steps[i] * (1 - m_i);
  }
  return total;
}

std::vector<SimplexTrajectory> all_orders_trajectories(const SimplexSpec& s) {
  size_t n1 = s.vertices.size();
  if (n1 > 6) fail_input("order enumeration is limited to dimension 5");
  std::vector<int> rest;
  for (size_t i = 1; i < n1; ++i) rest.push_back(static_cast<int>(i));
  std::vector<SimplexTrajectory> out;
  do {
    std::vector<int> order = {0};
    order.insert(order.end(), rest.begin(), rest.end());
    out.push_back(closed_form_trajectory(s, order));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

Vec simplex_facet_normal(const SimplexSpec& s, int k) {
  size_t n1 = s.vertices.size();
  size_t d = n1 - 1;
  Mat sys;
  Vec rhs;
  for (size_t j = 0; j < n1; ++j) {
    if (j == static_cast<size_t>(k)) continue;
    sys.push_back(s.vertices[j]);
    rhs.push_back(Rat(1));
  }
  auto a = solve_linear(sys, rhs);
  if (!a) fail_internal("facet normal system is singular for a valid simplex");
  (void)d;
  return *a;
}

Vec midpoint_hyperplanes_concurrent(const SimplexSpec& s, const SimplexTrajectory& tr) {
  size_t n1 = s.vertices.size();
  size_t d = n1 - 1;
  std::vector<Vec> normals;
  Vec offsets;
  for (size_t i = 0; i < n1; ++i) {
    Vec nrm = simplex_facet_normal(s, tr.order[i]);
    Vec mid = scale(add(tr.points[i], tr.points[(i + 1) % n1]), frac(1, 2));
    offsets.push_back(dot(nrm, mid));
    normals.push_back(std::move(nrm));
  }
  Mat sys(normals.begin(), normals.begin() + static_cast<long>(d));
  Vec rhs(offsets.begin(), offsets.begin() + static_cast<long>(d));
  auto x = solve_linear(sys, rhs);
  if (!x) fail_internal("midpoint hyperplanes are not in general position");
  if (dot(normals[d], *x) != offsets[d])
    fail_internal("midpoint hyperplanes are not concurrent");
  return *x;
}

}  // namespace minkbill
