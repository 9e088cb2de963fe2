#include "minkbill/fitting.hpp"

#include "minkbill/error.hpp"
#include "minkbill/lp.hpp"

namespace minkbill {

// LP over (t, alpha): min alpha s.t. <a_j, t> + b_j*alpha >= <a_j, q_i> for
// every point i and facet j. Boundedness and full dimension of the table
// force alpha >= 0 on their own (pair the rows with a positive circuit of the
// normals), so no explicit bound is needed and the origin may sit anywhere.
// The row duals are exactly the lambda_(i,j) of the certificate.
FittingResult smallest_fitting_ratio(const std::vector<Vec>& points, const Body& table) {
  if (points.empty()) fail_input("smallest_fitting_ratio: no points");
  int d = table.dim();
  for (const Vec& q : points)
    if (static_cast<int>(q.size()) != d) fail_input("smallest_fitting_ratio: dimension mismatch");

  Vec obj = zero_vec(d + 1);
  obj[static_cast<size_t>(d)] = 1;
  auto p = LPProblem::minimize(obj);
  const auto& rows = table.facets();
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = 0; j < rows.size(); ++j) {
      Vec row = rows[j].a;
      row.push_back(rows[j].b);
      p.add_ge(row, dot(rows[j].a, points[i]));
    }
  }
  auto out = solve(p);
  if (out.status != LPStatus::optimal)
    fail_internal("fitting LP did not reach an optimum for a bounded table");

  FittingResult fit;
  fit.alpha = out.value;
  fit.translate = Vec(out.x.begin(), out.x.begin() + d);
  size_t r = 0;
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = 0; j < rows.size(); ++j, ++r)
      if (sgn(out.duals[r]) != 0)
        fit.lambda[{static_cast<int>(i), static_cast<int>(j)}] = out.duals[r];
  return fit;
}

bool fitting_certificate_ok(const FittingResult& fit, const std::vector<Vec>& points,
                            const Body& table) {
  const auto& rows = table.facets();
  int d = table.dim();
  // Primal: every point inside alpha*K + t.
  for (const Vec& q : points)
    for (const auto& r : rows)
      if (dot(r.a, sub(q, fit.translate)) > fit.alpha * r.b) return false;
  // Dual identities.
  Vec combo = zero_vec(d);
  Rat bsum = 0, value = 0;
  for (const auto& [key, l] : fit.lambda) {
    if (sgn(l) < 0) return false;
    auto [i, j] = key;
    if (i < 0 || i >= static_cast<int>(points.size())) return false;
    if (j < 0 || j >= static_cast<int>(rows.size())) return false;
    combo = add(combo, scale(rows[static_cast<size_t>(j)].a, l));
    bsum += l * rows[static_cast<size_t>(j)].b;
    value += l * dot(rows[static_cast<size_t>(j)].a, points[static_cast<size_t>(i)]);
  }
  return is_zero(combo) && bsum == 1 && value == fit.alpha;
}

}  // namespace minkbill
