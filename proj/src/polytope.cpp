#include "minkbill/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "minkbill/error.hpp"
#include "minkbill/lp.hpp"

namespace minkbill {

namespace {

constexpr int kMinDim = 2;
constexpr int kMaxDim = 6;

void check_dim(int dim) {
  if (dim < kMinDim || dim > kMaxDim)
    fail_input("dimension " + std::to_string(dim) + " outside supported range " +
               std::to_string(kMinDim) + ".." + std::to_string(kMaxDim));
}

bool halfspace_less(const Halfspace& x, const Halfspace& y) {
  int c = compare_vec(x.a, y.a);
  if (c != 0) return c < 0;
  return x.b < y.b;
}

bool halfspace_eq(const Halfspace& x, const Halfspace& y) {
  return x.b == y.b && compare_vec(x.a, y.a) == 0;
}

// Iterates k-subsets of {0..n-1} in lexicographic order.
bool next_combination(std::vector<int>& comb, int n) {
  int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[static_cast<size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[static_cast<size_t>(i)];
  for (int j = i + 1; j < k; ++j)
    comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
  return true;
}

int affine_rank(const std::vector<Vec>& pts) {
  if (pts.size() <= 1) return 0;
  Mat diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
  return rank(diffs);
}

// Solvability of v = sum λ_i pts_i with λ >= 0, sum λ = 1.
bool in_convex_hull(const Vec& v, const std::vector<Vec>& pts) {
  if (pts.empty()) return false;
  int n = static_cast<int>(pts.size());
  auto p = LPProblem::minimize(zero_vec(n));
  size_t dim = v.size();
  for (size_t c = 0; c < dim; ++c) {
    Vec row(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) row[static_cast<size_t>(j)] = pts[static_cast<size_t>(j)][c];
    p.add_eq(row, v[c]);
  }
  p.add_eq(Vec(static_cast<size_t>(n), Rat(1)), Rat(1));
  for (int j = 0; j < n; ++j) {
    Vec e = zero_vec(n);
    e[static_cast<size_t>(j)] = 1;
    p.add_ge(e, Rat(0));
  }
  return solve(p).status == LPStatus::optimal;
}

std::vector<Vec> extreme_points(int dim, std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& x, const Vec& y) { return compare_vec(x, y) < 0; });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec& x, const Vec& y) { return compare_vec(x, y) == 0; }),
            pts.end());
  std::vector<Vec> keep;
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<Vec> others;
    for (size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (!in_convex_hull(pts[i], others)) keep.push_back(pts[i]);
  }
  (void)dim;
  return keep;
}

void check_bounded_nonempty(const HPolytope& h) {
  for (int k = 0; k < h.dim; ++k) {
    for (int sign : {1, -1}) {
      Vec obj = zero_vec(h.dim);
      obj[static_cast<size_t>(k)] = sign;
      auto p = LPProblem::minimize(obj);
      for (const auto& r : h.rows) p.add_le(r.a, r.b);
      auto out = solve(p);
      if (out.status == LPStatus::infeasible) fail_input("empty polytope");
      if (out.status == LPStatus::unbounded) fail_input("unbounded polytope");
    }
  }
}

}  // namespace

Halfspace normalize_halfspace(Halfspace h) {
  if (is_zero(h.a)) fail_input("halfspace with zero normal");
  Rat s;
  if (sgn(h.b) != 0) {
    s = abs(h.b);
  } else {
    for (const Rat& x : h.a)
      if (sgn(x) != 0) {
        s = abs(x);
        break;
      }
  }
  for (Rat& x : h.a) x /= s;
  h.b /= s;
  return h;
}

VPolytope hrep_to_vrep(const HPolytope& h) {
  check_dim(h.dim);
  if (static_cast<int>(h.rows.size()) < h.dim + 1)
    fail_input("too few halfspaces for a bounded polytope");
  check_bounded_nonempty(h);
  int m = static_cast<int>(h.rows.size());
  std::set<Vec, decltype([](const Vec& x, const Vec& y) { return compare_vec(x, y) < 0; })> found;
  std::vector<int> comb(static_cast<size_t>(h.dim));
  for (int i = 0; i < h.dim; ++i) comb[static_cast<size_t>(i)] = i;
  do {
    Mat a;
    Vec b;
    for (int i : comb) {
      a.push_back(h.rows[static_cast<size_t>(i)].a);
      b.push_back(h.rows[static_cast<size_t>(i)].b);
    }
    auto x = solve_linear(a, b);
    if (!x) continue;
    if (contains_point(h, *x)) found.insert(*x);
  } while (next_combination(comb, m));
  if (found.empty()) fail_input("empty polytope");
  VPolytope v;
  v.dim = h.dim;
  v.vertices.assign(found.begin(), found.end());
  return v;
}

HPolytope vrep_to_hrep(const VPolytope& v) {
  check_dim(v.dim);
  std::vector<Vec> pts = v.vertices;
  std::sort(pts.begin(), pts.end(), [](const Vec& x, const Vec& y) { return compare_vec(x, y) < 0; });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec& x, const Vec& y) { return compare_vec(x, y) == 0; }),
            pts.end());
  int ar = affine_rank(pts);
  if (ar < v.dim)
    fail_input("degenerate hull: affine hull dimension is " + std::to_string(ar) +
               ", expected " + std::to_string(v.dim));
  int n = static_cast<int>(pts.size());
  std::vector<Halfspace> rows;
  std::vector<int> comb(static_cast<size_t>(v.dim));
  for (int i = 0; i < v.dim; ++i) comb[static_cast<size_t>(i)] = i;
  do {
    // Hyperplane <a,x> = b through the chosen points: kernel of [x | -1].
    Mat sys;
    for (int i : comb) {
      Vec row = pts[static_cast<size_t>(i)];
      row.push_back(Rat(-1));
      sys.push_back(row);
    }
    if (rank(sys) != v.dim) continue;  // affinely dependent subset
    Mat cols(static_cast<size_t>(v.dim) + 1);
    for (size_t j = 0; j <= static_cast<size_t>(v.dim); ++j) {
      cols[j] = Vec(sys.size());
      for (size_t i = 0; i < sys.size(); ++i) cols[j][i] = sys[i][j];
    }
    auto ker = kernel_vector(cols);
    if (!ker) continue;
    Vec a(ker->begin(), ker->end() - 1);
    Rat b = ker->back();
    if (is_zero(a)) continue;
    int side = 0;
    bool supporting = true;
    for (const Vec& q : pts) {
      int s = sgn(dot(a, q) - b);
      if (s == 0) continue;
      if (side == 0)
        side = s;
      else if (side != s) {
        supporting = false;
        break;
      }
    }
    if (!supporting || side == 0) continue;
    if (side > 0) {
      a = negate(a);
      b = -b;
    }
    rows.push_back(normalize_halfspace({a, b}));
  } while (next_combination(comb, n));
  std::sort(rows.begin(), rows.end(), halfspace_less);
  rows.erase(std::unique(rows.begin(), rows.end(), halfspace_eq), rows.end());
  HPolytope h;
  h.dim = v.dim;
  h.rows = std::move(rows);
  return h;
}

Body Body::from_hrep(HPolytope h, BodyRole role) {
  check_dim(h.dim);
  if (h.rows.empty()) fail_input("halfspace list is empty");
  for (auto& r : h.rows) {
    if (static_cast<int>(r.a.size()) != h.dim) fail_input("halfspace normal has wrong dimension");
    r = normalize_halfspace(std::move(r));
  }
  for (size_t i = 0; i < h.rows.size(); ++i)
    for (size_t j = i + 1; j < h.rows.size(); ++j)
      if (halfspace_eq(h.rows[i], h.rows[j]))
        fail_input("duplicate halfspace at rows " + std::to_string(i) + " and " + std::to_string(j));
  VPolytope v = hrep_to_vrep(h);
  int ar = affine_rank(v.vertices);
  if (ar < h.dim)
    fail_input("polytope is not full-dimensional: affine hull dimension is " + std::to_string(ar));
  // Irredundancy: every row must support a facet.
  for (size_t j = 0; j < h.rows.size(); ++j) {
    std::vector<Vec> tight;
    for (const Vec& q : v.vertices)
      if (dot(h.rows[j].a, q) == h.rows[j].b) tight.push_back(q);
    if (static_cast<int>(tight.size()) < h.dim || affine_rank(tight) != h.dim - 1)
      fail_input("row " + std::to_string(j) + " is redundant (does not define a facet)");
  }
  Body b;
  b.hrep = std::move(h);
  b.vrep = std::move(v);
  b.role = role;
  b.origin_interior_ = true;
  for (const auto& r : b.hrep.rows)
    if (r.b != 1) b.origin_interior_ = false;
  return b;
}

Body Body::from_vrep(VPolytope v, BodyRole role) {
  check_dim(v.dim);
  if (v.vertices.empty()) fail_input("vertex list is empty");
  for (const auto& q : v.vertices)
    if (static_cast<int>(q.size()) != v.dim) fail_input("vertex has wrong dimension");
  std::vector<Vec> pts = v.vertices;
  std::sort(pts.begin(), pts.end(), [](const Vec& x, const Vec& y) { return compare_vec(x, y) < 0; });
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    if (compare_vec(pts[i], pts[i + 1]) == 0) fail_input("duplicate vertex in vertex list");
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<Vec> others;
    for (size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (in_convex_hull(pts[i], others))
      fail_input("listed vertex " + std::to_string(i) + " is not extreme");
  }
  VPolytope sorted;
  sorted.dim = v.dim;
  sorted.vertices = std::move(pts);
  HPolytope h = vrep_to_hrep(sorted);
  Body b;
  b.hrep = std::move(h);
  b.vrep = std::move(sorted);
  b.role = role;
  b.origin_interior_ = true;
  for (const auto& r : b.hrep.rows)
    if (r.b != 1) b.origin_interior_ = false;
  return b;
}

Body Body::from_both(HPolytope h, VPolytope v, BodyRole role) {
  Body via_h = from_hrep(std::move(h), role);
  std::string why;
  if (!representations_synchronized(via_h.hrep, v, &why))
    fail_input("hrep and vrep disagree: " + why);
  return via_h;
}

Body Body::hull(int dim, std::vector<Vec> points, BodyRole role) {
  check_dim(dim);
  std::vector<Vec> ext = extreme_points(dim, std::move(points));
  VPolytope v;
  v.dim = dim;
  v.vertices = std::move(ext);
  return from_vrep(std::move(v), role);
}

Body polar_dual(const Body& b) {
  if (!b.origin_interior()) fail_input("polar dual requires the origin strictly interior");
  HPolytope h;
  h.dim = b.dim();
  for (const Vec& q : b.vertices()) h.rows.push_back(normalize_halfspace({q, Rat(1)}));
  std::sort(h.rows.begin(), h.rows.end(), halfspace_less);
  VPolytope v;
  v.dim = b.dim();
  for (const auto& r : b.facets()) v.vertices.push_back(r.a);
  std::sort(v.vertices.begin(), v.vertices.end(),
            [](const Vec& x, const Vec& y) { return compare_vec(x, y) < 0; });
  BodyRole role = b.role == BodyRole::table ? BodyRole::norm_body : BodyRole::table;
  return Body::from_both(std::move(h), std::move(v), role);
}

Rat gauge_norm(const Body& t, const Vec& w) {
  if (static_cast<int>(w.size()) != t.dim()) fail_input("gauge_norm: dimension mismatch");
  if (!t.origin_interior()) fail_input("gauge_norm: norm body must contain the origin strictly inside");
  Rat best;
  bool first = true;
  for (const Vec& p : t.vertices()) {
    Rat v = dot(p, w);
    if (first || v > best) {
      best = v;
      first = false;
    }
  }
  return best;
}

Rat polyline_length(const ClosedPolyline& p, const Body& t) {
  if (p.points.size() < 2) fail_input("closed polyline needs at least 2 points");
  Rat total = 0;
  for (size_t i = 0; i < p.points.size(); ++i) {
    const Vec& cur = p.points[i];
    const Vec& nxt = p.points[(i + 1) % p.points.size()];
    total += gauge_norm(t, sub(nxt, cur));
  }
  return total;
}

Body minkowski_sum(const Body& a, const Body& b) {
  if (a.dim() != b.dim()) fail_input("minkowski_sum: dimension mismatch");
  std::vector<Vec> sums;
  for (const Vec& x : a.vertices())
    for (const Vec& y : b.vertices()) sums.push_back(add(x, y));
  return Body::hull(a.dim(), std::move(sums), a.role);
}

Body scale_body(const Body& b, const Rat& s) {
  if (sgn(s) <= 0) fail_input("scale_body: ratio must be positive");
  HPolytope h;
  h.dim = b.dim();
  for (const auto& r : b.facets()) h.rows.push_back(normalize_halfspace({r.a, r.b * s}));
  VPolytope v;
  v.dim = b.dim();
  for (const Vec& q : b.vertices()) v.vertices.push_back(scale(q, s));
  Body out;
  out = b;
  out.hrep = std::move(h);
  out.vrep = std::move(v);
  return out;
}

Body translate_body(const Body& b, const Vec& t) {
  if (static_cast<int>(t.size()) != b.dim()) fail_input("translate_body: dimension mismatch");
  HPolytope h;
  h.dim = b.dim();
  for (const auto& r : b.facets()) h.rows.push_back(normalize_halfspace({r.a, r.b + dot(r.a, t)}));
  VPolytope v;
  v.dim = b.dim();
  for (const Vec& q : b.vertices()) v.vertices.push_back(add(q, t));
  // Interiority of the origin can change under translation, so rebuild.
  return Body::from_both(std::move(h), std::move(v), b.role);
}

Body reflect_body(const Body& b) {
  HPolytope h;
  h.dim = b.dim();
  for (const auto& r : b.facets()) h.rows.push_back(normalize_halfspace({negate(r.a), r.b}));
  VPolytope v;
  v.dim = b.dim();
  for (const Vec& q : b.vertices()) v.vertices.push_back(negate(q));
  std::sort(v.vertices.begin(), v.vertices.end(),
            [](const Vec& x, const Vec& y) { return compare_vec(x, y) < 0; });
  return Body::from_both(std::move(h), std::move(v), b.role);
}

std::vector<FaceSubset> face_subsets(const HPolytope& h) {
  VPolytope v = hrep_to_vrep(h);
  std::vector<std::vector<int>> actives;
  for (const Vec& q : v.vertices) actives.push_back(active_rows(h, q));
  std::map<std::vector<int>, std::vector<size_t>> members;  // subset -> vertex ids
  for (size_t vi = 0; vi < actives.size(); ++vi) {
    const auto& act = actives[vi];
    size_t k = act.size();
    if (k > 20) fail_input("vertex lies on more than 20 facets; unsupported degeneracy");
    for (size_t mask = 1; mask < (size_t{1} << k); ++mask) {
      std::vector<int> subset;
      for (size_t t = 0; t < k; ++t)
        if (mask & (size_t{1} << t)) subset.push_back(act[t]);
      members[subset].push_back(vi);
    }
  }
  std::vector<FaceSubset> out;
  for (auto& [subset, verts] : members) {
    Vec sum = zero_vec(h.dim);
    for (size_t vi : verts) sum = add(sum, v.vertices[vi]);
    out.push_back({subset, scale(sum, frac(1, static_cast<long>(verts.size())))});
  }
  std::sort(out.begin(), out.end(), [](const FaceSubset& x, const FaceSubset& y) {
    if (x.facets.size() != y.facets.size()) return x.facets.size() < y.facets.size();
    return x.facets < y.facets;
  });
  return out;
}

bool contains_point(const HPolytope& h, const Vec& x) {
  for (const auto& r : h.rows)
    if (dot(r.a, x) > r.b) return false;
  return true;
}

std::vector<int> active_rows(const HPolytope& h, const Vec& x) {
  std::vector<int> act;
  for (size_t j = 0; j < h.rows.size(); ++j)
    if (dot(h.rows[j].a, x) == h.rows[j].b) act.push_back(static_cast<int>(j));
  return act;
}

Vec interior_point(const HPolytope& h) {
  int n = h.dim;
  Vec obj = zero_vec(n + 1);
  obj[static_cast<size_t>(n)] = -1;  // maximize the slack variable
  auto p = LPProblem::minimize(obj);
  for (const auto& r : h.rows) {
    Vec row = r.a;
    row.push_back(Rat(1));
    p.add_le(row, r.b);
  }
  auto out = solve(p);
  if (out.status != LPStatus::optimal || sgn(out.x[static_cast<size_t>(n)]) <= 0)
    fail_input("polytope has no interior point");
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  Vec x = lex_min_optimum(p, out.value, order);
  x.resize(static_cast<size_t>(n));
  return x;
}

bool representations_synchronized(const HPolytope& h, const VPolytope& v, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (h.dim != v.dim) return fail("dimension mismatch");
  for (size_t i = 0; i < v.vertices.size(); ++i)
    if (!contains_point(h, v.vertices[i]))
      return fail("vertex " + std::to_string(i) + " violates a halfspace");
  VPolytope from_h = hrep_to_vrep(h);
  std::vector<Vec> a = from_h.vertices, b = v.vertices;
  auto less = [](const Vec& x, const Vec& y) { return compare_vec(x, y) < 0; };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  if (a.size() != b.size()) return fail("vertex counts differ");
  for (size_t i = 0; i < a.size(); ++i)
    if (compare_vec(a[i], b[i]) != 0) return fail("vertex sets differ");
  HPolytope from_v = vrep_to_hrep(v);
  std::vector<Halfspace> ra = from_v.rows, rb;
  for (const auto& r : h.rows) rb.push_back(normalize_halfspace(r));
  std::sort(ra.begin(), ra.end(), halfspace_less);
  std::sort(rb.begin(), rb.end(), halfspace_less);
  if (ra.size() != rb.size()) return fail("facet counts differ");
  for (size_t i = 0; i < ra.size(); ++i)
    if (!halfspace_eq(ra[i], rb[i])) return fail("facet sets differ");
  return true;
}

}  // namespace minkbill
