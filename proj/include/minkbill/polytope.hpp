#pragma once

#include <string>
#include <vector>

#include "minkbill/linalg.hpp"
#include "minkbill/rational.hpp"

namespace minkbill {

// Convex polytopes with synchronized halfspace and vertex representations,
// exact over the rationals. Conversions use exhaustive subset enumeration
// with exact rank tests, which is entirely adequate at the supported scale
// (dim 2..4, soft cap 6, up to ~16 facets).

struct Halfspace {
  Vec a;  // outward normal
  Rat b;  // offset: a.x <= b; stored normalized so b is 1, 0 or -1
};

struct HPolytope {
  int dim = 0;
  std::vector<Halfspace> rows;
};

struct VPolytope {
  int dim = 0;
  std::vector<Vec> vertices;  // extreme points, lexicographically sorted
};

enum class BodyRole { table, norm_body };

struct Body {
  HPolytope hrep;
  VPolytope vrep;
  BodyRole role = BodyRole::table;

  int dim() const { return hrep.dim; }
  const std::vector<Halfspace>& facets() const { return hrep.rows; }
  const std::vector<Vec>& vertices() const { return vrep.vertices; }
  bool origin_interior() const { return origin_interior_; }
  Body with_role(BodyRole r) const {
    Body b = *this;
    b.role = r;
    return b;
  }

  // Validating constructors. from_hrep/from_vrep reject unbounded, empty,
  // degenerate or redundant input; from_both additionally cross-checks that
  // the two representations describe the same set. hull() deduplicates and
  // drops non-extreme points instead of rejecting them.
  static Body from_hrep(HPolytope h, BodyRole role = BodyRole::table);
  static Body from_vrep(VPolytope v, BodyRole role = BodyRole::table);
  static Body from_both(HPolytope h, VPolytope v, BodyRole role = BodyRole::table);
  static Body hull(int dim, std::vector<Vec> points, BodyRole role = BodyRole::table);

 private:
  bool origin_interior_ = false;
};

// Normalizes a halfspace so the offset is 1, 0 or -1 (rows with b = 0 are
// scaled by the first nonzero normal entry instead).
Halfspace normalize_halfspace(Halfspace h);

// Exact conversions. Both throw Error(invalid_input) with a description on
// unbounded, empty, or lower-dimensional input (the latter names the affine
// hull dimension).
VPolytope hrep_to_vrep(const HPolytope& h);
HPolytope vrep_to_hrep(const VPolytope& v);

// Polar dual {y : <y,x> <= 1 for all x in b}; requires the origin strictly
// interior. Vertices map to facets and facets to vertices, so the result is
// exact and involutive.
Body polar_dual(const Body& b);

// Possibly asymmetric gauge: max over vertices p of t of <p, w>. Requires the
// origin strictly inside t; positive for w != 0.
Rat gauge_norm(const Body& t, const Vec& w);

struct ClosedPolyline {
  std::vector<Vec> points;  // cyclically ordered, indices mod size
};

// Sum of gauge_norm over directed cyclic edges; order- and
// orientation-sensitive because the gauge need not be symmetric.
Rat polyline_length(const ClosedPolyline& p, const Body& t);

Body minkowski_sum(const Body& a, const Body& b);

// Homothety with ratio s > 0 and translation; both preserve representation
// synchronization exactly.
Body scale_body(const Body& b, const Rat& s);
Body translate_body(const Body& b, const Vec& t);
Body reflect_body(const Body& b);  // x -> -x

struct FaceSubset {
  std::vector<int> facets;  // sorted facet indices, nonempty
  Vec witness;              // a point of the face they cut out
};

// Every nonempty facet-index set whose common tight locus meets the polytope,
// i.e. every subset of some vertex's active set. Canonically ordered by
// (size, lexicographic indices).
std::vector<FaceSubset> face_subsets(const HPolytope& h);

bool contains_point(const HPolytope& h, const Vec& x);
std::vector<int> active_rows(const HPolytope& h, const Vec& x);

// A deterministic point strictly inside h (deepest along the normalized rows,
// lexicographically refined). Fails on empty or lower-dimensional input.
Vec interior_point(const HPolytope& h);

// Cross-checks that hrep and vrep describe the same point set; returns false
// with a reason instead of throwing.
bool representations_synchronized(const HPolytope& h, const VPolytope& v, std::string* why = nullptr);

}  // namespace minkbill
