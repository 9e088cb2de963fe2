#include <algorithm>

#include "doctest.h"
#include "minkbill/error.hpp"
#include "minkbill/patterns.hpp"

using namespace minkbill;

namespace {

Vec pt(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

Body unit_square() {  // facets: 0: x<=1, 1: -x<=1, 2: y<=1, 3: -y<=1
  HPolytope h;
  h.dim = 2;
  h.rows = {{pt({1, 0}), Rat(1)}, {pt({-1, 0}), Rat(1)}, {pt({0, 1}), Rat(1)}, {pt({0, -1}), Rat(1)}};
  return Body::from_hrep(h);
}

Body paper_triangle() { return Body::hull(2, {pt({1, 0}), pt({0, 1}), pt({-1, -1})}); }

bool has_pattern(const std::vector<ContactPattern>& pats, std::vector<std::vector<int>> slots) {
  // Compare up to cyclic rotation.
  for (const auto& p : pats) {
    if (p.slots.size() != slots.size()) continue;
    for (size_t s = 0; s < slots.size(); ++s) {
      std::vector<std::vector<int>> rot;
      for (size_t i = 0; i < slots.size(); ++i) rot.push_back(slots[(i + s) % slots.size()]);
      if (rot == p.slots) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("square two-bounce patterns") {
  Body sq = unit_square();
  auto pats = enumerate_patterns(sq, 2, true);
  CHECK(has_pattern(pats, {{0}, {1}}));  // left-right
  CHECK(has_pattern(pats, {{2}, {3}}));  // bottom-top
  CHECK(!has_pattern(pats, {{1}, {2}}));  // normals cannot surround
  CHECK(!has_pattern(pats, {{0}, {2}}));
  // Corner-corner patterns pass the surrounding condition too.
  CHECK(has_pattern(pats, {{0, 2}, {1, 3}}));
  // ... but are dominated for the solver sweep.
  auto minimal = enumerate_patterns(sq, 2, true, PatternFilter::solver_minimal);
  CHECK(!has_pattern(minimal, {{0, 2}, {1, 3}}));
  CHECK(has_pattern(minimal, {{0}, {1}}));
  CHECK(minimal.size() < pats.size());
}

TEST_CASE("triangle needs a vertex slot for two bounces") {
  Body tri = paper_triangle();
  auto pats = enumerate_patterns(tri, 2, true);
  for (const auto& p : pats) {
    // No two facet normals of this triangle are antipodal, so no
    // singleton-singleton pattern can pass.
    CHECK((p.slots[0].size() >= 2 || p.slots[1].size() >= 2));
  }
  CHECK(has_pattern(pats, {{0, 1}, {2}}));
  CHECK(!pats.empty());
}

TEST_CASE("all-singleton simplex pattern at m = dim+1") {
  Body tri = paper_triangle();
  auto pats = enumerate_patterns(tri, 3, true);
  CHECK(has_pattern(pats, {{0}, {1}, {2}}));
  CHECK(has_pattern(pats, {{0}, {2}, {1}}));  // opposite orientation
  auto undirected = enumerate_patterns(tri, 3, false);
  CHECK(undirected.size() < pats.size());
}

TEST_CASE("surrounding certificates are exact") {
  Body sq = unit_square();
  SurroundingChecker checker(sq);
  CHECK(checker.surrounding(0b0011));
  CHECK(!checker.surrounding(0b0110));
  CHECK(!checker.surrounding(0b0001));
  auto lam = checker.certificate(0b1111);
  REQUIRE(lam.has_value());
  Rat total = 0;
  Vec combo = zero_vec(2);
  for (size_t j = 0; j < lam->size(); ++j) {
    CHECK(sgn((*lam)[j]) >= 0);
    total += (*lam)[j];
    combo = add(combo, scale(sq.facets()[j].a, (*lam)[j]));
  }
  CHECK(total == Rat(1));
  CHECK(is_zero(combo));
}

TEST_CASE("pattern slot counts are validated") {
  Body sq = unit_square();
  CHECK_THROWS_AS(static_cast<void>(enumerate_patterns(sq, 1, true)), Error);
  CHECK_THROWS_AS(static_cast<void>(enumerate_patterns(sq, 4, true)), Error);
}
