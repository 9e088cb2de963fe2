// Acceptance suite: end-to-end checks of the solver library, one criterion
// per block, one PASS/FAIL line each. Everything is exact; the only tolerance
// anywhere is the sampling oracle's 5% convergence allowance, which concerns
// the oracle's grid, never the solver.

#include <chrono>
#include <iostream>
#include <set>
#include <vector>

#include "minkbill/error.hpp"
#include "minkbill/oracle.hpp"
#include "minkbill/simplex_form.hpp"
#include "minkbill/solver.hpp"
#include "minkbill/suites.hpp"

using namespace minkbill;

namespace {

struct Tally {
  int runs = 0;
  int sound = 0;
};

Tally g_tally;

// Every solver call in criteria 1-6 funnels through here so criterion 7 can
// account for 100% of runs: fitting ratio exactly 1 and a valid reflection
// certificate.
BilliardSolution solve_checked(const Body& k, const Body& t) {
  auto sol = shortest_trajectory(k, t);
  ++g_tally.runs;
  bool ok = sol.fit.alpha == Rat(1) && fitting_certificate_ok(sol.fit, sol.trajectory.points, k) &&
            verify_reflection(sol).ok;
  if (ok) ++g_tally.sound;
  return sol;
}

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  std::cout << "CRITERION " << criterion << (pass ? " PASS  " : " FAIL  ") << what;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

Vec pt(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

Body unit_square() {
  return Body::hull(2, {pt({1, 1}), pt({1, -1}), pt({-1, 1}), pt({-1, -1})});
}

// Affinely regular hexagon with rational vertices; central symmetry is what
// the statement needs, so this stands in for the regular hexagon exactly.
Body hexagon() {
  return Body::hull(2, {pt({1, 0}), pt({0, 1}), pt({-1, 1}), pt({-1, 0}), pt({0, -1}), pt({1, -1})});
}

Body centroid_simplex(int dim) {
  std::vector<Vec> verts;
  for (int i = 0; i < dim; ++i) {
    Vec e = zero_vec(dim);
    e[static_cast<size_t>(i)] = 1;
    verts.push_back(e);
  }
  verts.push_back(Vec(static_cast<size_t>(dim), Rat(-1)));
  return Body::hull(dim, verts);
}

bool two_periodic_antipodal(const BilliardSolution& sol) {
  if (!is_two_periodic(sol)) return false;
  // The returned chord may sit anywhere on the optimal face (documented
  // tie-break); the centered copy of its direction must itself be a shortest
  // trajectory, which is the [-q, q] statement.
  Vec q = scale(sub(sol.trajectory.points[1], sol.trajectory.points[0]), frac(1, 2));
  std::vector<Vec> antipodal = {negate(q), q};
  return smallest_fitting_ratio(antipodal, sol.table).alpha == Rat(1) &&
         polyline_length(ClosedPolyline{antipodal}, sol.norm) == sol.xi;
}

void criterion1() {
  Rng rng(1001);
  bool pass = true;
  std::string detail;
  std::vector<std::pair<std::string, Body>> tables = {
      {"square", unit_square()}, {"hexagon", hexagon()},
      {"random symmetric octagon", random_symmetric_polygon(rng, 4, true)}};
  for (auto& [name, k] : tables) {
    auto sol = solve_checked(k, polar_dual(k));
    if (sol.xi != Rat(4) || !two_periodic_antipodal(sol)) {
      pass = false;
      detail += name + " xi=" + rat_to_string(sol.xi) + " ";
    }
  }
  report(1, pass, "xi_{K^o}(K) = 4 for symmetric tables, two-periodic antipodal chord", detail);
}

void criterion2() {
  bool pass = true;
  std::string detail;
  for (int dim : {2, 3, 4}) {
    auto sol = solve_checked(centroid_simplex(dim), polar_dual(centroid_simplex(dim)));
    Rat want = Rat(2) + frac(2, dim);
    if (sol.xi != want) {
      pass = false;
      detail += "dim " + std::to_string(dim) + " xi=" + rat_to_string(sol.xi) + " ";
    }
  }
  Rng rng(1002);
  int violations = 0;
  for (int i = 0; i < 25; ++i) {
    Body k = random_polygon_origin_interior(rng, 4 + static_cast<int>(rng() % 3));
    auto sol = solve_checked(k, polar_dual(k));
    if (sol.xi < Rat(3)) ++violations;
  }
  if (violations) {
    pass = false;
    detail += std::to_string(violations) + " polygons below 3";
  }
  report(2, pass, "xi = 2 + 2/n on centroid simplices (dims 2,3,4); 25 random polygons >= 3",
         detail);
}

void criterion3() {
  bool pass = true;
  std::string detail;
  for (int dim : {2, 3}) {
    Body L = centroid_simplex(dim);
    auto spec = make_simplex_spec(L.vertices());
    auto sol = solve_checked(L, polar_dual(L));
    bool matched = false;
    for (const auto& tr : all_orders_trajectories(spec)) {
      for (size_t rot = 0; rot < tr.points.size() && !matched; ++rot) {
        bool same = sol.trajectory.points.size() == tr.points.size();
        for (size_t i = 0; same && i < tr.points.size(); ++i)
          same = compare_vec(sol.trajectory.points[(i + rot) % tr.points.size()], tr.points[i]) == 0;
        matched = same;
      }
      if (matched) break;
    }
    // Per-edge steps must be m_i / M exactly; for the centroid simplex all
    // segment gauge lengths equal m_i/M * gauge(v_i) = 1/(n+1) / M.
    Rat step = spec.masses[0] / spec.pair_product_sum;
    for (const Rat& s : sol.segment_lengths)
      if (s != step) matched = false;
    if (!matched) {
      pass = false;
      detail += "dim " + std::to_string(dim) + " mismatch ";
    }
  }
  Rng rng(1003);
  for (int i = 0; i < 50; ++i) {
    int dim = 2 + (i % 2);
    auto spec = make_simplex_spec(random_simplex_origin_interior(rng, dim));
    auto tr = closed_form_trajectory(spec, [&] {
      std::vector<int> ord;
      for (int j = 0; j <= dim; ++j) ord.push_back(j);
      return ord;
    }());
    if (cevian_identity(spec, tr) != Rat(2)) {
      pass = false;
      detail += "cevian violation at instance " + std::to_string(i) + " ";
    }
  }
  report(3, pass, "solver matches the closed form on centroid simplices; Cevian sum = 2 on 50",
         detail);
}

void criterion4() {
  Rng rng(1004);
  bool pass = true;
  std::string detail;
  int bad_mono = 0, bad_sym = 0, bad_bm = 0, bad_hom = 0;
  for (int i = 0; i < 25; ++i) {
    Body outer = random_polygon_origin_interior(rng, 6);
    Body inner = random_body_inside(rng, outer);
    Body t = random_polygon_origin_interior(rng, 5, BodyRole::norm_body);
    if (solve_checked(inner, t).xi > solve_checked(outer, t).xi) ++bad_mono;
  }
  for (int i = 0; i < 25; ++i) {
    Body k = random_polygon_origin_interior(rng, 6);
    Body t = random_polygon_origin_interior(rng, 5, BodyRole::norm_body);
    if (solve_checked(k, t).xi !=
        solve_checked(t.with_role(BodyRole::table), k.with_role(BodyRole::norm_body)).xi)
      ++bad_sym;
  }
  for (int i = 0; i < 25; ++i) {
    Body k = random_polygon_origin_interior(rng, 4);
    Body l = random_polygon_origin_interior(rng, 4);
    Body t = random_polygon_origin_interior(rng, 4, BodyRole::norm_body);
    if (solve_checked(minkowski_sum(k, l), t).xi < solve_checked(k, t).xi + solve_checked(l, t).xi)
      ++bad_bm;
  }
  for (int i = 0; i < 25; ++i) {
    Body k = random_polygon_origin_interior(rng, 5);
    Body t = random_polygon_origin_interior(rng, 4, BodyRole::norm_body);
    Rat s = random_fraction(rng, 1, 5, 3) + frac(1, 7);
    Rat xi = solve_checked(k, t).xi;
    if (solve_checked(scale_body(k, s), t).xi != s * xi) ++bad_hom;
    if (solve_checked(k, scale_body(t, s)).xi != s * xi) ++bad_hom;
  }
  if (bad_mono || bad_sym || bad_bm || bad_hom) {
    pass = false;
    detail = "monotonicity " + std::to_string(bad_mono) + ", symmetry " + std::to_string(bad_sym) +
             ", brunn-minkowski " + std::to_string(bad_bm) + ", homogeneity " +
             std::to_string(bad_hom);
  }
  report(4, pass,
         "monotonicity, symmetry, Brunn-Minkowski, homogeneity: 25 exact instances each, zero "
         "violations",
         detail);
}

void criterion5() {
  Body rect = Body::hull(2, {pt({1, 2}), pt({1, -2}), pt({-1, 2}), pt({-1, -2})});
  Body cross = Body::hull(
      2, {pt({1, 0}), pt({-1, 0}), pt({0, 1}), pt({0, -1})}, BodyRole::norm_body);
  auto base = solve_checked(rect, cross);
  bool pass = base.xi == Rat(4) && is_two_periodic(base);
  std::string detail = "xi(K)=" + rat_to_string(base.xi);
  Body ball = polar_dual(cross);
  for (const Rat& lam : {frac(1, 2), Rat(1), Rat(3)}) {
    auto sol = solve_checked(minkowski_sum(rect, scale_body(ball, lam)), cross);
    if (!is_two_periodic(sol) || sol.xi != base.xi + 4 * lam) {
      pass = false;
      detail += " lambda=" + rat_to_string(lam) + " xi=" + rat_to_string(sol.xi);
    }
  }
  report(5, pass, "K + lambda T^o stays two-periodic with xi = xi(K) + 4 lambda", detail);
}

void criterion6() {
  Rng rng(1006);
  bool pass = true;
  std::string detail;
  for (int i = 0; i < 10; ++i) {
    Body k = random_polygon_origin_interior(rng, 5);
    Body t = random_polygon_origin_interior(rng, 4, BodyRole::norm_body);
    Rat exact = solve_checked(k, t).xi;
    Rat prev;
    bool first = true;
    for (int r : {8, 16, 32, 64}) {
      OracleConfig cfg;
      cfg.resolution = r;
      cfg.max_m = 3;
      auto res = oracle_xi(k, t, cfg);
      if (res.value < exact || (!first && res.value > prev)) {
        pass = false;
        detail += "instance " + std::to_string(i) + " at r=" + std::to_string(r) + " ";
      }
      prev = res.value;
      first = false;
    }
    if (prev - exact > exact / 20) {
      pass = false;
      detail += "instance " + std::to_string(i) + " gap " + rat_to_string(prev - exact) + " ";
    }
  }
  report(6, pass, "oracle dominates the solver at every resolution; gap <= 5% at resolution 64",
         detail);
}

void criterion7() {
  bool pass = g_tally.runs > 0 && g_tally.sound == g_tally.runs;
  report(7, pass, "all solver outputs have fitting ratio exactly 1 and a reflection certificate",
         std::to_string(g_tally.sound) + "/" + std::to_string(g_tally.runs) + " runs sound");
}

void criterion8() {
  Rng rng(1008);
  bool pass = true;
  std::string detail;
  for (int i = 0; i < 25; ++i) {
    int dim = 2 + (i % 2);
    auto spec = make_simplex_spec(random_simplex_origin_interior(rng, dim));
    auto all = all_orders_trajectories(spec);
    std::multiset<Rat> base(all[0].steps.begin(), all[0].steps.end());
    for (const auto& tr : all) {
      if (std::multiset<Rat>(tr.steps.begin(), tr.steps.end()) != base) {
        pass = false;
        detail += "steps differ at instance " + std::to_string(i) + " ";
      }
      try {
        midpoint_hyperplanes_concurrent(spec, tr);
      } catch (const Error& e) {
        pass = false;
        detail += "concurrency failed at instance " + std::to_string(i) + " ";
      }
    }
  }
  report(8, pass,
         "all cyclic orders share the step multiset; midpoint hyperplanes concurrent (25 "
         "simplices)",
         detail);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  auto secs =
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << " ("
            << (8 - g_failures) << "/8 criteria, " << secs << " s)" << std::endl;
  return g_failures == 0 ? 0 : 1;
}
