#include "minkbill/suites.hpp"

#include <algorithm>
#include <set>

#include "minkbill/error.hpp"
#include "minkbill/oracle.hpp"
#include "minkbill/simplex_form.hpp"
#include "minkbill/solver.hpp"

namespace minkbill {

Rat random_fraction(Rng& rng, int lo, int hi, int max_den) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, max_den);
  return frac(num(rng), den(rng));
}

Body random_symmetric_polygon(Rng& rng, int pairs, bool require_exact_vertex_count) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    std::vector<Vec> pts;
    for (int i = 0; i < pairs; ++i) {
      Vec p = {random_fraction(rng, -6, 6, 4), random_fraction(rng, -6, 6, 4)};
      if (is_zero(p)) p[0] = 1;
      pts.push_back(p);
      pts.push_back(negate(p));
    }
    try {
      Body b = Body::hull(2, pts);
      if (require_exact_vertex_count && static_cast<int>(b.vertices().size()) != 2 * pairs)
        continue;
      if (!b.origin_interior()) continue;
      return b;
    } catch (const Error&) {
      continue;
    }
  }
  fail_internal("could not generate a symmetric polygon");
}

Body random_polygon_origin_interior(Rng& rng, int points, BodyRole role) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    std::vector<Vec> pts;
    for (int i = 0; i < points; ++i)
      pts.push_back({random_fraction(rng, -6, 6, 3), random_fraction(rng, -6, 6, 3)});
    try {
      Body raw = Body::hull(2, pts);
      // Centering on the vertex centroid puts the origin strictly inside.
      Vec c = zero_vec(2);
      for (const Vec& v : raw.vertices()) c = add(c, v);
      c = scale(c, frac(1, static_cast<long>(raw.vertices().size())));
      Body b = translate_body(raw, negate(c)).with_role(role);
      if (!b.origin_interior()) continue;
      return b;
    } catch (const Error&) {
      continue;
    }
  }
  fail_internal("could not generate a polygon with interior origin");
}

Body random_body_inside(Rng& rng, const Body& outer) {
  std::uniform_int_distribution<int> wdist(0, 8);
  for (int attempt = 0; attempt < 500; ++attempt) {
    std::vector<Vec> pts;
    int want = 3 + static_cast<int>(rng() % 3);
    for (int i = 0; i < want; ++i) {
      // Random rational convex combination of the outer vertices.
      Vec weights(outer.vertices().size());
      long total = 0;
      for (auto& w : weights) {
        long draw = wdist(rng);
        w = Rat(draw);
        total += draw;
      }
      if (total == 0) continue;
      Vec p = zero_vec(outer.dim());
      for (size_t k = 0; k < weights.size(); ++k)
        p = add(p, scale(outer.vertices()[k], weights[k] / total));
      pts.push_back(std::move(p));
    }
    try {
      return Body::hull(outer.dim(), pts, outer.role);
    } catch (const Error&) {
      continue;
    }
  }
  fail_internal("could not generate a nested body");
}

std::vector<Vec> random_simplex_origin_interior(Rng& rng, int dim) {
  std::uniform_int_distribution<int> mass(1, 9), coord(-6, 6), den(1, 4);
  for (int attempt = 0; attempt < 500; ++attempt) {
    Vec masses;
    Rat total = 0;
    for (int i = 0; i <= dim; ++i) {
      masses.push_back(Rat(mass(rng)));
      total += masses.back();
    }
    for (Rat& m : masses) m /= total;
    std::vector<Vec> verts;
    for (int i = 0; i < dim; ++i) {
      Vec v;
      for (int c = 0; c < dim; ++c) v.push_back(frac(coord(rng), den(rng)));
      verts.push_back(std::move(v));
    }
    // The last vertex balances the chosen masses, so the origin is interior
    // by construction.
    Vec last = zero_vec(dim);
    for (int i = 0; i < dim; ++i)
      last = sub(last, scale(verts[static_cast<size_t>(i)], masses[static_cast<size_t>(i)]));
    last = scale(last, 1 / masses[static_cast<size_t>(dim)]);
    verts.push_back(std::move(last));
    try {
      barycentric_of_origin(verts);
      return verts;
    } catch (const Error&) {
      continue;
    }
  }
  fail_internal("could not generate a simplex with interior origin");
}

namespace {

std::string rstr(const Rat& x) { return rat_to_string(x); }

void record(SuiteReport& rep, const std::string& desc, bool ok, const std::string& detail) {
  rep.instances.push_back({desc, ok, detail});
  if (!ok) ++rep.violations;
}

void suite_monotonicity(SuiteReport& rep, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    Body outer = random_polygon_origin_interior(rng, 6);
    Body inner = random_body_inside(rng, outer);
    Body t = random_polygon_origin_interior(rng, 5, BodyRole::norm_body);
    bool contained = true;
    for (const Vec& v : inner.vertices())
      if (!contains_point(outer.hrep, v)) contained = false;
    Rat xi_inner = shortest_trajectory(inner, t).xi;
    Rat xi_outer = shortest_trajectory(outer, t).xi;
    bool ok = contained && xi_inner <= xi_outer;
    record(rep, "instance " + std::to_string(i), ok,
           "xi(K)=" + rstr(xi_inner) + " xi(L)=" + rstr(xi_outer));
  }
}

void suite_symmetry(SuiteReport& rep, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    Body k = random_polygon_origin_interior(rng, 6);
    Body t = random_polygon_origin_interior(rng, 5, BodyRole::norm_body);
    Rat a = shortest_trajectory(k, t).xi;
    Rat b = shortest_trajectory(t.with_role(BodyRole::table), k.with_role(BodyRole::norm_body)).xi;
    record(rep, "instance " + std::to_string(i), a == b,
           "xi_T(K)=" + rstr(a) + " xi_K(T)=" + rstr(b));
  }
}

void suite_brunn_minkowski(SuiteReport& rep, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    Body k = random_polygon_origin_interior(rng, 4);
    Body l = random_polygon_origin_interior(rng, 4);
    Body t = random_polygon_origin_interior(rng, 4, BodyRole::norm_body);
    Body sum = minkowski_sum(k, l);
    Rat xi_sum = shortest_trajectory(sum, t).xi;
    Rat xi_k = shortest_trajectory(k, t).xi;
    Rat xi_l = shortest_trajectory(l, t).xi;
    record(rep, "instance " + std::to_string(i), xi_sum >= xi_k + xi_l,
           "xi(K+L)=" + rstr(xi_sum) + " xi(K)+xi(L)=" + rstr(xi_k + xi_l));
  }
}

void suite_symmetric_polar_4(SuiteReport& rep, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    Body k = random_symmetric_polygon(rng, 3 + static_cast<int>(rng() % 2));
    auto sol = shortest_trajectory(k, polar_dual(k));
    bool ok = sol.xi == Rat(4) && is_two_periodic(sol);
    std::string detail = "xi=" + rstr(sol.xi) + " bounces=" + std::to_string(sol.bounce_count);
    if (ok) {
      // The centered copy of the returned chord is itself a minimizer.
      Vec q = scale(sub(sol.trajectory.points[1], sol.trajectory.points[0]), frac(1, 2));
      std::vector<Vec> antipodal = {negate(q), q};
      ok = smallest_fitting_ratio(antipodal, k).alpha == Rat(1) &&
           polyline_length(ClosedPolyline{antipodal}, sol.norm) == Rat(4);
      if (!ok) detail += " antipodal-witness-failed";
    }
    record(rep, "instance " + std::to_string(i), ok, detail);
  }
}

void suite_nonsymmetric_bound(SuiteReport& rep, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    Body k = random_polygon_origin_interior(rng, 4 + static_cast<int>(rng() % 3));
    Rat xi = shortest_trajectory(k, polar_dual(k)).xi;
    record(rep, "instance " + std::to_string(i), xi >= Rat(3), "xi=" + rstr(xi));
  }
}

void suite_two_periodic_stability(SuiteReport& rep, Rng& rng, int count) {
  const Rat lambdas[] = {frac(1, 2), Rat(1), Rat(3)};
  for (int i = 0; i < count; ++i) {
    Body k, t;
    if (i % 2 == 0) {
      // Axis rectangle with the cross-polytope norm: 2-periodic with xi = 4a.
      Rat a = abs(random_fraction(rng, 1, 4, 3)) + frac(1, 7);
      Rat b = a + abs(random_fraction(rng, 1, 3, 2)) + frac(1, 5);
      k = Body::hull(2, {Vec{a, b}, Vec{a, -b}, Vec{-a, b}, Vec{-a, -b}});
      t = Body::hull(2, {Vec{Rat(1), Rat(0)}, Vec{Rat(-1), Rat(0)}, Vec{Rat(0), Rat(1)},
                         Vec{Rat(0), Rat(-1)}},
                     BodyRole::norm_body);
    } else {
      // Symmetric polygon with its polar: 2-periodic with xi = 4.
      k = random_symmetric_polygon(rng, 3);
      t = polar_dual(k);
    }
    auto base = shortest_trajectory(k, t);
    bool ok = is_two_periodic(base);
    std::string detail = "xi=" + rstr(base.xi);
    if (ok) {
      Body ball = polar_dual(t);  // unit ball of the norm
      for (const Rat& lam : lambdas) {
        Body grown = minkowski_sum(k, scale_body(ball, lam));
        auto sol = shortest_trajectory(grown, t);
        if (!is_two_periodic(sol) || sol.xi != base.xi + 4 * lam) {
          ok = false;
          detail += " failed at lambda=" + rstr(lam) + " xi=" + rstr(sol.xi);
          break;
        }
      }
    }
    record(rep, "instance " + std::to_string(i), ok, detail);
  }
}

void suite_simplex_closed_form(SuiteReport& rep, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    int dim = 2 + (i % 2);
    auto verts = random_simplex_origin_interior(rng, dim);
    auto s = make_simplex_spec(verts);
    Body L = Body::hull(dim, verts);
    Body pol = polar_dual(L);
    bool ok = true;
    std::string detail;
    Rat inv_m = 1 / s.pair_product_sum;
    if (inv_m < Rat(2) + frac(2, dim)) {
      ok = false;
      detail = "1/M below the bound";
    }
    auto all = all_orders_trajectories(s);
    std::multiset<Rat> base_steps;
    for (size_t oi = 0; oi < all.size() && ok; ++oi) {
      const auto& tr = all[oi];
      for (size_t j = 0; j < tr.points.size(); ++j) {
        Vec nrm = simplex_facet_normal(s, tr.order[j]);
        if (dot(nrm, tr.points[j]) != Rat(1)) ok = false;  // q_j on its facet
        if (tr.steps[j] != s.masses[static_cast<size_t>(tr.order[j])] / s.pair_product_sum)
          ok = false;
      }
      if (polyline_length(ClosedPolyline{tr.points}, pol) != inv_m) ok = false;
      if (cevian_identity(s, tr) != Rat(2)) ok = false;
      std::multiset<Rat> steps(tr.steps.begin(), tr.steps.end());
      if (oi == 0)
        base_steps = steps;
      else if (steps != base_steps)
        ok = false;
      if (ok) midpoint_hyperplanes_concurrent(s, tr);  // throws on failure
      if (!ok) detail = "order " + std::to_string(oi) + " failed";
    }
    record(rep, "dim " + std::to_string(dim) + " instance " + std::to_string(i), ok, detail);
  }
}

void suite_oracle_agreement(SuiteReport& rep, Rng& rng, int count) {
  for (int i = 0; i < count; ++i) {
    Body k = random_polygon_origin_interior(rng, 5);
    Body t = random_polygon_origin_interior(rng, 4, BodyRole::norm_body);
    Rat exact = shortest_trajectory(k, t).xi;
    bool ok = true;
    std::string detail = "xi=" + rstr(exact);
    Rat prev;
    bool first = true;
    for (int r : {8, 16, 32, 64}) {
      OracleConfig cfg;
      cfg.resolution = r;
      cfg.max_m = 3;
      auto res = oracle_xi(k, t, cfg);
      if (res.value < exact) {
        ok = false;
        detail += " oracle below solver at r=" + std::to_string(r);
        break;
      }
      if (!first && res.value > prev) {
        ok = false;
        detail += " not monotone at r=" + std::to_string(r);
        break;
      }
      prev = res.value;
      first = false;
    }
    if (ok && prev - exact > exact / 20) {
      ok = false;
      detail += " gap=" + rstr(prev - exact) + " above 5%";
    }
    record(rep, "instance " + std::to_string(i), ok, detail);
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"monotonicity",       "symmetry",         "brunn-minkowski",
          "symmetric-polar-4",  "nonsymmetric-bound", "two-periodic-stability",
          "simplex-closed-form", "oracle-agreement"};
}

SuiteReport run_suite(const std::string& name, uint64_t seed, int count) {
  SuiteReport rep;
  rep.suite = name;
  rep.seed = seed;
  rep.count = count;
  Rng rng(seed);
  if (name == "monotonicity")
    suite_monotonicity(rep, rng, count);
  else if (name == "symmetry")
    suite_symmetry(rep, rng, count);
  else if (name == "brunn-minkowski")
    suite_brunn_minkowski(rep, rng, count);
  else if (name == "symmetric-polar-4")
    suite_symmetric_polar_4(rep, rng, count);
  else if (name == "nonsymmetric-bound")
    suite_nonsymmetric_bound(rep, rng, count);
  else if (name == "two-periodic-stability")
    suite_two_periodic_stability(rep, rng, count);
  else if (name == "simplex-closed-form")
    suite_simplex_closed_form(rep, rng, count);
  else if (name == "oracle-agreement")
    suite_oracle_agreement(rep, rng, count);
  else
    fail_input("unknown suite: " + name);
  return rep;
}

}  // namespace minkbill
