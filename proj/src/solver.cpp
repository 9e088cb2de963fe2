#include "minkbill/solver.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

#include "minkbill/error.hpp"
#include "minkbill/lp.hpp"

namespace minkbill {

namespace {

// Variables: q_0..q_{m-1} (d coordinates each), then s_0..s_{m-1}.
LPProblem build_pattern_lp(const Body& table, const Body& norm, const ContactPattern& pattern,
                           bool contain_in_table) {
  int d = table.dim();
  int m = static_cast<int>(pattern.slots.size());
  int nq = m * d;
  Vec obj = zero_vec(nq + m);
  for (int i = 0; i < m; ++i) obj[static_cast<size_t>(nq + i)] = 1;
  auto p = LPProblem::minimize(obj);
  for (int i = 0; i < m; ++i) {
    int nxt = (i + 1) % m;
    for (const Vec& v : norm.vertices()) {
      // s_i - <v, q_{i+1}> + <v, q_i> >= 0
      Vec row = zero_vec(nq + m);
      for (int c = 0; c < d; ++c) {
        row[static_cast<size_t>(i * d + c)] += v[static_cast<size_t>(c)];
        row[static_cast<size_t>(nxt * d + c)] -= v[static_cast<size_t>(c)];
      }
      row[static_cast<size_t>(nq + i)] = 1;
      p.add_ge(row, Rat(0));
    }
    for (int j : pattern.slots[static_cast<size_t>(i)]) {
      const auto& f = table.facets()[static_cast<size_t>(j)];
      Vec row = zero_vec(nq + m);
      for (int c = 0; c < d; ++c) row[static_cast<size_t>(i * d + c)] = f.a[static_cast<size_t>(c)];
      p.add_eq(row, f.b);
    }
    if (contain_in_table) {
      for (const auto& f : table.facets()) {
        Vec row = zero_vec(nq + m);
        for (int c = 0; c < d; ++c)
          row[static_cast<size_t>(i * d + c)] = f.a[static_cast<size_t>(c)];
        p.add_le(row, f.b);
      }
    }
  }
  return p;
}

ClosedPolyline extract_points(const Vec& x, int m, int d) {
  ClosedPolyline out;
  for (int i = 0; i < m; ++i)
    out.points.emplace_back(x.begin() + i * d, x.begin() + (i + 1) * d);
  return out;
}

void check_slots(const Body& table, const ContactPattern& pattern) {
  int m = static_cast<int>(pattern.slots.size());
  if (m < 2) fail_input("contact pattern needs at least 2 slots");
  for (const auto& slot : pattern.slots) {
    if (slot.empty()) fail_input("contact pattern has an empty slot");
    for (int j : slot)
      if (j < 0 || j >= static_cast<int>(table.facets().size()))
        fail_input("contact pattern references facet " + std::to_string(j) + " out of range");
  }
}

uint32_t union_mask(const ContactPattern& pattern) {
  uint32_t u = 0;
  for (const auto& slot : pattern.slots)
    for (int j : slot) u |= uint32_t{1} << j;
  return u;
}

int thread_count(const SolverOptions& opts, size_t work) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  int t = opts.threads > 0 ? opts.threads : (hw > 0 ? hw : 1);
  t = std::min<int>(t, 8);
  t = std::min<int>(t, static_cast<int>(work));
  return std::max(t, 1);
}

}  // namespace

std::optional<PatternOptimum> pattern_min_length(const Body& table, const Body& norm,
                                                 const ContactPattern& pattern) {
  check_slots(table, pattern);
  SurroundingChecker checker(table);
  if (!checker.surrounding(union_mask(pattern)))
    fail_input("contact pattern does not satisfy the surrounding condition");
  auto lp = build_pattern_lp(table, norm, pattern, /*contain_in_table=*/false);
  auto out = solve(lp);
  if (out.status == LPStatus::infeasible) return std::nullopt;
  if (out.status == LPStatus::unbounded)
    fail_internal("pattern LP unbounded for a surrounding pattern");
  int m = static_cast<int>(pattern.slots.size());
  return PatternOptimum{out.value, extract_points(out.x, m, table.dim())};
}

ClosedPolyline dedupe_fake_vertices(const ClosedPolyline& p, const Body& norm) {
  if (p.points.size() < 2) fail_input("closed polyline needs at least 2 points");
  Rat before = polyline_length(p, norm);
  std::vector<Vec> pts = p.points;
  bool changed = true;
  while (changed) {
    changed = false;
    // Consecutive repeats (cyclically).
    for (size_t i = 0; i < pts.size();) {
      if (pts.size() < 2) fail_input("polyline degenerates below 2 points");
      size_t nxt = (i + 1) % pts.size();
      if (compare_vec(pts[i], pts[nxt]) == 0) {
        pts.erase(pts.begin() + static_cast<long>(nxt > i ? nxt : i));
        changed = true;
      } else {
        ++i;
      }
    }
    if (pts.size() < 2) fail_input("polyline degenerates below 2 points");
    // Positively proportional incoming/outgoing directions.
    for (size_t i = 0; i < pts.size(); ++i) {
      size_t prev = (i + pts.size() - 1) % pts.size();
      size_t nxt = (i + 1) % pts.size();
      Vec in = sub(pts[i], pts[prev]);
      Vec out = sub(pts[nxt], pts[i]);
      if (is_zero(in) || is_zero(out)) continue;
      size_t c = 0;
      while (sgn(in[c]) == 0) ++c;
      if (sgn(out[c]) == 0) continue;
      Rat ratio = out[c] / in[c];
      if (sgn(ratio) <= 0) continue;
      if (compare_vec(out, scale(in, ratio)) == 0) {
        pts.erase(pts.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  if (pts.size() < 2) fail_input("polyline degenerates below 2 points");
  ClosedPolyline out{std::move(pts)};
  if (polyline_length(out, norm) != before)
    fail_internal("fake-vertex removal changed the length");
  return out;
}

BilliardSolution shortest_trajectory(const Body& table, const Body& norm,
                                     const SolverOptions& opts) {
  if (table.dim() != norm.dim()) fail_input("table and norm body dimensions differ");
  if (!norm.origin_interior())
    fail_input("norm body must contain the origin strictly inside");

  // The length functional and the fitting test are translation invariant, so
  // a table without the origin inside is solved in a translated frame and the
  // trajectory is shifted back.
  Vec shift = zero_vec(table.dim());
  Body work = table;
  if (!table.origin_interior()) {
    shift = interior_point(table.hrep);
    work = translate_body(table, negate(shift));
  }

  int d = work.dim();
  int top_m = d + 1;
  if (opts.max_m > 0) top_m = std::min(top_m, std::max(opts.max_m, 2));

  struct Candidate {
    Rat value;
    int m;
    int order;  // global deterministic order: (m, enumeration index)
    ContactPattern pattern;
  };
  std::vector<Candidate> cands;
  int order = 0;
  for (int m = 2; m <= top_m; ++m) {
    auto patterns = enumerate_patterns(work, m, /*order_sensitive=*/true,
                                       PatternFilter::solver_minimal);
    std::vector<std::optional<Rat>> values(patterns.size());
    int nthreads = thread_count(opts, patterns.size());
    std::vector<std::future<void>> futs;
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next.fetch_add(1); i < patterns.size(); i = next.fetch_add(1)) {
        auto lp = build_pattern_lp(work, norm, patterns[i], false);
        auto out = solve(lp);
        if (out.status == LPStatus::unbounded)
          fail_internal("pattern LP unbounded for a surrounding pattern");
        if (out.status == LPStatus::optimal) values[i] = out.value;
      }
    };
    if (nthreads <= 1) {
      worker();
    } else {
      for (int t = 0; t < nthreads; ++t) futs.push_back(std::async(std::launch::async, worker));
      for (auto& f : futs) f.get();
    }
    for (size_t i = 0; i < patterns.size(); ++i, ++order)
      if (values[i]) cands.push_back({*values[i], m, order, patterns[i]});
  }
  if (cands.empty()) fail_internal("no surrounding pattern produced a finite optimum");

  Rat best = cands[0].value;
  for (const auto& c : cands) best = std::min(best, c.value);
  std::vector<const Candidate*> tied;
  for (const auto& c : cands)
    if (c.value == best) tied.push_back(&c);
  std::sort(tied.begin(), tied.end(),
            [](const Candidate* a, const Candidate* b) { return a->order < b->order; });

  // The winning trajectory is re-solved with the bounce points constrained
  // inside the table: the optimal trajectory can always be translated into
  // that position, so some tied pattern keeps the same value, and the optimal
  // face becomes compact so the lexicographic refinement is well defined.
  const Candidate* win = nullptr;
  Vec win_x;
  for (const Candidate* c : tied) {
    auto lp = build_pattern_lp(work, norm, c->pattern, true);
    auto out = solve(lp);
    if (out.status == LPStatus::optimal && out.value == best) {
      int nq = c->m * d;
      std::vector<int> coord_order(static_cast<size_t>(nq));
      for (int i = 0; i < nq; ++i) coord_order[static_cast<size_t>(i)] = i;
      win_x = lex_min_optimum(lp, best, coord_order);
      win = c;
      break;
    }
  }
  if (!win) fail_internal("no tied pattern attains the optimum inside the table");

  ClosedPolyline raw = extract_points(win_x, win->m, d);
  ClosedPolyline traj = dedupe_fake_vertices(raw, norm);

  BilliardSolution sol;
  sol.xi = best;
  sol.pattern = win->pattern;
  sol.pattern_m = win->m;
  // Points are shifted back below, so they sit on the original boundary.
  sol.boundary_translate = zero_vec(d);
  sol.table = table;
  sol.norm = norm;
  SurroundingChecker checker(work);
  auto lam = checker.certificate(union_mask(win->pattern));
  if (!lam) fail_internal("winning pattern lost its surrounding certificate");
  sol.surround_lambda = *lam;
  for (auto& q : traj.points) q = add(q, shift);
  sol.trajectory = traj;
  sol.bounce_count = static_cast<int>(traj.points.size());
  for (size_t i = 0; i < traj.points.size(); ++i) {
    const Vec& cur = traj.points[i];
    const Vec& nxt = traj.points[(i + 1) % traj.points.size()];
    sol.segment_lengths.push_back(gauge_norm(norm, sub(nxt, cur)));
  }
  Rat len = 0;
  for (const Rat& s : sol.segment_lengths) len += s;
  if (len != sol.xi) fail_internal("trajectory length disagrees with the LP optimum");
  sol.fit = smallest_fitting_ratio(sol.trajectory.points, table);
  if (sol.fit.alpha != 1) fail_internal("returned trajectory has fitting ratio != 1");
  return sol;
}

bool is_two_periodic(const BilliardSolution& sol) { return sol.bounce_count == 2; }

namespace {

struct ReflectionLP {
  LPProblem lp;
  int m = 0, d = 0;
  std::vector<std::vector<int>> active;  // active facet indices per bounce
  std::vector<int> mu_offset;
};

// Feasibility system for the reflection rule: momenta P_i in the maximizing
// face of the norm body for edge e_i, and P_{i-1} - P_i a nonnegative
// combination of the active facet normals at bounce i.
ReflectionLP build_reflection_lp(const BilliardSolution& sol) {
  ReflectionLP r;
  const Body& k = sol.table;
  const Body& t = sol.norm;
  const auto& pts = sol.trajectory.points;
  r.m = static_cast<int>(pts.size());
  r.d = k.dim();
  int nmu = 0;
  r.mu_offset.resize(static_cast<size_t>(r.m));
  for (int i = 0; i < r.m; ++i) {
    Vec on_boundary = sub(pts[static_cast<size_t>(i)], sol.boundary_translate);
    r.active.push_back(active_rows(k.hrep, on_boundary));
    r.mu_offset[static_cast<size_t>(i)] = r.m * r.d + nmu;
    nmu += static_cast<int>(r.active.back().size());
  }
  int nvars = r.m * r.d + nmu;
  r.lp = LPProblem::minimize(zero_vec(nvars));
  for (int i = 0; i < r.m; ++i) {
    Vec edge = sub(pts[static_cast<size_t>((i + 1) % r.m)], pts[static_cast<size_t>(i)]);
    // P_i inside the norm body.
    for (const auto& row : t.facets()) {
      Vec lr = zero_vec(nvars);
      for (int c = 0; c < r.d; ++c) lr[static_cast<size_t>(i * r.d + c)] = row.a[static_cast<size_t>(c)];
      r.lp.add_le(lr, row.b);
    }
    // ... and on the maximizing face of this edge.
    Vec lr = zero_vec(nvars);
    for (int c = 0; c < r.d; ++c) lr[static_cast<size_t>(i * r.d + c)] = edge[static_cast<size_t>(c)];
    r.lp.add_eq(lr, gauge_norm(t, edge));
  }
  for (int i = 0; i < r.m; ++i) {
    int prev = (i + r.m - 1) % r.m;
    // P_prev - P_i = sum_j mu_ij a_j, mu >= 0.
    for (int c = 0; c < r.d; ++c) {
      Vec lr = zero_vec(nvars);
      lr[static_cast<size_t>(prev * r.d + c)] += 1;
      lr[static_cast<size_t>(i * r.d + c)] -= 1;
      for (size_t jj = 0; jj < r.active[static_cast<size_t>(i)].size(); ++jj) {
        int j = r.active[static_cast<size_t>(i)][jj];
        lr[static_cast<size_t>(r.mu_offset[static_cast<size_t>(i)] + static_cast<int>(jj))] =
            -k.facets()[static_cast<size_t>(j)].a[static_cast<size_t>(c)];
      }
      r.lp.add_eq(lr, Rat(0));
    }
    for (size_t jj = 0; jj < r.active[static_cast<size_t>(i)].size(); ++jj) {
      Vec lr = zero_vec(nvars);
      lr[static_cast<size_t>(r.mu_offset[static_cast<size_t>(i)] + static_cast<int>(jj))] = 1;
      r.lp.add_ge(lr, Rat(0));
    }
  }
  return r;
}

Vec bounce_jump(const ReflectionLP& r, const Vec& x, int i) {
  int prev = (i + r.m - 1) % r.m;
  Vec nu(static_cast<size_t>(r.d));
  for (int c = 0; c < r.d; ++c)
    nu[static_cast<size_t>(c)] = x[static_cast<size_t>(prev * r.d + c)] - x[static_cast<size_t>(i * r.d + c)];
  return nu;
}

}  // namespace

ReflectionCheck verify_reflection(const BilliardSolution& sol) {
  ReflectionCheck rc;
  if (sol.trajectory.points.size() < 2) {
    rc.reason = "trajectory has fewer than 2 points";
    return rc;
  }
  ReflectionLP r = build_reflection_lp(sol);
  for (int i = 0; i < r.m; ++i) {
    if (r.active[static_cast<size_t>(i)].empty()) {
      rc.violated_index = i;
      rc.reason = "bounce point is not on the table boundary";
      return rc;
    }
  }
  auto base = solve(r.lp);
  if (base.status != LPStatus::optimal) {
    rc.reason = "no momenta satisfy the reflection system";
    return rc;
  }
  // Every momentum jump must be nonzero (lambda_i > 0). Where the base
  // solution is degenerate, look for per-bounce witnesses and combine them
  // with weights (1, r, r^2, ...); each jump coordinate is polynomial in r,
  // so one of finitely many weights must work.
  std::vector<Vec> solutions = {base.x};
  for (int i = 0; i < r.m; ++i) {
    if (!is_zero(bounce_jump(r, base.x, i))) continue;
    bool found = false;
    for (int c = 0; c < r.d && !found; ++c) {
      for (int sign : {1, -1}) {
        LPProblem probe = r.lp;
        Vec obj = zero_vec(probe.num_vars);
        int prev = (i + r.m - 1) % r.m;
        obj[static_cast<size_t>(prev * r.d + c)] = -sign;
        obj[static_cast<size_t>(i * r.d + c)] = sign;
        probe.objective = obj;
        auto out = solve(probe);
        if (out.status == LPStatus::optimal && sgn(out.value) < 0) {
          solutions.push_back(out.x);
          found = true;
          break;
        }
      }
    }
    if (!found) {
      rc.violated_index = i;
      rc.reason = "momentum jump at this bounce is forced to zero";
      return rc;
    }
  }
  Vec chosen = base.x;
  if (solutions.size() > 1) {
    int max_tries = r.m * r.d * static_cast<int>(solutions.size()) + 2;
    bool ok = false;
    for (int denom = 2; denom < 2 + max_tries && !ok; ++denom) {
      Rat w(1), total(0);
      Vec mix = zero_vec(static_cast<int>(base.x.size()));
      for (const Vec& s : solutions) {
        mix = add(mix, scale(s, w));
        total += w;
        w /= denom;
      }
      mix = scale(mix, 1 / total);
      ok = true;
      for (int i = 0; i < r.m && ok; ++i)
        if (is_zero(bounce_jump(r, mix, i))) ok = false;
      if (ok) chosen = mix;
    }
    if (!ok) fail_internal("could not combine reflection witnesses");
  }
  rc.ok = true;
  for (int i = 0; i < r.m; ++i) {
    int prev = (i + r.m - 1) % r.m;
    Vec p_in(chosen.begin() + prev * r.d, chosen.begin() + (prev + 1) * r.d);
    Vec p_out(chosen.begin() + i * r.d, chosen.begin() + (i + 1) * r.d);
    Vec nu = bounce_jump(r, chosen, i);
    Rat lam = 0;
    Vec normal = zero_vec(r.d);
    for (size_t jj = 0; jj < r.active[static_cast<size_t>(i)].size(); ++jj) {
      const Rat& mu = chosen[static_cast<size_t>(r.mu_offset[static_cast<size_t>(i)] + static_cast<int>(jj))];
      lam += mu;
      int j = r.active[static_cast<size_t>(i)][jj];
      normal = add(normal, scale(sol.table.facets()[static_cast<size_t>(j)].a, mu));
    }
    if (sgn(lam) <= 0 || compare_vec(normal, nu) != 0) {
      rc.ok = false;
      rc.violated_index = i;
      rc.reason = "certificate extraction failed";
      return rc;
    }
    rc.cert.momentum_in.push_back(p_in);
    rc.cert.momentum_out.push_back(p_out);
    rc.cert.lambda.push_back(lam);
    rc.cert.normal.push_back(scale(nu, 1 / lam));
  }
  return rc;
}

Json solution_to_json(const BilliardSolution& sol) {
  Json j;
  j["xi"] = rat_to_string(sol.xi);
  j["xi_decimal"] = rat_to_decimal(sol.xi);
  Json traj = Json::array(), traj_dec = Json::array();
  for (const auto& q : sol.trajectory.points) {
    traj.push_back(point_to_json(q));
    Json dec = Json::array();
    for (const auto& c : q) dec.push_back(rat_to_decimal(c));
    traj_dec.push_back(std::move(dec));
  }
  j["trajectory"] = std::move(traj);
  j["trajectory_decimal"] = std::move(traj_dec);
  Json pat = Json::array();
  for (const auto& slot : sol.pattern.slots) pat.push_back(slot);
  j["pattern"] = std::move(pat);
  Json lam = Json::object();
  for (const auto& [key, v] : sol.fit.lambda)
    lam[std::to_string(key.first) + "," + std::to_string(key.second)] = rat_to_string(v);
  j["lambda"] = std::move(lam);
  j["two_periodic"] = sol.bounce_count == 2;
  j["bounce_count"] = sol.bounce_count;
  Json segs = Json::array(), segs_dec = Json::array();
  for (const auto& s : sol.segment_lengths) {
    segs.push_back(rat_to_string(s));
    segs_dec.push_back(rat_to_decimal(s));
  }
  j["segment_lengths"] = std::move(segs);
  j["segment_lengths_decimal"] = std::move(segs_dec);
  j["m"] = sol.pattern_m;
  j["surround_lambda"] = point_to_json(sol.surround_lambda);
  j["boundary_translate"] = point_to_json(sol.boundary_translate);
  j["fit_translate"] = point_to_json(sol.fit.translate);
  j["k"] = body_to_json(sol.table);
  j["t"] = body_to_json(sol.norm);
  return j;
}

BilliardSolution solution_from_json(const Json& j) {
  BilliardSolution sol;
  try {
    sol.table = body_from_json(j.at("k"), BodyRole::table);
    sol.norm = body_from_json(j.at("t"), BodyRole::norm_body);
    sol.xi = rat_from_json(j.at("xi"));
    for (const auto& q : j.at("trajectory")) sol.trajectory.points.push_back(point_from_json(q));
    sol.bounce_count = j.at("bounce_count").get<int>();
    for (const auto& s : j.at("segment_lengths")) sol.segment_lengths.push_back(rat_from_json(s));
    for (const auto& slot : j.at("pattern"))
      sol.pattern.slots.push_back(slot.get<std::vector<int>>());
    sol.pattern_m = j.at("m").get<int>();
    sol.surround_lambda = point_from_json(j.at("surround_lambda"));
    sol.boundary_translate = point_from_json(j.at("boundary_translate"));
    sol.fit.alpha = 1;
    sol.fit.translate = point_from_json(j.at("fit_translate"));
    for (const auto& [key, v] : j.at("lambda").items()) {
      auto comma = key.find(',');
      if (comma == std::string::npos) fail_input("lambda keys must look like \"i,j\"");
      sol.fit.lambda[{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))}] =
          rat_from_json(v);
    }
  } catch (const nlohmann::json::exception& e) {
    fail_input(std::string("malformed solution file: ") + e.what());
  }
  return sol;
}

}  // namespace minkbill
