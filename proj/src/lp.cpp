#include "minkbill/lp.hpp"

#include <algorithm>

#include "minkbill/error.hpp"

namespace minkbill {

LPProblem LPProblem::minimize(Vec c) {
  LPProblem p;
  p.num_vars = static_cast<int>(c.size());
  p.objective = std::move(c);
  return p;
}

void LPProblem::add(Vec row, Rel rel, Rat rhs) {
  if (static_cast<int>(row.size()) != num_vars) fail_input("LP row has wrong length");
  constraints.push_back({std::move(row), rel, std::move(rhs)});
}

namespace {

// Dense simplex tableau over mpq. Columns: for each free variable x_k a pair
// (u_k, v_k) with x_k = u_k - v_k; then one slack/surplus column per
// inequality row; then one artificial column per row (identity at start).
// Rows are pre-negated so every right-hand side is nonnegative.
struct Tableau {
  int m;                       // rows
  int n_cols;                  // total columns (excl. rhs)
  int art_begin;               // first artificial column
  std::vector<Vec> a;          // m rows of n_cols
  Vec rhs;                     // length m
  std::vector<int> basis;      // column basic in each row
  std::vector<int> art_row;    // artificial column index -> original row id
  Vec cost;                    // current reduced-cost row (length n_cols)
  Rat cost_val;                // current objective value (negated z)

  void pivot(int row, int col) {
    static thread_local Rat f, tmp;
    Rat inv = 1 / a[row][col];
    if (inv != 1)
      for (int j = 0; j < n_cols; ++j)
        if (sgn(a[row][j]) != 0) a[row][j] *= inv;
    if (sgn(rhs[row]) != 0) rhs[row] *= inv;
    a[row][col] = 1;
    for (int i = 0; i <= m; ++i) {
      Vec& r = (i == m) ? cost : a[i];
      Rat& rv = (i == m) ? cost_val : rhs[i];
      if (i == row) continue;
      if (sgn(r[col]) == 0) continue;
      f = r[col];
      for (int j = 0; j < n_cols; ++j) {
        if (sgn(a[row][j]) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), a[row][j].get_mpq_t());
        mpq_sub(r[j].get_mpq_t(), r[j].get_mpq_t(), tmp.get_mpq_t());
      }
      if (sgn(rhs[row]) != 0) {
        mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), rhs[row].get_mpq_t());
        mpq_sub(rv.get_mpq_t(), rv.get_mpq_t(), tmp.get_mpq_t());
      }
      r[col] = 0;
    }
    basis[row] = col;
  }

  // Bland's rule: entering = lowest-index column with negative reduced cost,
  // leaving = lowest-index basic variable among ratio ties. Returns false when
  // the current basis is optimal; throws on unboundedness via *unbounded.
  bool step(int allowed_cols, bool* unbounded) {
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j) {
      if (sgn(cost[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    static thread_local Rat best, ratio;
    for (int i = 0; i < m; ++i) {
      if (sgn(a[i][enter]) <= 0) continue;
      mpq_div(ratio.get_mpq_t(), rhs[i].get_mpq_t(), a[i][enter].get_mpq_t());
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      *unbounded = true;
      return false;
    }
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LPOutcome solve(const LPProblem& p) {
  const int n = p.num_vars;
  const int m = static_cast<int>(p.constraints.size());
  int n_slack = 0;
  for (const auto& c : p.constraints)
    if (c.rel != Rel::eq) ++n_slack;

  Tableau t;
  t.m = m;
  t.art_begin = 2 * n + n_slack;
  t.n_cols = t.art_begin + m;
  t.a.assign(static_cast<size_t>(m), zero_vec(t.n_cols));
  t.rhs = zero_vec(m);
  t.basis.resize(static_cast<size_t>(m));
  t.art_row.resize(static_cast<size_t>(m));
  std::vector<int> negated(static_cast<size_t>(m), 0);

  int slack_at = 2 * n;
  for (int i = 0; i < m; ++i) {
    const auto& c = p.constraints[static_cast<size_t>(i)];
    bool neg = sgn(c.rhs) < 0;
    negated[static_cast<size_t>(i)] = neg ? -1 : 1;
    Rat s = neg ? Rat(-1) : Rat(1);
    for (int k = 0; k < n; ++k) {
      Rat v = c.row[static_cast<size_t>(k)] * s;
      t.a[i][2 * k] = v;
      t.a[i][2 * k + 1] = -v;
    }
    if (c.rel != Rel::eq) {
      // <= gets +slack, >= gets -surplus; negation flips the sign.
      Rat sl = (c.rel == Rel::le) ? Rat(1) : Rat(-1);
      t.a[i][slack_at++] = sl * s;
    }
    t.a[i][t.art_begin + i] = 1;
    t.art_row[static_cast<size_t>(i)] = i;
    t.rhs[i] = c.rhs * s;
    t.basis[i] = t.art_begin + i;
  }

  // Phase 1: minimize the sum of artificials. Reduced costs for the
  // artificial basis are 0 - sum of rows on non-artificial columns.
  t.cost = zero_vec(t.n_cols);
  t.cost_val = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < t.art_begin; ++j)
      if (sgn(t.a[i][j]) != 0) t.cost[j] -= t.a[i][j];
    t.cost_val -= t.rhs[i];
  }
  bool unbounded = false;
  while (t.step(t.art_begin, &unbounded)) {
  }
  if (unbounded) fail_internal("phase-1 LP reported unbounded");
  LPOutcome out;
  if (sgn(t.cost_val) != 0) {  // cost_val = -(sum of artificials)
    out.status = LPStatus::infeasible;
    return out;
  }

  // Drive artificials out of the basis; a row that cannot pivot is a
  // redundant equation and is dropped (its dual is zero).
  std::vector<int> dropped;
  for (int i = 0; i < t.m;) {
    if (t.basis[i] < t.art_begin) {
      ++i;
      continue;
    }
    int col = -1;
    for (int j = 0; j < t.art_begin; ++j)
      if (sgn(t.a[i][j]) != 0) {
        col = j;
        break;
      }
    if (col >= 0) {
      t.pivot(i, col);
      ++i;
    } else {
      t.art_row.erase(t.art_row.begin() + i);
      t.a.erase(t.a.begin() + i);
      t.rhs.erase(t.rhs.begin() + i);
      t.basis.erase(t.basis.begin() + i);
      --t.m;
    }
  }

  // Phase 2: rebuild the reduced-cost row for the real objective; artificial
  // columns are barred from entering.
  Vec c2 = zero_vec(t.n_cols);
  for (int k = 0; k < n; ++k) {
    c2[2 * k] = p.objective[static_cast<size_t>(k)];
    c2[2 * k + 1] = -p.objective[static_cast<size_t>(k)];
  }
  t.cost = c2;
  t.cost_val = 0;
  for (int i = 0; i < t.m; ++i) {
    const Rat& cb = c2[static_cast<size_t>(t.basis[i])];
    if (sgn(cb) == 0) continue;
    for (int j = 0; j < t.n_cols; ++j)
      if (sgn(t.a[i][j]) != 0) t.cost[j] -= cb * t.a[i][j];
    t.cost_val -= cb * t.rhs[i];
  }
  // Artificial columns are barred from entering by the scan limit.
  while (t.step(t.art_begin, &unbounded)) {
  }
  if (unbounded) {
    out.status = LPStatus::unbounded;
    return out;
  }

  out.status = LPStatus::optimal;
  out.x = zero_vec(n);
  for (int i = 0; i < t.m; ++i) {
    int b = t.basis[i];
    if (b < 2 * n) {
      int k = b / 2;
      if (b % 2 == 0)
        out.x[static_cast<size_t>(k)] += t.rhs[i];
      else
        out.x[static_cast<size_t>(k)] -= t.rhs[i];
    }
  }
  out.value = dot(p.objective, out.x);

  // Duals: y = c_B B^{-1}; the artificial columns carry B^{-1}, one column per
  // surviving original row. Dropped rows keep dual zero; row negation during
  // standardization flips the sign back.
  out.duals = zero_vec(m);
  for (size_t ki = 0; ki < t.art_row.size(); ++ki) {
    int orig = t.art_row[ki];
    int col = t.art_begin + orig;
    Rat y = 0;
    for (int i = 0; i < t.m; ++i) {
      const Rat& cb = c2[static_cast<size_t>(t.basis[i])];
      if (sgn(cb) != 0 && sgn(t.a[i][col]) != 0) y += cb * t.a[i][col];
    }
    out.duals[static_cast<size_t>(orig)] = y * negated[static_cast<size_t>(orig)];
  }
  return out;
}

bool certificate_ok(const LPProblem& p, const LPOutcome& out, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (out.status != LPStatus::optimal) return fail("status not optimal");
  if (out.value != dot(p.objective, out.x)) return fail("objective value mismatch");
  Vec combo = zero_vec(p.num_vars);
  Rat dual_value = 0;
  for (size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& c = p.constraints[i];
    Rat lhs = dot(c.row, out.x);
    const Rat& y = out.duals[i];
    switch (c.rel) {
      case Rel::le:
        if (lhs > c.rhs) return fail("primal infeasible at row " + std::to_string(i));
        if (sgn(y) > 0) return fail("dual sign at <= row " + std::to_string(i));
        break;
      case Rel::ge:
        if (lhs < c.rhs) return fail("primal infeasible at row " + std::to_string(i));
        if (sgn(y) < 0) return fail("dual sign at >= row " + std::to_string(i));
        break;
      case Rel::eq:
        if (lhs != c.rhs) return fail("primal infeasible at row " + std::to_string(i));
        break;
    }
    if (sgn(y) != 0 && lhs != c.rhs)
      return fail("complementary slackness at row " + std::to_string(i));
    for (int k = 0; k < p.num_vars; ++k)
      combo[static_cast<size_t>(k)] += y * c.row[static_cast<size_t>(k)];
    dual_value += y * c.rhs;
  }
  for (int k = 0; k < p.num_vars; ++k)
    if (combo[static_cast<size_t>(k)] != p.objective[static_cast<size_t>(k)])
      return fail("dual stationarity fails at variable " + std::to_string(k));
  if (dual_value != out.value) return fail("strong duality gap");
  return true;
}

Vec lex_min_optimum(const LPProblem& problem, const Rat& value, const std::vector<int>& coord_order) {
  LPProblem q = problem;
  q.add_eq(q.objective, value);
  Vec last;
  for (size_t step = 0; step < coord_order.size(); ++step) {
    int k = coord_order[step];
    Vec obj = zero_vec(q.num_vars);
    obj[static_cast<size_t>(k)] = 1;
    LPProblem r = q;
    r.objective = obj;
    LPOutcome o = solve(r);
    if (o.status != LPStatus::optimal)
      fail_internal("lex_min_optimum: refinement LP not optimal");
    last = o.x;
    if (step + 1 < coord_order.size()) q.add_eq(obj, o.value);
  }
  if (last.empty()) {
    LPOutcome o = solve(q);
    if (o.status != LPStatus::optimal) fail_internal("lex_min_optimum: base LP not optimal");
    last = o.x;
  }
  return last;
}

}  // namespace minkbill
