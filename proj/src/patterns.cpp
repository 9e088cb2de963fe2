#include "minkbill/patterns.hpp"

#include <algorithm>

#include "minkbill/error.hpp"
#include "minkbill/lp.hpp"

namespace minkbill {

SurroundingChecker::SurroundingChecker(const Body& table) : table_(table) {
  if (table.facets().size() > 31) fail_input("more than 31 facets is unsupported");
}

bool SurroundingChecker::surrounding(uint32_t mask) {
  auto it = cache_.find(mask);
  if (it != cache_.end()) return it->second;
  bool ok = certificate(mask).has_value();
  cache_.emplace(mask, ok);
  return ok;
}

std::optional<Vec> SurroundingChecker::certificate(uint32_t mask) const {
  const auto& rows = table_.facets();
  std::vector<int> idx;
  for (size_t j = 0; j < rows.size(); ++j)
    if (mask & (uint32_t{1} << j)) idx.push_back(static_cast<int>(j));
  if (idx.empty()) return std::nullopt;
  int n = static_cast<int>(idx.size());
  int d = table_.dim();
  auto p = LPProblem::minimize(zero_vec(n));
  for (int c = 0; c < d; ++c) {
    Vec row(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
      row[static_cast<size_t>(k)] =
          rows[static_cast<size_t>(idx[static_cast<size_t>(k)])].a[static_cast<size_t>(c)];
    p.add_eq(row, Rat(0));
  }
  p.add_eq(Vec(static_cast<size_t>(n), Rat(1)), Rat(1));
  for (int k = 0; k < n; ++k) {
    Vec e = zero_vec(n);
    e[static_cast<size_t>(k)] = 1;
    p.add_ge(e, Rat(0));
  }
  auto out = solve(p);
  if (out.status != LPStatus::optimal) return std::nullopt;
  Vec lambda = zero_vec(static_cast<int>(rows.size()));
  for (int k = 0; k < n; ++k)
    lambda[static_cast<size_t>(idx[static_cast<size_t>(k)])] = out.x[static_cast<size_t>(k)];
  return lambda;
}

namespace {

struct Enumerator {
  int m;
  bool order_sensitive;
  PatternFilter filter;
  const std::vector<FaceSubset>* subsets;
  std::vector<uint32_t> subset_mask;
  SurroundingChecker* checker;
  std::vector<int> current;    // face-subset index per slot
  std::vector<int> occ;        // per facet: occurrences so far
  std::vector<int> occ_multi;  // per facet: occurrences inside size>=2 slots
  std::vector<ContactPattern>* out;

  bool canonical(const std::vector<int>& t) const {
    int n = static_cast<int>(t.size());
    std::vector<int> rot(t.size());
    for (int s = 0; s < n; ++s) {
      for (int i = 0; i < n; ++i) rot[static_cast<size_t>(i)] = t[static_cast<size_t>((i + s) % n)];
      if (s > 0 && rot < t) return false;
    }
    if (!order_sensitive) {
      std::vector<int> rev(t.rbegin(), t.rend());
      for (int s = 0; s < n; ++s) {
        for (int i = 0; i < n; ++i)
          rot[static_cast<size_t>(i)] = rev[static_cast<size_t>((i + s) % n)];
        if (rot < t) return false;
      }
    }
    return true;
  }

  // A facet occurring twice, at least once inside a multi-facet slot, makes
  // that occurrence removable without changing the union, so the pattern is
  // dominated by the shrunken one. The condition is monotone under extending
  // the prefix, which allows pruning early.
  bool dominated_prefix() const {
    for (size_t j = 0; j < occ.size(); ++j)
      if (occ[j] >= 2 && occ_multi[j] >= 1) return true;
    return false;
  }

  void emit() {
    uint32_t uni = 0;
    for (int s : current) uni |= subset_mask[static_cast<size_t>(s)];
    if (!checker->surrounding(uni)) return;
    if (filter == PatternFilter::solver_minimal) {
      // A facet unique to a multi-facet slot is removable when the union
      // stays surrounding without it.
      for (int s : current) {
        const auto& fs = (*subsets)[static_cast<size_t>(s)].facets;
        if (fs.size() < 2) continue;
        for (int j : fs) {
          if (occ[static_cast<size_t>(j)] != 1) continue;
          if (checker->surrounding(uni & ~(uint32_t{1} << j))) return;
        }
      }
    }
    ContactPattern pat;
    for (int s : current) pat.slots.push_back((*subsets)[static_cast<size_t>(s)].facets);
    out->push_back(std::move(pat));
  }

  void rec(int pos) {
    if (pos == m) {
      if (filter == PatternFilter::solver_minimal && m >= 3 && current.back() == current.front())
        return;  // cyclically adjacent equal slots are dominated
      if (!canonical(current)) return;
      emit();
      return;
    }
    int n_sub = static_cast<int>(subsets->size());
    // Rotation-canonical tuples start at their minimal element.
    int lo = (pos == 0) ? 0 : current[0];
    for (int s = lo; s < n_sub; ++s) {
      if (filter == PatternFilter::solver_minimal && m >= 3 && pos > 0 &&
          current[static_cast<size_t>(pos - 1)] == s)
        continue;
      current[static_cast<size_t>(pos)] = s;
      const auto& fs = (*subsets)[static_cast<size_t>(s)].facets;
      bool multi = fs.size() >= 2;
      for (int j : fs) {
        ++occ[static_cast<size_t>(j)];
        if (multi) ++occ_multi[static_cast<size_t>(j)];
      }
      bool prune = filter == PatternFilter::solver_minimal && dominated_prefix();
      if (!prune) rec(pos + 1);
      for (int j : fs) {
        --occ[static_cast<size_t>(j)];
        if (multi) --occ_multi[static_cast<size_t>(j)];
      }
    }
  }
};

}  // namespace

std::vector<ContactPattern> enumerate_patterns(const Body& table, int m, bool order_sensitive,
                                               PatternFilter filter) {
  if (m < 2 || m > table.dim() + 1)
    fail_input("pattern slot count must lie in 2..dim+1, got " + std::to_string(m));
  auto subsets = face_subsets(table.hrep);
  SurroundingChecker checker(table);
  Enumerator en;
  en.m = m;
  en.order_sensitive = order_sensitive;
  en.filter = filter;
  en.subsets = &subsets;
  for (const auto& fs : subsets) {
    uint32_t mask = 0;
    for (int j : fs.facets) mask |= uint32_t{1} << j;
    en.subset_mask.push_back(mask);
  }
  en.checker = &checker;
  en.current.assign(static_cast<size_t>(m), 0);
  en.occ.assign(table.facets().size(), 0);
  en.occ_multi.assign(table.facets().size(), 0);
  std::vector<ContactPattern> out;
  en.out = &out;
  en.rec(0);
  return out;
}

}  // namespace minkbill
