#include "minkbill/oracle.hpp"

#include <algorithm>
#include <random>

#include "minkbill/error.hpp"
#include "minkbill/fitting.hpp"
#include "minkbill/linalg.hpp"

namespace minkbill {

namespace {

struct Ray {
  std::vector<int> facets;
  std::vector<long> coeff;  // positive integers
};

// Minimal positive circuits of the facet normals: supports of the extreme
// rays of {lambda >= 0 : sum lambda_j a_j = 0}. Support size is at most
// dim+1, so subsets of size 2..dim+1 suffice.
std::vector<Ray> positive_circuits(const Body& table) {
  const auto& rows = table.facets();
  int f = static_cast<int>(rows.size());
  int d = table.dim();
  std::vector<Ray> rays;
  std::vector<int> comb;
  auto try_subset = [&](const std::vector<int>& idx) {
    Mat cols;
    for (int j : idx) cols.push_back(rows[static_cast<size_t>(j)].a);
    if (rank(cols) != static_cast<int>(idx.size()) - 1) return;  // not a circuit
    auto ker = kernel_vector(cols);
    if (!ker) return;
    int s = 0;
    for (const Rat& x : *ker) {
      if (sgn(x) == 0) return;  // dependence must use every chosen normal
      if (s == 0)
        s = sgn(x);
      else if (s != sgn(x))
        return;
    }
    // Scale to coprime positive integers for the fast path.
    mpz_class denlcm = 1;
    for (const Rat& x : *ker) mpz_lcm(denlcm.get_mpz_t(), denlcm.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<mpz_class> ints;
    for (const Rat& x : *ker) {
      mpz_class v = x.get_num() * (denlcm / x.get_den());
      if (s < 0) v = -v;
      ints.push_back(v);
    }
    mpz_class g = 0;
    for (const auto& v : ints) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    Ray r;
    r.facets = idx;
    for (auto& v : ints) {
      mpz_class c = v / g;
      if (!c.fits_slong_p()) fail_internal("circuit coefficient overflows the fast path");
      r.coeff.push_back(c.get_si());
    }
    rays.push_back(std::move(r));
  };
  for (int size = 2; size <= std::min(d + 1, f); ++size) {
    comb.assign(static_cast<size_t>(size), 0);
    for (int i = 0; i < size; ++i) comb[static_cast<size_t>(i)] = i;
    while (true) {
      try_subset(comb);
      int k = size;
      while (k > 0 && comb[static_cast<size_t>(k - 1)] == f - size + k - 1) --k;
      if (k == 0) break;
      ++comb[static_cast<size_t>(k - 1)];
      for (int j = k; j < size; ++j) comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return rays;
}

// Exact accept test in rational arithmetic (reference path).
bool ray_accept_rat(const std::vector<Ray>& rays, const Body& table,
                    const std::vector<const Vec*>& dots) {
  const auto& rows = table.facets();
  for (const Ray& r : rays) {
    Rat sum = 0;
    for (size_t k = 0; k < r.facets.size(); ++k) {
      size_t j = static_cast<size_t>(r.facets[k]);
      const Rat* g = &(*dots[0])[j];
      for (size_t p = 1; p < dots.size(); ++p)
        if ((*dots[p])[j] > *g) g = &(*dots[p])[j];
      sum += Rat(r.coeff[k]) * (*g - rows[j].b);
    }
    if (sgn(sum) >= 0) return true;
  }
  return false;
}

struct IntTables {
  bool usable = false;
  // dot[p][j] and offset[j] share one scale; ray test:
  //   sum_k c_k * (g_jk - off_jk) >= 0 in __int128.
  std::vector<std::vector<long long>> dot;
  std::vector<long long> off;
  std::vector<std::vector<long long>> len;  // directed pair lengths, own scale
};

constexpr long kIntCap = 1L << 40;

bool to_scaled_ints(const std::vector<Vec>& rat_rows, std::vector<std::vector<long long>>& out,
                    mpz_class* scale_out) {
  mpz_class denlcm = 1;
  for (const auto& row : rat_rows)
    for (const Rat& x : row)
      mpz_lcm(denlcm.get_mpz_t(), denlcm.get_mpz_t(), x.get_den().get_mpz_t());
  out.clear();
  for (const auto& row : rat_rows) {
    std::vector<long long> r;
    for (const Rat& x : row) {
      mpz_class v = x.get_num() * (denlcm / x.get_den());
      if (!v.fits_slong_p() || v > kIntCap || v < -kIntCap) return false;
      r.push_back(v.get_si());
    }
    out.push_back(std::move(r));
  }
  *scale_out = denlcm;
  return true;
}

struct Searcher {
  const Body* table;
  const Body* norm;
  std::vector<Ray> rays;
  std::vector<Vec> samples;
  std::vector<Vec> dots;               // per sample: <a_j, p> for all facets j
  std::vector<std::vector<Rat>> len;   // directed gauge lengths between samples
  IntTables fast;
  long long budget = 0;
  long long tested = 0;
  bool partial = false;
  Rat best_value;
  std::vector<int> best_tuple;
  bool have_best = false;

  bool accept(const std::vector<int>& tuple) {
    if (fast.usable) {
      for (const Ray& r : rays) {
        __int128 sum = 0;
        for (size_t k = 0; k < r.facets.size(); ++k) {
          size_t j = static_cast<size_t>(r.facets[k]);
          long long g = fast.dot[static_cast<size_t>(tuple[0])][j];
          for (size_t p = 1; p < tuple.size(); ++p)
            g = std::max(g, fast.dot[static_cast<size_t>(tuple[p])][j]);
          sum += static_cast<__int128>(r.coeff[k]) * (g - fast.off[j]);
        }
        if (sum >= 0) return true;
      }
      return false;
    }
    std::vector<const Vec*> dptrs;
    for (int p : tuple) dptrs.push_back(&dots[static_cast<size_t>(p)]);
    return ray_accept_rat(rays, *table, dptrs);
  }

  Rat tuple_length(const std::vector<int>& tuple) {
    Rat total = 0;
    for (size_t i = 0; i < tuple.size(); ++i)
      total += len[static_cast<size_t>(tuple[i])][static_cast<size_t>(tuple[(i + 1) % tuple.size()])];
    return total;
  }

  void offer(const std::vector<int>& tuple) {
    Rat v = tuple_length(tuple);
    if (!have_best || v < best_value) {
      best_value = v;
      best_tuple = tuple;
      have_best = true;
    }
  }
};

}  // namespace

OracleResult oracle_xi(const Body& table, const Body& norm, const OracleConfig& cfg) {
  if (cfg.resolution < 2) fail_input("oracle resolution must be at least 2");
  if (!norm.origin_interior()) fail_input("oracle: norm body must contain the origin");
  if (cfg.mode == OracleMode::exhaustive_2d) {
    if (table.dim() != 2) fail_input("exhaustive oracle mode requires dimension 2");
    if (cfg.max_m < 2 || cfg.max_m > 3) fail_input("exhaustive oracle supports max_m 2 or 3");
  } else {
    if (cfg.max_m < 2 || cfg.max_m > 4) fail_input("random oracle supports max_m 2..4");
  }

  Searcher s;
  s.table = &table;
  s.norm = &norm;
  s.rays = positive_circuits(table);
  s.budget = cfg.budget;
  if (s.rays.empty()) fail_internal("bounded table has no positive circuit of normals");

  // Boundary samples. In 2-D every facet is a segment between its two tight
  // vertices; points v0 + (i/r)(v1 - v0) for i = 0..r-1 nest when the
  // resolution doubles. Random mode samples rational facet barycenters.
  if (cfg.mode == OracleMode::exhaustive_2d) {
    for (const auto& row : table.facets()) {
      std::vector<Vec> tight;
      for (const Vec& v : table.vertices())
        if (dot(row.a, v) == row.b) tight.push_back(v);
      if (tight.size() != 2) fail_internal("2-D facet without exactly two vertices");
      Vec dir = sub(tight[1], tight[0]);
      for (int i = 0; i < cfg.resolution; ++i)
        s.samples.push_back(add(tight[0], scale(dir, frac(i, cfg.resolution))));
    }
  } else {
    std::mt19937_64 rng(cfg.seed);
    for (const Vec& v : table.vertices()) s.samples.push_back(v);  // deterministic floor
    const auto& rows = table.facets();
    int per_facet = cfg.resolution;
    std::uniform_int_distribution<int> w(0, cfg.resolution);
    for (const auto& row : rows) {
      std::vector<const Vec*> tight;
      for (const Vec& v : table.vertices())
        if (dot(row.a, v) == row.b) tight.push_back(&v);
      for (int i = 0; i < per_facet; ++i) {
        Vec weights(tight.size());
        long total = 0;
        for (auto& x : weights) {
          long draw = w(rng) + 1;
          x = Rat(draw);
          total += draw;
        }
        Vec p = zero_vec(table.dim());
        for (size_t k = 0; k < tight.size(); ++k)
          p = add(p, scale(*tight[k], weights[k] / total));
        s.samples.push_back(std::move(p));
      }
    }
  }

  size_t n = s.samples.size();
  const auto& rows = table.facets();
  std::vector<Vec> dot_rows;
  for (const Vec& p : s.samples) {
    Vec d(rows.size());
    for (size_t j = 0; j < rows.size(); ++j) d[j] = dot(rows[j].a, p);
    dot_rows.push_back(std::move(d));
  }
  s.dots = dot_rows;
  s.len.assign(n, std::vector<Rat>(n, Rat(0)));
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v)
      if (u != v) s.len[u][v] = gauge_norm(norm, sub(s.samples[v], s.samples[u]));

  // Integer fast path: one shared scale for facet dots and offsets.
  {
    std::vector<Vec> with_off = dot_rows;
    Vec offs(rows.size());
    for (size_t j = 0; j < rows.size(); ++j) offs[j] = rows[j].b;
    with_off.push_back(offs);
    mpz_class scale1;
    std::vector<std::vector<long long>> scaled;
    if (to_scaled_ints(with_off, scaled, &scale1)) {
      s.fast.off = scaled.back();
      scaled.pop_back();
      s.fast.dot = std::move(scaled);
      s.fast.usable = true;
    }
  }

  auto within_budget = [&] {
    if (s.tested >= s.budget) {
      s.partial = true;
      return false;
    }
    return true;
  };

  if (cfg.mode == OracleMode::exhaustive_2d) {
    // m = 2: unordered pairs (the two orientations coincide cyclically).
    std::vector<int> tuple(2);
    for (size_t u = 0; u < n && within_budget(); ++u)
      for (size_t v = u + 1; v < n; ++v) {
        if (++s.tested > s.budget) {
          s.partial = true;
          break;
        }
        tuple[0] = static_cast<int>(u);
        tuple[1] = static_cast<int>(v);
        if (s.have_best && s.tuple_length(tuple) >= s.best_value) continue;
        if (s.accept(tuple)) s.offer(tuple);
      }
    if (cfg.max_m >= 3) {
      std::vector<int> t3(3);
      for (size_t u = 0; u < n && within_budget(); ++u) {
        for (size_t v = u + 1; v < n && !s.partial; ++v) {
          // No cyclic triple through u,v can be shorter than the cheaper
          // of the two directed u-v connections.
          if (s.have_best && s.len[u][v] >= s.best_value && s.len[v][u] >= s.best_value) continue;
          for (size_t w = v + 1; w < n; ++w) {
            if (++s.tested > s.budget) {
              s.partial = true;
              break;
            }
            t3[0] = static_cast<int>(u);
            t3[1] = static_cast<int>(v);
            t3[2] = static_cast<int>(w);
            Rat fwd = s.len[u][v] + s.len[v][w] + s.len[w][u];
            Rat rev = s.len[u][w] + s.len[w][v] + s.len[v][u];
            bool rev_shorter = rev < fwd;
            const Rat& shorter = rev_shorter ? rev : fwd;
            if (s.have_best && shorter >= s.best_value) continue;
            if (!s.accept(t3)) continue;
            if (rev_shorter) std::swap(t3[1], t3[2]);
            s.offer(t3);
            if (rev_shorter) std::swap(t3[1], t3[2]);
          }
        }
      }
    }
  } else {
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    // Deterministic floor: all vertex pairs (some pair realizes the width,
    // which never fits into a smaller homothet).
    size_t nv = table.vertices().size();
    std::vector<int> tuple;
    for (size_t u = 0; u < nv; ++u)
      for (size_t v = u + 1; v < nv; ++v) {
        tuple = {static_cast<int>(u), static_cast<int>(v)};
        ++s.tested;
        if (s.accept(tuple)) s.offer(tuple);
      }
    std::uniform_int_distribution<size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> msize(2, cfg.max_m);
    while (s.tested < s.budget) {
      ++s.tested;
      int m = msize(rng);
      tuple.clear();
      for (int i = 0; i < m; ++i) tuple.push_back(static_cast<int>(pick(rng)));
      if (s.have_best && s.tuple_length(tuple) >= s.best_value) continue;
      if (s.accept(tuple)) s.offer(tuple);
    }
  }

  if (!s.have_best) fail_internal("oracle found no admissible configuration");
  OracleResult res;
  res.value = s.best_value;
  for (int i : s.best_tuple) res.best.points.push_back(s.samples[static_cast<size_t>(i)]);
  res.partial = s.partial;
  res.tuples_tested = s.tested;
  // Soundness: the winner must pass the exact fitting LP.
  auto fit = smallest_fitting_ratio(res.best.points, table);
  if (fit.alpha < 1) fail_internal("oracle accepted a configuration with fitting ratio < 1");
  return res;
}

}  // namespace minkbill
