#include "minkbill/linalg.hpp"

#include "minkbill/error.hpp"

namespace minkbill {

Rat dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail_input("dot: dimension mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail_input("add: dimension mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail_input("sub: dimension mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scale(const Vec& a, const Rat& s) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

Vec negate(const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool is_zero(const Vec& a) {
  for (const Rat& x : a)
    if (sgn(x) != 0) return false;
  return true;
}

Vec zero_vec(int n) { return Vec(static_cast<size_t>(n), Rat(0)); }

int compare_vec(const Vec& a, const Vec& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() < b.size()) return -1;
  if (a.size() > b.size()) return 1;
  return 0;
}

namespace {

// Row echelon with partial exact pivoting (first nonzero). Returns pivot
// columns; `a` is modified in place.
std::vector<int> echelon(Mat& a) {
  std::vector<int> pivot_cols;
  if (a.empty()) return pivot_cols;
  size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rat f = a[i][c] / a[r][c];
      for (size_t j = c; j < cols; ++j)
        if (sgn(a[r][j]) != 0) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  return pivot_cols;
}

}  // namespace

int rank(Mat a) { return static_cast<int>(echelon(a).size()); }

std::optional<Vec> solve_linear(Mat a, Vec b) {
  size_t n = a.size();
  if (n == 0) return Vec{};
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) fail_input("solve_linear: not square");
    a[i].push_back(b[i]);
  }
  std::vector<int> piv = echelon(a);
  if (piv.size() != n) return std::nullopt;
  for (size_t i = 0; i < n; ++i)
    if (piv[i] != static_cast<int>(i)) return std::nullopt;  // pivot in rhs column
  Vec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

std::optional<Vec> kernel_vector(const Mat& columns) {
  if (columns.empty()) return std::nullopt;
  size_t k = columns.size();
  size_t n = columns[0].size();
  // Transpose into the row system and reduce.
  Mat a(n, Vec(k, Rat(0)));
  for (size_t j = 0; j < k; ++j)
    for (size_t i = 0; i < n; ++i) a[i][j] = columns[j][i];
  std::vector<int> piv = echelon(a);
  if (piv.size() == k) return std::nullopt;
  // Pick the first free column, back-substitute.
  std::vector<bool> is_piv(k, false);
  for (int c : piv) is_piv[static_cast<size_t>(c)] = true;
  size_t free_col = 0;
  while (free_col < k && is_piv[free_col]) ++free_col;
  Vec x(k, Rat(0));
  x[free_col] = 1;
  for (size_t r = piv.size(); r-- > 0;) {
    size_t c = static_cast<size_t>(piv[r]);
    Rat s = 0;
    for (size_t j = c + 1; j < k; ++j)
      if (sgn(a[r][j]) != 0 && sgn(x[j]) != 0) s += a[r][j] * x[j];
    x[c] = -s / a[r][c];
  }
  return x;
}

}  // namespace minkbill
