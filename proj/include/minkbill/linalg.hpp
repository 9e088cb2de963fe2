#pragma once

#include <optional>
#include <vector>

#include "minkbill/rational.hpp"

namespace minkbill {

using Mat = std::vector<Vec>;

Rat dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rat& s);
Vec negate(const Vec& a);
bool is_zero(const Vec& a);
Vec zero_vec(int n);

// Lexicographic order on coordinates; total because arithmetic is exact.
int compare_vec(const Vec& a, const Vec& b);

// Exact Gaussian elimination. rank() leaves the input untouched.
int rank(Mat a);

// Solves the square system a x = b; nullopt when a is singular.
std::optional<Vec> solve_linear(Mat a, Vec b);

// A nonzero kernel vector of the column system sum_j x_j col_j = 0, or nullopt
// when the columns are linearly independent.
std::optional<Vec> kernel_vector(const Mat& columns);

}  // namespace minkbill
