#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace minkbill {

// All quantities in this library are exact rationals. GMP keeps mpq_class in
// canonical form (gcd(num, den) = 1, den > 0) through every arithmetic
// operation, so equality and ordering are always exact.
//
// Careful: the raw two-argument mpq_class constructor does NOT canonicalize,
// and mpq equality assumes canonical form. Build fractions with frac().
using Rat = mpq_class;

inline Rat frac(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

using Vec = std::vector<Rat>;

// Parses "p/q", "p", or "-p/q". Throws Error(invalid_input) on malformed text
// or a zero denominator.
Rat rat_from_string(const std::string& s);

// Canonical text form: "p/q", or just "p" when the denominator is 1.
std::string rat_to_string(const Rat& x);

// Decimal approximation with the given number of significant digits, computed
// by exact integer long division (round half away from zero). Deterministic
// across platforms, unlike going through double.
std::string rat_to_decimal(const Rat& x, int significant_digits = 12);

double rat_to_double(const Rat& x);

}  // namespace minkbill
