#include "minkbill/rational.hpp"

#include <cctype>
#include <sstream>

#include "minkbill/error.hpp"

namespace minkbill {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) fail_input("empty rational literal");
  // mpq_class accepts junk like "1/2/3" silently in some GMP builds, so
  // validate the shape ourselves: optional sign, digits, optional /digits.
  size_t i = 0;
  auto digits = [&](size_t& pos) {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return pos > start;
  };
  if (s[i] == '+' || s[i] == '-') ++i;
  if (!digits(i)) fail_input("malformed rational literal: '" + s + "'");
  if (i < s.size()) {
    if (s[i] != '/') fail_input("malformed rational literal: '" + s + "'");
    ++i;
    if (s[i] == '+' || s[i] == '-') fail_input("malformed rational literal: '" + s + "'");
    if (!digits(i) || i != s.size()) fail_input("malformed rational literal: '" + s + "'");
  }
  Rat r;
  if (r.set_str(s, 10) != 0) fail_input("malformed rational literal: '" + s + "'");
  if (r.get_den() == 0) fail_input("zero denominator in rational literal: '" + s + "'");
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string rat_to_decimal(const Rat& x, int significant_digits) {
  if (significant_digits < 1) significant_digits = 1;
  if (sgn(x) == 0) return "0";
  mpz_class num = abs(x.get_num());
  mpz_class den = x.get_den();
  // Find the decimal exponent e with 10^e <= num/den < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10)) + 1;
  mpz_class pow10;
  auto cmp_pow = [&](long k) {
    // sign of num/den - 10^k.
    mpz_class lhs = num, rhs = den;
    if (k >= 0) {
      mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(k));
      rhs *= pow10;
    } else {
      mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(-k));
      lhs *= pow10;
    }
    return cmp(lhs, rhs);
  };
  while (cmp_pow(e) < 0) --e;
  while (cmp_pow(e + 1) >= 0) ++e;
  // Round num/den * 10^(digits-1-e) to nearest integer, half away from zero.
  long shift = significant_digits - 1 - e;
  mpz_class scaled_num = num, scaled_den = den;
  if (shift >= 0) {
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift));
    scaled_num *= pow10;
  } else {
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
    scaled_den *= pow10;
  }
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
  if (2 * r >= scaled_den) q += 1;
  std::string mant = q.get_str();
  if (static_cast<int>(mant.size()) > significant_digits) {
    // Rounding carried into a new digit (e.g. 999.96 -> 1000).
    ++e;
    mant.pop_back();
  }
  // Place the decimal point after the first digit: d.ddd e exponent.
  std::string out;
  if (sgn(x) < 0) out += "-";
  if (e >= 0 && e < significant_digits) {
    out += mant.substr(0, e + 1);
    std::string frac = mant.substr(e + 1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  } else if (e < 0 && e > -5) {
    out += "0.";
    out += std::string(static_cast<size_t>(-e - 1), '0');
    std::string frac = mant;
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    out += frac;
  } else {
    out += mant.substr(0, 1);
    std::string frac = mant.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    out += "e" + std::to_string(e);
  }
  return out;
}

double rat_to_double(const Rat& x) { return x.get_d(); }

}  // namespace minkbill
