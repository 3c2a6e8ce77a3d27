#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace tautjac {

// Exact rational scalar. GMP keeps every result in lowest terms with a
// positive denominator, so structural equality is value equality.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// "a/b", or "a" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

// Accepts "a", "-a", "a/b", "-a/b" with decimal integers.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return make_rational(n, d);
}

// Binomial coefficient with C(n, k) = 0 for k < 0 and for n < k.
inline Integer binomial(long n, long k) {
  if (k < 0 || n < k || n < 0) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

inline Integer factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of a negative number");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// n (n-1) ... (n-k+1)
inline Integer falling_factorial(long n, long k) {
  Integer r = 1;
  for (long i = 0; i < k; ++i) r *= (n - i);
  return r;
}

}  // namespace tautjac
