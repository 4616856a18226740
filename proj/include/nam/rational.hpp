#pragma once

/// @file rational.hpp
/// @brief Exact rationals (GMP) plus the handful of integer helpers the
///        p-adic layer needs.
///
/// Never bind an arithmetic expression to `auto`: gmpxx returns expression
/// templates that reference their operands.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "nam/error.hpp"

namespace nam {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rational r;
  mpz_set(r.get_num_mpz_t(), num.get_mpz_t());
  mpz_set(r.get_den_mpz_t(), den.get_mpz_t());
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

/// Canonical "a/b" form; the denominator is always written, so 3 -> "3/1".
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "a", "a/b", "-a/b" (and a leading '+'). Rejects anything else,
/// including decimal points and zero denominators.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return make_rational(n, d);
}

inline Integer ipow(long base, unsigned long exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exponent);
  return r;
}

/// p^j for any integer j.
inline Rational rational_pow(long p, long j) {
  if (j >= 0) return Rational(ipow(p, static_cast<unsigned long>(j)));
  return make_rational(Integer(1), ipow(p, static_cast<unsigned long>(-j)));
}

/// Exponent of p in a nonzero integer.
inline long integer_valuation(const Integer& n, long p) {
  if (n == 0) throw InvalidArgument("valuation of zero integer");
  Integer rest = abs(n);
  Integer q;
  long v = 0;
  for (;;) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p)) == 0) break;
    mpz_divexact_ui(q.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(p));
    rest = q;
    ++v;
  }
  return v;
}

/// Strips every factor p from a nonzero integer.
inline Integer strip_prime(const Integer& n, long p) {
  Integer rest = n;
  while (rest != 0 && mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p)) != 0)
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(p));
  return rest;
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require_prime(long p, const char* what = "p") {
  if (!is_prime(p)) throw InvalidArgument(std::string(what) + " must be prime, got " + std::to_string(p));
}

inline Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace nam
