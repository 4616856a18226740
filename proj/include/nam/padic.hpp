#pragma once

/// @file padic.hpp
/// @brief Exact arithmetic in Q_p through rationals.
///
/// A rational carries all the information of the p-adic number it denotes,
/// so valuations, norms and digit expansions are computed on demand instead
/// of being truncated to a fixed precision.

#include <algorithm>
#include <climits>
#include <compare>
#include <ostream>
#include <string>
#include <utility>

#include "nam/rational.hpp"

namespace nam {

/// Valuation of zero.
inline constexpr long kInfiniteValuation = LONG_MAX;

/// v_p(x) = v_p(num) - v_p(den); kInfiniteValuation for x = 0.
inline long valuation(const Rational& x, long p) {
  if (x == 0) return kInfiniteValuation;
  return integer_valuation(x.get_num(), p) - integer_valuation(x.get_den(), p);
}

/// |x|_p = p^{-v_p(x)}, and |0|_p = 0.
inline Rational padic_norm(const Rational& x, long p) {
  if (x == 0) return Rational(0);
  return rational_pow(p, -valuation(x, p));
}

/// Representative of the coset x + p^j Z_p inside Z[1/p] ∩ [0, p^j).
///
/// Every coset of p^j Z_p in Q_p contains exactly one such number, which is
/// what makes ball centers canonical.
inline Rational reduce_mod(const Rational& x, long p, long j) {
  if (x == 0) return Rational(0);
  const long v = valuation(x, p);
  if (v >= j) return Rational(0);
  const long shift = std::max({0L, -v, -j});
  // x * p^shift lies in Z_p, so its denominator is prime to p.
  const Rational y = x * rational_pow(p, shift);
  const Integer modulus = ipow(p, static_cast<unsigned long>(j + shift));
  Integer inverse;
  if (mpz_invert(inverse.get_mpz_t(), y.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw InvalidArgument("internal: denominator not invertible mod p^k");
  Integer residue = y.get_num() * inverse;
  mpz_fdiv_r(residue.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
  return make_rational(residue, ipow(p, static_cast<unsigned long>(shift)));
}

/// {y}_p: the negative-exponent digits of the p-adic expansion of y.
inline Rational fractional_part(const Rational& y, long p) { return reduce_mod(y, p, 0); }

/// Smallest element of the value group {p^j} that is >= r; 0 for r = 0.
inline Rational round_up_to_value_group(const Rational& r, long p) {
  if (r < 0) throw InvalidArgument("round_up_to_value_group needs r >= 0");
  if (r == 0) return Rational(0);
  Rational power(1);
  if (r > 1) {
    while (power < r) power *= p;
  } else {
    for (;;) {
      Rational smaller = power / p;
      if (smaller < r) break;
      power = smaller;
    }
  }
  return power;
}

/// Rounding of a real number known only through an enclosure [lo, hi].
struct ValueGroupRounding {
  Rational power;  ///< round_up(hi); always >= the enclosed real
  bool certified;  ///< both ends round to the same power, so `power` is exact
};

inline ValueGroupRounding round_up_enclosure(const Rational& lo, const Rational& hi, long p) {
  if (lo > hi) throw InvalidArgument("enclosure with lo > hi");
  ValueGroupRounding out{round_up_to_value_group(hi, p), false};
  out.certified = round_up_to_value_group(lo, p) == out.power;
  return out;
}

/// j such that power = p^j; power must be a positive power of p.
inline long value_group_exponent(const Rational& power, long p) {
  if (power <= 0) throw InvalidArgument("value group element must be positive");
  const Integer num = power.get_num();
  const Integer den = power.get_den();
  if (strip_prime(num, p) != 1 || strip_prime(den, p) != 1)
    throw InvalidArgument(to_string(power) + " is not a power of " + std::to_string(p));
  return integer_valuation(num, p) - integer_valuation(den, p);
}

/// An element of Q_p, stored as an exact rational together with its prime.
class PadicScalar {
 public:
  PadicScalar(long p, Rational value) : p_(p), value_(std::move(value)) { require_prime(p_); }
  PadicScalar(long p, long num, long den = 1) : PadicScalar(p, make_rational(num, den)) {}

  long prime() const noexcept { return p_; }
  const Rational& value() const noexcept { return value_; }

  long valuation() const { return nam::valuation(value_, p_); }
  Rational norm() const { return padic_norm(value_, p_); }
  Rational fractional_part() const { return nam::fractional_part(value_, p_); }
  bool is_zero() const { return value_ == 0; }

  friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
    return {same_prime(a, b), Rational(a.value_ + b.value_)};
  }
  friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) {
    return {same_prime(a, b), Rational(a.value_ - b.value_)};
  }
  friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
    return {same_prime(a, b), Rational(a.value_ * b.value_)};
  }
  friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
    const long p = same_prime(a, b);
    if (b.value_ == 0) throw DivisionByZero("p-adic division by zero");
    return {p, Rational(a.value_ / b.value_)};
  }
  friend PadicScalar operator*(const PadicScalar& a, const Rational& w) { return {a.p_, Rational(a.value_ * w)}; }
  PadicScalar operator-() const { return {p_, Rational(-value_)}; }

  friend bool operator==(const PadicScalar& a, const PadicScalar& b) {
    return a.p_ == b.p_ && a.value_ == b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const PadicScalar& x) {
    return os << to_string(x.value_) << " (p=" << x.p_ << ")";
  }

 private:
  static long same_prime(const PadicScalar& a, const PadicScalar& b) {
    if (a.p_ != b.p_)
      throw PrimeMismatch("mixing Q_" + std::to_string(a.p_) + " and Q_" + std::to_string(b.p_));
    return a.p_;
  }

  long p_;
  Rational value_;
};

inline long valuation(const PadicScalar& x) { return x.valuation(); }
inline Rational norm(const PadicScalar& x) { return x.norm(); }
inline Rational fractional_part(const PadicScalar& y) { return y.fractional_part(); }

/// Where measure values live: the reals, or Q_s for a prime s != p.
class ValueMode {
 public:
  enum class Kind { real, sadic };

  static ValueMode real() { return ValueMode(Kind::real, 0); }
  static ValueMode sadic(long s) {
    require_prime(s, "s");
    return ValueMode(Kind::sadic, s);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_real() const noexcept { return kind_ == Kind::real; }
  bool is_sadic() const noexcept { return kind_ == Kind::sadic; }
  long s() const noexcept { return s_; }

  /// Archimedean |w| in real mode, |w|_s in s-adic mode.
  Rational abs(const Rational& w) const { return is_real() ? abs_rational(w) : padic_norm(w, s_); }

  std::string to_string() const { return is_real() ? std::string("real") : "sadic:" + std::to_string(s_); }

  friend bool operator==(const ValueMode&, const ValueMode&) = default;

 private:
  ValueMode(Kind kind, long s) : kind_(kind), s_(s) {}
  Kind kind_;
  long s_;
};

/// A measure value together with the field it is read in.
struct ValueScalar {
  Rational value;
  ValueMode mode = ValueMode::real();

  Rational norm() const { return mode.abs(value); }
  friend bool operator==(const ValueScalar&, const ValueScalar&) = default;
};

}  // namespace nam
