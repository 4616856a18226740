#pragma once

/// @file cyclotomic.hpp
/// @brief p-power roots of unity, the ring Q(ζ_{p^k}) they generate, and the
///        characters χ_ξ(x) = exp(2πi {ξx}_p).
///
/// Elements are kept in the power basis ζ^0 .. ζ^{φ(p^k)-1}. Any exponent
/// e >= φ(p^k) is rewritten through Φ_{p^k}(ζ) = Σ_{j<p} ζ^{j p^{k-1}} = 0,
/// which yields a unique normal form and therefore exact equality tests.

#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <vector>

#include "nam/padic.hpp"

namespace nam {

/// exp(2πi t) for a rational angle t in [0, 1) with denominator p^k.
class RootOfUnity {
 public:
  RootOfUnity(long p, const Rational& angle) : p_(p), angle_(fractional_part_real(angle)) {
    require_prime(p_);
    if (strip_prime(angle_.get_den(), p_) != 1)
      throw InvalidArgument("root of unity angle must have a p-power denominator");
  }

  long prime() const noexcept { return p_; }
  const Rational& angle() const noexcept { return angle_; }
  /// k such that the order is p^k.
  long level() const { return angle_ == 0 ? 0 : integer_valuation(angle_.get_den(), p_); }
  bool is_one() const { return angle_ == 0; }

  friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
    if (a.p_ != b.p_) throw PrimeMismatch("roots of unity over different primes");
    return {a.p_, Rational(a.angle_ + b.angle_)};
  }
  RootOfUnity inverse() const { return {p_, Rational(-angle_)}; }

  std::complex<double> approx() const {
    const double t = 2.0 * std::numbers::pi * angle_.get_d();
    return {std::cos(t), std::sin(t)};
  }

  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;

 private:
  static Rational fractional_part_real(const Rational& t) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return Rational(t - fl);
  }

  long p_;
  Rational angle_;
};

/// χ_ξ(x) = exp(2πi {ξ x}_p).
inline RootOfUnity character(const PadicScalar& xi, const PadicScalar& x) {
  const PadicScalar product = xi * x;
  return {product.prime(), product.fractional_part()};
}

inline RootOfUnity character(long p, const Rational& xi, const Rational& x) {
  return {p, fractional_part(Rational(xi * x), p)};
}

/// Euler's φ(p^k).
inline long totient_prime_power(long p, long k) {
  if (k == 0) return 1;
  long q = 1;
  for (long i = 1; i < k; ++i) q *= p;
  return q * (p - 1);
}

inline long prime_power(long p, long k) {
  long q = 1;
  for (long i = 0; i < k; ++i) q *= p;
  return q;
}

class CyclotomicElement {
 public:
  /// Zero of Q(ζ_{p^0}) = Q.
  explicit CyclotomicElement(long p = 2) : p_(p), level_(0), coeffs_(1) {}

  /// Element from canonical coefficients; the size must be φ(p^level).
  CyclotomicElement(long p, long level, std::vector<Rational> coeffs)
      : p_(p), level_(level), coeffs_(std::move(coeffs)) {
    require_prime(p_);
    if (level_ < 0) throw InvalidArgument("negative cyclotomic level");
    if (static_cast<long>(coeffs_.size()) != totient_prime_power(p_, level_))
      throw InvalidArgument("coefficient count must equal phi(p^level)");
  }

  static CyclotomicElement constant(long p, const Rational& c) { return {p, 0, {c}}; }

  static CyclotomicElement from_root(const RootOfUnity& z) {
    const long k = z.level();
    const long order = prime_power(z.prime(), k);
    std::vector<Rational> dense(static_cast<std::size_t>(order));
    const Rational e = z.angle() * order;
    dense[static_cast<std::size_t>(e.get_num().get_si())] = 1;
    return from_dense(z.prime(), k, std::move(dense));
  }

  /// Σ_e dense[e] ζ^e with e ranging over [0, p^level), reduced to normal form.
  static CyclotomicElement from_dense(long p, long level, std::vector<Rational> dense) {
    const long order = prime_power(p, level);
    if (static_cast<long>(dense.size()) != order) throw InvalidArgument("dense vector size must be p^level");
    const long phi = totient_prime_power(p, level);
    if (level > 0) {
      const long step = order / p;
      for (long e = order - 1; e >= phi; --e) {
        const Rational c = dense[static_cast<std::size_t>(e)];
        if (c == 0) continue;
        const long r = e - phi;
        for (long j = 0; j + 1 < p; ++j) dense[static_cast<std::size_t>(j * step + r)] -= c;
        dense[static_cast<std::size_t>(e)] = 0;
      }
    }
    dense.resize(static_cast<std::size_t>(phi));
    return {p, level, std::move(dense)};
  }

  long prime() const noexcept { return p_; }
  long level() const noexcept { return level_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  /// Same element written over ζ_{p^k'} for k' >= level (ζ_{p^k} = ζ_{p^k'}^{p^{k'-k}}).
  CyclotomicElement lift_level(long target) const {
    if (target < level_) throw InvalidArgument("lift_level cannot lower the level");
    if (target == level_) return *this;
    const long stride = prime_power(p_, target - level_);
    std::vector<Rational> out(static_cast<std::size_t>(totient_prime_power(p_, target)));
    for (std::size_t e = 0; e < coeffs_.size(); ++e) out[e * static_cast<std::size_t>(stride)] = coeffs_[e];
    return {p_, target, std::move(out)};
  }

  /// Smallest level at which the element is representable.
  CyclotomicElement minimal_level() const {
    CyclotomicElement cur = *this;
    while (cur.level_ > 0) {
      bool descends = true;
      for (std::size_t e = 0; e < cur.coeffs_.size() && descends; ++e)
        if (cur.coeffs_[e] != 0 && e % static_cast<std::size_t>(p_) != 0) descends = false;
      if (!descends) break;
      std::vector<Rational> lower(static_cast<std::size_t>(totient_prime_power(p_, cur.level_ - 1)));
      for (std::size_t e = 0; e < lower.size(); ++e) lower[e] = cur.coeffs_[e * static_cast<std::size_t>(p_)];
      cur = CyclotomicElement(p_, cur.level_ - 1, std::move(lower));
    }
    return cur;
  }

  /// Image under ζ -> ζ^{-1}, i.e. complex conjugation in every embedding.
  CyclotomicElement conjugate() const {
    const long order = prime_power(p_, level_);
    std::vector<Rational> dense(static_cast<std::size_t>(order));
    for (std::size_t e = 0; e < coeffs_.size(); ++e) {
      const long target = e == 0 ? 0 : order - static_cast<long>(e);
      dense[static_cast<std::size_t>(target)] += coeffs_[e];
    }
    return from_dense(p_, level_, std::move(dense));
  }

  bool is_real() const { return conjugate() == *this; }

  friend CyclotomicElement operator+(const CyclotomicElement& a, const CyclotomicElement& b) {
    const long p = check_prime(a, b);
    const long k = std::max(a.level_, b.level_);
    CyclotomicElement out = a.lift_level(k);
    const CyclotomicElement rhs = b.lift_level(k);
    for (std::size_t e = 0; e < out.coeffs_.size(); ++e) out.coeffs_[e] += rhs.coeffs_[e];
    out.p_ = p;
    return out;
  }

  friend CyclotomicElement operator-(const CyclotomicElement& a, const CyclotomicElement& b) {
    return a + b * Rational(-1);
  }

  friend CyclotomicElement operator*(const CyclotomicElement& a, const CyclotomicElement& b) {
    const long p = check_prime(a, b);
    const long k = std::max(a.level_, b.level_);
    const CyclotomicElement x = a.lift_level(k);
    const CyclotomicElement y = b.lift_level(k);
    const long order = prime_power(p, k);
    std::vector<Rational> dense(static_cast<std::size_t>(order));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
      if (x.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
        if (y.coeffs_[j] == 0) continue;
        dense[(i + j) % static_cast<std::size_t>(order)] += x.coeffs_[i] * y.coeffs_[j];
      }
    }
    return from_dense(p, k, std::move(dense));
  }

  friend CyclotomicElement operator*(const CyclotomicElement& a, const Rational& w) {
    CyclotomicElement out = a;
    for (auto& c : out.coeffs_) c *= w;
    return out;
  }
  friend CyclotomicElement operator*(const Rational& w, const CyclotomicElement& a) { return a * w; }

  CyclotomicElement& operator+=(const CyclotomicElement& b) { return *this = *this + b; }

  /// Equality in Q(ζ_{p^∞}): compares at the common level.
  friend bool operator==(const CyclotomicElement& a, const CyclotomicElement& b) {
    if (a.p_ != b.p_) {
      // Only rationals live in both towers.
      const CyclotomicElement x = a.minimal_level();
      const CyclotomicElement y = b.minimal_level();
      return x.level_ == 0 && y.level_ == 0 && x.coeffs_ == y.coeffs_;
    }
    const long k = std::max(a.level_, b.level_);
    return a.lift_level(k).coeffs_ == b.lift_level(k).coeffs_;
  }

  /// Σ coeff_e e^{2πi e/p^k} in double precision (diagnostics only).
  std::complex<double> complex_approx() const {
    const double order = static_cast<double>(prime_power(p_, level_));
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t e = 0; e < coeffs_.size(); ++e) {
      if (coeffs_[e] == 0) continue;
      const double t = 2.0 * std::numbers::pi * static_cast<double>(e) / order;
      sum += coeffs_[e].get_d() * std::complex<double>(std::cos(t), std::sin(t));
    }
    return sum;
  }

  /// A generous bound on |complex_approx() - exact value|.
  double approx_error_bound() const {
    double l1 = 0.0;
    for (const auto& c : coeffs_) l1 += std::abs(c.get_d());
    return 16.0 * static_cast<double>(coeffs_.size() + 1) * 2.220446049250313e-16 * (l1 + 1.0);
  }

  friend std::ostream& operator<<(std::ostream& os, const CyclotomicElement& c) {
    os << "[p=" << c.p_ << " k=" << c.level_ << ":";
    for (const auto& x : c.coeffs_) os << ' ' << to_string(x);
    return os << ']';
  }

 private:
  static long check_prime(const CyclotomicElement& a, const CyclotomicElement& b) {
    if (a.p_ != b.p_) throw PrimeMismatch("cyclotomic elements over different primes");
    return a.p_;
  }

  long p_;
  long level_;
  std::vector<Rational> coeffs_;
};

}  // namespace nam
