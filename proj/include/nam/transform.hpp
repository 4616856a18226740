#pragma once

/// @file transform.hpp
/// @brief The Fourier–Stieltjes transform θ_μ(z) = ∫ χ_e(z·x) μ(dx) of a
///        ball measure, evaluated exactly in Q(ζ_{p^k}).

#include <vector>

#include "nam/cyclotomic.hpp"
#include "nam/measure.hpp"

namespace nam {

/// |z| <= p^m, the range where χ_e(z·x) is constant on every cell.
inline bool is_admissible(const BallMeasure& mu, const Point& z) {
  if (static_cast<int>(z.size()) != mu.dim()) return false;
  for (const auto& zk : z)
    if (zk != 0 && valuation(zk, mu.prime()) < -mu.resolution()) return false;
  return true;
}

inline CyclotomicElement fourier_stieltjes(const BallMeasure& mu, const Point& z) {
  if (static_cast<int>(z.size()) != mu.dim()) throw InvalidArgument("transform argument has the wrong dimension");
  if (!is_admissible(mu, z))
    throw AdmissibilityError("|z| exceeds p^m = p^" + std::to_string(mu.resolution()) +
                             "; the transform is not cell-exact there");
  const long p = mu.prime();
  std::vector<std::pair<Rational, const Rational*>> terms;
  terms.reserve(mu.cells().size());
  long level = 0;
  for (const auto& [c, w] : mu.cells()) {
    Rational angle = fractional_part(dot(z, c), p);
    if (angle != 0) level = std::max(level, integer_valuation(angle.get_den(), p));
    terms.emplace_back(std::move(angle), &w);
  }
  const long order = prime_power(p, level);
  std::vector<Rational> dense(static_cast<std::size_t>(order));
  for (const auto& [angle, w] : terms) {
    const Rational e = angle * order;
    dense[static_cast<std::size_t>(e.get_num().get_si())] += *w;
  }
  return CyclotomicElement::from_dense(p, level, std::move(dense));
}

/// Representatives of (p^{-m} Z_p / p^{depth} Z_p)^n, in lexicographic order.
///
/// For a measure supported in p^{-depth} Z_p^n at resolution m the transform
/// is periodic modulo p^{depth} Z_p^n, so this finite set carries all of it.
inline std::vector<Point> dual_lattice(long p, int n, long m, long depth) {
  const long span = std::max(0L, m + depth);
  const Integer count = ipow(p, static_cast<unsigned long>(span));
  const Rational step = rational_pow(p, -m);
  std::vector<Point> out;
  std::vector<Integer> digit(static_cast<std::size_t>(n), Integer(0));
  for (;;) {
    Point z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = step * Rational(digit[static_cast<std::size_t>(i)]);
    out.push_back(std::move(z));
    int k = n - 1;
    for (; k >= 0; --k) {
      auto& d = digit[static_cast<std::size_t>(k)];
      d += 1;
      if (d < count) break;
      d = 0;
    }
    if (k < 0) break;
  }
  return out;
}

/// The admissible lattice carrying the whole transform of mu.
inline std::vector<Point> admissible_lattice(const BallMeasure& mu) {
  return dual_lattice(mu.prime(), mu.dim(), mu.resolution(), mu.support_depth());
}

/// θ_μ on a list of points.
inline std::vector<CyclotomicElement> transform_table(const BallMeasure& mu, const std::vector<Point>& points) {
  std::vector<CyclotomicElement> out;
  out.reserve(points.size());
  for (const auto& z : points) out.push_back(fourier_stieltjes(mu, z));
  return out;
}

/// True when θ_μ(z) is real at every admissible lattice point.
inline bool has_real_transform(const BallMeasure& mu) {
  for (const auto& z : admissible_lattice(mu))
    if (!fourier_stieltjes(mu, z).is_real()) return false;
  return true;
}

}  // namespace nam
