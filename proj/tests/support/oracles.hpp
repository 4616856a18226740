#pragma once

// Brute-force reference implementations. These deliberately avoid the
// library's own reduction routines so that tests compare two independent
// computations.

#include <complex>
#include <numbers>
#include <vector>

#include "nam/nam.hpp"

namespace oracle {

using nam::Integer;
using nam::Point;
using nam::Rational;

/// v_p by repeated division of numerator and denominator.
inline long valuation(const Rational& x, long p) {
  if (x == 0) return nam::kInfiniteValuation;
  long v = 0;
  Integer num = x.get_num(), den = x.get_den();
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

inline Rational pow_p(long p, long k) {
  Rational r(1);
  for (long i = 0; i < k; ++i) r *= p;
  for (long i = 0; i > k; --i) r /= p;
  return r;
}

/// The unique N/p^k in [0,1) with y - N/p^k in Z_p, found by search.
inline Rational fractional_part(const Rational& y, long p) {
  if (y == 0) return 0;
  const long k = std::max(0L, -valuation(y, p));
  const long count = static_cast<long>(std::lround(std::pow(static_cast<double>(p), static_cast<double>(k))));
  for (long n = 0; n < count; ++n) {
    const Rational cand = Rational(n) / pow_p(p, k);
    const Rational diff = y - cand;
    if (diff == 0 || valuation(diff, p) >= 0) return cand;
  }
  throw std::logic_error("fractional part search failed");
}

/// Σ_cells w exp(2πi {z·c}_p), in floating point.
inline std::complex<double> character_sum(const nam::BallMeasure& mu, const Point& z) {
  std::complex<double> s = 0;
  for (const auto& [c, w] : mu.cells()) {
    Rational t(0);
    for (std::size_t i = 0; i < z.size(); ++i) t += z[i] * c[i];
    const double a = 2.0 * std::numbers::pi * fractional_part(t, mu.prime()).get_d();
    s += w.get_d() * std::complex<double>(std::cos(a), std::sin(a));
  }
  return s;
}

/// Group-ring element Σ a_e x^e of Q[x]/(x^N - 1), N = p^K.
struct GroupRing {
  long p;
  long level;
  std::vector<Rational> coeff;
};

/// Σ_cells w x^{N {z·c}_p} with N chosen large enough for every term.
inline GroupRing character_sum_exact(const nam::BallMeasure& mu, const Point& z) {
  const long p = mu.prime();
  std::vector<std::pair<Rational, Rational>> terms;
  long level = 0;
  for (const auto& [c, w] : mu.cells()) {
    Rational t(0);
    for (std::size_t i = 0; i < z.size(); ++i) t += z[i] * c[i];
    const Rational f = fractional_part(t, p);
    if (f != 0) level = std::max(level, -valuation(f, p));
    terms.emplace_back(f, w);
  }
  const Rational order = pow_p(p, level);
  GroupRing g{p, level, std::vector<Rational>(static_cast<std::size_t>(order.get_d()))};
  for (const auto& [f, w] : terms) {
    const Rational e = f * order;
    g.coeff[static_cast<std::size_t>(e.get_num().get_si())] += w;
  }
  return g;
}

inline GroupRing lift(const GroupRing& g, long level) {
  const long factor = static_cast<long>(pow_p(g.p, level - g.level).get_d());
  GroupRing out{g.p, level, std::vector<Rational>(g.coeff.size() * static_cast<std::size_t>(factor))};
  for (std::size_t e = 0; e < g.coeff.size(); ++e) out.coeff[e * static_cast<std::size_t>(factor)] = g.coeff[e];
  return out;
}

/// Polynomial long division by Φ_N(x) = Σ_{j<p} x^{j N/p}; true when the
/// remainder vanishes, i.e. the element is zero in Q(ζ_N).
inline bool vanishes_at_primitive_root(std::vector<Rational> poly, long p) {
  const long n = static_cast<long>(poly.size());
  if (n == 1) return poly[0] == 0;
  const long step = n / p;
  const long deg = step * (p - 1);
  for (long e = n - 1; e >= deg; --e) {
    const Rational c = poly[static_cast<std::size_t>(e)];
    if (c == 0) continue;
    for (long j = 0; j < p; ++j) poly[static_cast<std::size_t>(e - deg + j * step)] -= c;
  }
  for (long e = 0; e < deg; ++e)
    if (poly[static_cast<std::size_t>(e)] != 0) return false;
  return true;
}

/// g == h in Q(ζ_{p^∞}): Σ a_e ζ^e with ζ a primitive root of the larger order.
inline bool equal(const GroupRing& g, const GroupRing& h) {
  const long level = std::max(g.level, h.level);
  const GroupRing a = lift(g, level), b = lift(h, level);
  std::vector<Rational> diff(a.coeff.size());
  for (std::size_t e = 0; e < diff.size(); ++e) diff[e] = a.coeff[e] - b.coeff[e];
  return vanishes_at_primitive_root(std::move(diff), g.p);
}

inline GroupRing constant(long p, const Rational& c) { return {p, 0, {c}}; }

/// Σ_e coeffs[e] ζ^e from a library element, as a group-ring element.
inline GroupRing from_library(const nam::CyclotomicElement& x) {
  const long order = static_cast<long>(pow_p(x.prime(), x.level()).get_d());
  GroupRing g{x.prime(), x.level(), std::vector<Rational>(static_cast<std::size_t>(order))};
  for (std::size_t e = 0; e < x.coeffs().size(); ++e) g.coeff[e] = x.coeffs()[e];
  return g;
}

/// Determinant by cofactor expansion along the first row.
inline Rational det_cofactor(const nam::Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Rational s(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    nam::Matrix<Rational> sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) sub(i - 1, c++) = a(i, k);
    const Rational t = a(0, j) * det_cofactor(sub);
    s += (j % 2 == 0) ? t : Rational(-t);
  }
  return s;
}

/// Fraction-free (Bareiss) determinant on the cleared integer matrix;
/// polynomial time, for sizes where cofactor expansion is too slow.
inline Rational det_bareiss(const nam::Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  nam::Integer scale(1);
  std::vector<std::vector<nam::Integer>> m(n, std::vector<nam::Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    nam::Integer row_lcm(1);
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) m[i][j] = nam::Integer(a(i, j).get_num() * (row_lcm / a(i, j).get_den()));
    scale *= row_lcm;
  }
  int sign = 1;
  nam::Integer prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[r], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = nam::Integer((m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev);
    prev = m[k][k];
  }
  return nam::make_rational(nam::Integer(sign * m[n - 1][n - 1]), scale);
}

/// Minor with the given (0-based) rows and columns.
inline Rational minor(const nam::Matrix<Rational>& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  nam::Matrix<Rational> sub(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = a(rows[i], cols[j]);
  return det_cofactor(sub);
}

inline std::vector<std::size_t> range(std::size_t n) {
  std::vector<std::size_t> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = i;
  return r;
}

/// ‖U‖ = sup over unions B of cells inside U of |μ(B)| in the mode's
/// absolute value, by enumerating all subsets.
inline Rational set_norm(const nam::BallMeasure& mu, const std::vector<Rational>& weights) {
  Rational best(0);
  const std::size_t k = weights.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Rational s(0);
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) s += weights[i];
    best = std::max(best, mu.mode().abs(s));
  }
  return best;
}

/// N_μ(x) from the definition: infimum of ‖B(x, p^{-j})‖ over the balls
/// around x, from radius p^{depth} down to the cell radius.
inline Rational pointwise_norm(const nam::BallMeasure& mu, const Point& x) {
  const long p = mu.prime();
  long depth = 0;
  for (const auto& [c, w] : mu.cells())
    for (const auto& ci : c)
      if (ci != 0) depth = std::max(depth, -valuation(ci, p));
  for (const auto& xi : x)
    if (xi != 0) depth = std::max(depth, -valuation(xi, p));
  Rational best(-1);
  for (long j = -depth; j <= mu.resolution(); ++j) {
    std::vector<Rational> inside;
    for (const auto& [c, w] : mu.cells()) {
      bool in = true;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const Rational d = c[i] - x[i];
        if (d != 0 && valuation(d, p) < j) in = false;
      }
      if (in) inside.push_back(w);
    }
    const Rational nrm = set_norm(mu, inside);
    if (best < 0 || nrm < best) best = nrm;
  }
  return best;
}

}  // namespace oracle
