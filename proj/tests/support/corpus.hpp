#pragma once

// Seeded random generators for property tests. Every generator takes the
// engine by reference so a test's corpus is fixed by its seed.

#include <random>
#include <vector>

#include "nam/nam.hpp"

namespace corpus {

using nam::BallMeasure;
using nam::Point;
using nam::Rational;
using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Small signed rational with a denominator from {1, 2, 3, p, p^2}.
inline Rational small_rational(Rng& rng, long p, long span = 5) {
  static const long dens[] = {1, 2, 3};
  const long choice = uniform(rng, 0, 4);
  const long den = choice < 3 ? dens[choice] : (choice == 3 ? p : p * p);
  return nam::make_rational(uniform(rng, -span, span), den);
}

/// Uniform point of p^{-depth} Z_p^n modulo p^m, as a canonical center.
inline Point random_center(Rng& rng, long p, int n, long m, long depth) {
  const long count = nam::ipow(p, static_cast<unsigned long>(m + depth)).get_si();
  Point c(static_cast<std::size_t>(n));
  for (auto& x : c) x = nam::make_rational(uniform(rng, 0, count - 1), 1) * nam::rational_pow(p, -depth);
  return nam::canonical_center(c, p, m);
}

struct MeasureShape {
  long p = 2;
  int n = 1;
  long m = 1;
  long depth = 1;
  int max_cells = 4;
  nam::ValueMode mode = nam::ValueMode::real();
};

/// Signed measure with up to max_cells atoms.
inline BallMeasure random_measure(Rng& rng, const MeasureShape& s) {
  BallMeasure mu(s.p, s.n, s.m, s.mode, false);
  const int cells = static_cast<int>(uniform(rng, 1, s.max_cells));
  for (int i = 0; i < cells; ++i) mu.add(random_center(rng, s.p, s.n, s.m, s.depth), small_rational(rng, s.p));
  return mu;
}

/// Real probability measure: positive integer weights, normalized.
inline BallMeasure random_probability(Rng& rng, const MeasureShape& s) {
  std::vector<std::pair<Point, long>> atoms;
  long total = 0;
  const int cells = static_cast<int>(uniform(rng, 1, s.max_cells));
  for (int i = 0; i < cells; ++i) {
    const long w = uniform(rng, 1, 6);
    atoms.emplace_back(random_center(rng, s.p, s.n, s.m, s.depth), w);
    total += w;
  }
  BallMeasure mu(s.p, s.n, s.m, nam::ValueMode::real(), false);
  for (const auto& [c, w] : atoms) mu.add(c, nam::make_rational(w, total));
  return mu;
}

/// S-adic probability measure: weights with denominators prime to s, so each
/// |w|_s <= 1, and a last atom that brings the total to 1; hence ‖X‖ = 1.
inline BallMeasure random_sadic_probability(Rng& rng, const MeasureShape& s) {
  BallMeasure mu(s.p, s.n, s.m, s.mode, false);
  const int cells = static_cast<int>(uniform(rng, 1, s.max_cells));
  Rational total(0);
  for (int i = 1; i < cells; ++i) {
    const Rational w = nam::make_rational(uniform(rng, -4, 4), uniform(rng, 0, 1) ? 1 : s.p);
    mu.add(random_center(rng, s.p, s.n, s.m, s.depth), w);
    total += w;
  }
  mu.add(random_center(rng, s.p, s.n, s.m, s.depth), Rational(1 - total));
  return mu;
}

/// Random rational matrix; with probability 1/4 per entry the entry is 0,
/// which regularly produces vanishing leading minors.
inline nam::Matrix<Rational> random_matrix(Rng& rng, long p, std::size_t d) {
  nam::Matrix<Rational> a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (uniform(rng, 0, 3) != 0) a(i, j) = small_rational(rng, p, 4);
  return a;
}

inline nam::Matrix<Rational> random_invertible(Rng& rng, long p, std::size_t d) {
  for (;;) {
    auto a = random_matrix(rng, p, d);
    if (nam::det(a) != 0) return a;
  }
}

inline nam::Matrix<Rational> random_symmetric_invertible(Rng& rng, long p, std::size_t d) {
  for (;;) {
    nam::Matrix<Rational> a(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) a(i, j) = a(j, i) = small_rational(rng, p, 4);
    if (nam::det(a) != 0) return a;
  }
}

}  // namespace corpus
