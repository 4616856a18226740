#pragma once

/// @file gaussian.hpp
/// @brief Radially constant approximations of ν_ξ(dx) = C(ξ) exp(-|xξ|²) m(dx).
///
/// The density is not locally constant, so this is the one place where
/// weights are floating point. Every quantity derived from these measures
/// carries an explicit error bound.

#include <cmath>
#include <map>
#include <vector>

#include "nam/algebra.hpp"

namespace nam {

/// Ball measure with double weights; produced only by radial_gaussian.
class ApproxBallMeasure {
 public:
  ApproxBallMeasure(long p, int n, long m) : p_(p), n_(n), m_(m) {}

  long prime() const noexcept { return p_; }
  int dim() const noexcept { return n_; }
  long resolution() const noexcept { return m_; }
  const std::map<Point, double>& cells() const noexcept { return cells_; }

  void set(const Point& c, double w) { cells_[canonical_center(c, p_, m_)] = w; }

  double total_mass() const {
    double s = 0.0;
    for (const auto& [c, w] : cells_) s += w;
    return s;
  }

  double weight_at(const Point& x) const {
    const auto it = cells_.find(canonical_center(x, p_, m_));
    return it == cells_.end() ? 0.0 : it->second;
  }

 private:
  long p_;
  int n_;
  long m_;
  std::map<Point, double> cells_;
};

/// One term [p^{lq} - p^{(l-1)q}] exp(-p^{2l} |ξ|²) of C(ξ)^{-1}: the Haar
/// mass of the sphere {|x| = p^l} in Q_p^q times the density there.
inline double gaussian_shell_mass(long p, int q, long l, double xi_norm) {
  const double pq = std::pow(static_cast<double>(p), static_cast<double>(q) * static_cast<double>(l));
  const double haar = pq * (1.0 - std::pow(static_cast<double>(p), -static_cast<double>(q)));
  const double r = std::pow(static_cast<double>(p), static_cast<double>(l)) * xi_norm;
  return haar * std::exp(-r * r);
}

/// Partial sums of C(ξ)^{-1} over l = from..to (inclusive).
inline std::vector<double> gaussian_normalizer_partial_sums(long p, int q, double xi_norm, long from, long to) {
  std::vector<double> sums;
  double s = 0.0;
  for (long l = from; l <= to; ++l) {
    s += gaussian_shell_mass(p, q, l, xi_norm);
    sums.push_back(s);
  }
  return sums;
}

/// Σ_{l <= top} of the shell masses; the terms shrink at least like p^{lq}.
inline double gaussian_inner_mass(long p, int q, long top, double xi_norm) {
  double s = 0.0;
  for (long l = top; l > top - 2000; --l) {
    const double t = gaussian_shell_mass(p, q, l, xi_norm);
    s += t;
    if (t < 1e-30 * s) break;
  }
  return s;
}

/// Upper bound on Σ_{l > top} p^{lq} exp(-p^{2l}|ξ|²).
inline double gaussian_outer_tail(long p, int q, long top, double xi_norm) {
  double s = 0.0;
  double prev = -1.0;
  for (long l = top + 1; l < top + 4000; ++l) {
    const double pl = std::pow(static_cast<double>(p), static_cast<double>(l));
    const double t = std::pow(pl, static_cast<double>(q)) * std::exp(-(pl * xi_norm) * (pl * xi_norm));
    s += t;
    // Once consecutive terms shrink by half the rest is at most the last term.
    if (prev > 0.0 && t <= 0.5 * prev) return s + t;
    if (t == 0.0 && prev == 0.0) return s;
    prev = t;
  }
  return s;
}

struct RadialGaussian {
  ApproxBallMeasure measure;
  double tail_bound = 0.0;  ///< upper bound on the true mass outside the window
  double window_mass = 0.0; ///< C(ξ)^{-1} restricted to the window
};

/// Cells of radius p^{l_min} covering B(0, p^{l_max}); the cell at the origin
/// absorbs every shell with l <= l_min. Weights are normalized against the
/// window mass plus the outer tail bound, so total mass is in [1 - tail, 1].
inline RadialGaussian radial_gaussian(const PadicScalar& xi, int n, long l_min, long l_max) {
  if (xi.is_zero()) throw InvalidArgument("radial_gaussian needs ξ != 0");
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  if (l_min > l_max) throw EmptyWindow("empty truncation window [" + std::to_string(l_min) + ", " + std::to_string(l_max) + "]");
  const long p = xi.prime();
  const double xi_norm = xi.norm().get_d();
  const long m = -l_min;

  std::map<Point, double> raw;
  double window = 0.0;
  for (const auto& c : cells_in_ball(p, n, m, -l_max)) {
    double w = 0.0;
    const Rational r = sup_norm(c, p);
    if (r == 0) {
      w = gaussian_inner_mass(p, n, l_min, xi_norm);
    } else {
      const double radius = r.get_d() * xi_norm;
      w = std::pow(static_cast<double>(p), -static_cast<double>(m) * n) * std::exp(-radius * radius);
    }
    window += w;
    raw.emplace(c, w);
  }
  const double tail = gaussian_outer_tail(p, n, l_max, xi_norm);
  RadialGaussian out{ApproxBallMeasure(p, n, m), tail / window, window};
  const double upper = window + tail;
  for (const auto& [c, w] : raw) out.measure.set(c, w / upper);
  return out;
}

/// ∫ f dν for a rational locally constant f no finer than the cells.
/// error_bound covers truncation, normalization and rounding.
inline Approximation integrate(const RationalFn& f, const RadialGaussian& g) {
  const auto& mu = g.measure;
  if (f.prime() != mu.prime() || f.dim() != mu.dim()) throw InvalidArgument("integrand lives on another space");
  if (f.resolution() > mu.resolution()) throw ResolutionError("integrand finer than the gaussian's cells");
  double sup = std::abs(f.default_value().get_d());
  for (const auto& [c, v] : f.values()) sup = std::max(sup, std::abs(v.get_d()));
  Approximation out;
  for (const auto& [c, w] : mu.cells()) out.value += f(c).get_d() * w;
  out.error_bound = 2.0 * sup * g.tail_bound + 1e-13 * (sup + 1.0);
  return out;
}

/// Certified bound on |∫ f dν_ξ - f(0)|: oscillation of f times the mass
/// away from the origin's f-cell, plus the integration error.
inline double dirac_deviation_bound(const RationalFn& f, const RadialGaussian& g) {
  const Point origin(static_cast<std::size_t>(f.dim()), Rational(0));
  const Rational f0 = f(origin);
  double osc = std::abs(Rational(f.default_value() - f0).get_d());
  for (const auto& [c, v] : f.values()) osc = std::max(osc, std::abs(Rational(v - f0).get_d()));
  double away = 0.0;
  for (const auto& [c, w] : g.measure.cells())
    if (canonical_center(c, f.prime(), f.resolution()) != canonical_center(origin, f.prime(), f.resolution())) away += w;
  return osc * (away + g.tail_bound) + integrate(f, g).error_bound;
}

}  // namespace nam
