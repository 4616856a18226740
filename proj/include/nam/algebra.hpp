#pragma once

/// @file algebra.hpp
/// @brief Operations producing new measures (convolution, products,
///        pushforwards, marginals) and scalar functionals built on the
///        transform (weak q-moments, the symmetric tail inequality).

#include <cmath>
#include <vector>

#include "nam/matrix.hpp"
#include "nam/transform.hpp"

namespace nam {

/// μ1 * μ2: the image of μ1 ⊗ μ2 under addition. B(x,r) + B(y,r) = B(x+y,r),
/// so cells add exactly.
inline BallMeasure convolve(const BallMeasure& a, const BallMeasure& b) {
  require_same_space(a, b);
  if (a.dim() != b.dim()) throw InvalidArgument("convolution of measures on different dimensions");
  const auto [x, y] = unify_resolution(a, b);
  // A cell-uniform factor makes the result cell-uniform.
  BallMeasure out(a.prime(), a.dim(), x.resolution(), a.mode(), a.refinable() || b.refinable());
  Point sum(static_cast<std::size_t>(a.dim()));
  for (const auto& [c1, w1] : x.cells())
    for (const auto& [c2, w2] : y.cells()) {
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = c1[k] + c2[k];
      out.add(sum, Rational(w1 * w2));
    }
  return out;
}

/// μ1 ⊗ μ2 on Q_p^{n1+n2}.
inline BallMeasure product_measure(const BallMeasure& a, const BallMeasure& b) {
  require_same_space(a, b);
  const auto [x, y] = unify_resolution(a, b);
  BallMeasure out(a.prime(), a.dim() + b.dim(), x.resolution(), a.mode(), a.refinable() && b.refinable());
  for (const auto& [c1, w1] : x.cells())
    for (const auto& [c2, w2] : y.cells()) {
      Point c = c1;
      c.insert(c.end(), c2.begin(), c2.end());
      out.insert_unique(c, Rational(w1 * w2));
    }
  return out;
}

/// Image under the coordinate projection x -> (x_i)_{i in coords}.
inline BallMeasure marginal(const BallMeasure& mu, const std::vector<int>& coords) {
  if (coords.empty()) throw InvalidArgument("marginal needs at least one coordinate");
  for (int i : coords)
    if (i < 0 || i >= mu.dim()) throw InvalidArgument("marginal coordinate out of range");
  BallMeasure out(mu.prime(), static_cast<int>(coords.size()), mu.resolution(), mu.mode(), mu.refinable());
  Point y(coords.size());
  for (const auto& [c, w] : mu.cells()) {
    for (std::size_t k = 0; k < coords.size(); ++k) y[k] = c[static_cast<std::size_t>(coords[k])];
    out.add(y, w);
  }
  return out;
}

/// Marginal on the first k coordinates.
inline BallMeasure leading_marginal(const BallMeasure& mu, int k) {
  std::vector<int> coords(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) coords[static_cast<std::size_t>(i)] = i;
  return marginal(mu, coords);
}

/// Resolution at which the image of every input cell under x -> T x lies in
/// a single output cell: m' = m - max(0, max_ij -v(T_ij)).
inline long pushforward_resolution(const BallMeasure& mu, const Matrix<Rational>& t) {
  long deficit = 0;
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j)
      if (t(i, j) != 0) deficit = std::max(deficit, -valuation(t(i, j), mu.prime()));
  return mu.resolution() - deficit;
}

/// Image measure ν = μ ∘ T^{-1} for a rational linear map T : Q_p^n -> Q_p^{n'}
/// given as an n' x n matrix. Colliding images add; cancelled cells vanish.
inline BallMeasure pushforward(const BallMeasure& mu, const Matrix<Rational>& t) {
  if (static_cast<int>(t.cols()) != mu.dim() || t.rows() == 0)
    throw DimensionMismatch("pushforward matrix must be n' x " + std::to_string(mu.dim()));
  BallMeasure out(mu.prime(), static_cast<int>(t.rows()), pushforward_resolution(mu, t), mu.mode(), false);
  for (const auto& [c, w] : mu.cells()) out.add(t * c, w);
  return out;
}

/// A value computed in floating point, with a bound on its distance to the
/// exact quantity it approximates.
struct Approximation {
  double value = 0.0;
  double error_bound = 0.0;
};

/// ψ_{q,μ}(z) = ∫ |z·x|_p^q μ(dx) for a real measure.
///
/// |z·x|^q is constant on a cell only when |z·c| > |z| p^{-m}. Cells below
/// that threshold (the one at the origin in particular) contribute 0 and
/// add (|z| p^{-m})^q |w| to the error bound.
inline Approximation weak_q_moment(const BallMeasure& mu, const Point& z, double q) {
  if (!mu.mode().is_real()) throw ModeMismatch("weak q-moments are defined for real measures only");
  if (!(q > 0)) throw InvalidArgument("q must be positive");
  if (static_cast<int>(z.size()) != mu.dim()) throw InvalidArgument("moment direction has the wrong dimension");
  const long p = mu.prime();
  const Rational threshold = sup_norm(z, p) * rational_pow(p, -mu.resolution());
  const double threshold_q = std::pow(threshold.get_d(), q);
  Approximation out;
  for (const auto& [c, w] : mu.cells()) {
    const Rational a = padic_norm(dot(z, c), p);
    if (a > threshold)
      out.value += std::pow(a.get_d(), q) * w.get_d();
    else
      out.error_bound += threshold_q * std::abs(w.get_d());
  }
  return out;
}

/// ∫ θ_μ dν = Σ_j v_j θ_μ(d_j), exactly. Requires θ_μ to be constant on ν's
/// cells and every ν-center to be admissible for μ.
inline CyclotomicElement transform_integral(const BallMeasure& mu, const BallMeasure& nu) {
  require_same_space(mu, nu);
  if (mu.dim() != nu.dim()) throw InvalidArgument("dimension mismatch");
  if (nu.resolution() < mu.support_depth())
    throw ResolutionError("θ_μ is not constant on the cells of ν (ν resolution below μ's support depth)");
  CyclotomicElement acc = CyclotomicElement::constant(mu.prime(), Rational(0));
  for (const auto& [d, v] : nu.cells()) acc += fourier_stieltjes(mu, d) * v;
  return acc;
}

struct TailInequality {
  bool holds = false;
  double lhs = 0.0;    ///< μ([x : θ_ν(x) <= l])
  double rhs = 0.0;    ///< ∫ (1 - θ_μ) dν / (1 - l)
  double slack = 0.0;  ///< float tolerance used on both comparisons
};

/// Checks μ([x : θ_ν(x) <= l]) <= ∫ (1 - θ_μ) dν / (1 - l) for real
/// probability measures with ν symmetric and 0 < l < 1.
inline TailInequality symmetric_tail_inequality_check(const BallMeasure& mu, const BallMeasure& nu, const Rational& l) {
  require_same_space(mu, nu);
  if (!mu.mode().is_real()) throw ModeMismatch("tail inequality needs real measures");
  if (!mu.is_probability() || !nu.is_probability()) throw InvalidArgument("tail inequality needs probability measures");
  if (!(l > 0 && l < 1)) throw InvalidArgument("l must lie in (0, 1)");
  if (!is_symmetric(nu)) throw SymmetryRequired("ν must be symmetric");
  if (mu.resolution() < nu.support_depth())
    throw ResolutionError("θ_ν is not constant on the cells of μ");

  TailInequality out;
  double slack = 0.0;
  double lhs = 0.0;
  const double level = l.get_d();
  for (const auto& [c, w] : mu.cells()) {
    const CyclotomicElement t = fourier_stieltjes(nu, c);
    const double err = t.approx_error_bound();
    slack = std::max(slack, err);
    // Conservative: a value within the float slack of l counts as <= l.
    if (t.complex_approx().real() <= level + err) lhs += w.get_d();
  }
  const CyclotomicElement cross = transform_integral(mu, nu);
  const double denom = 1.0 - level;
  out.lhs = lhs;
  out.rhs = (1.0 - cross.complex_approx().real()) / denom;
  out.slack = 1e-12 + slack + cross.approx_error_bound() / denom;
  out.holds = out.lhs <= out.rhs + out.slack;
  return out;
}

}  // namespace nam
