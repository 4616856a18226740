#pragma once

/// @file weak_dist.hpp
/// @brief Weak distributions: consistent families of finite-dimensional
///        projections μ_{L(n)} of a measure on c_0, with the checks and
///        witnesses that act on them.
///
/// Only finitely many levels are stored, so every "for all n" statement is
/// checked over the stored levels and reported as such.

#include <optional>
#include <vector>

#include "nam/algebra.hpp"

namespace nam {

class WeakDistribution {
 public:
  WeakDistribution(long p, ValueMode mode, std::vector<int> dims, std::vector<BallMeasure> levels)
      : p_(p), mode_(mode), dims_(std::move(dims)), levels_(std::move(levels)) {
    require_prime(p_);
    if (dims_.size() != levels_.size()) throw InvalidArgument("one dimension per level is required");
    if (dims_.empty()) throw InvalidArgument("a weak distribution needs at least one level");
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (i > 0 && dims_[i] <= dims_[i - 1]) throw InvalidArgument("level dimensions must increase strictly");
      const auto& mu = levels_[i];
      if (mu.prime() != p_) throw PrimeMismatch("level over a different prime");
      if (mu.mode() != mode_) throw ModeMismatch("level with a different value mode");
      if (mu.dim() != dims_[i]) throw InvalidArgument("level " + std::to_string(i) + " has the wrong dimension");
    }
  }

  long prime() const noexcept { return p_; }
  const ValueMode& mode() const noexcept { return mode_; }
  const std::vector<int>& dims() const noexcept { return dims_; }
  const std::vector<BallMeasure>& levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }
  const BallMeasure& level(std::size_t j) const { return levels_.at(j); }

  /// Marginals of one measure on the given leading-coordinate dimensions.
  static WeakDistribution from_marginals(const BallMeasure& top, const std::vector<int>& dims) {
    std::vector<BallMeasure> levels;
    for (int k : dims) levels.push_back(leading_marginal(top, k));
    return {top.prime(), top.mode(), dims, std::move(levels)};
  }

 private:
  long p_;
  ValueMode mode_;
  std::vector<int> dims_;
  std::vector<BallMeasure> levels_;
};

struct ConsistencyViolation {
  std::size_t lower = 0;  ///< level index whose weight disagrees
  std::size_t upper = 0;  ///< level index that was projected down
  long resolution = 0;    ///< resolution of the comparison
  Point cell;
  Rational lower_weight;
  Rational projected_weight;
};

struct ConsistencyReport {
  bool ok = true;
  std::size_t pairs_checked = 0;
  std::optional<ConsistencyViolation> violation;
};

/// Compares level `lower` with the projection of level `upper` onto its
/// leading coordinates, at the coarser of the two resolutions.
inline std::optional<ConsistencyViolation> compare_levels(const WeakDistribution& wd, std::size_t lower, std::size_t upper) {
  const BallMeasure& a = wd.level(lower);
  const BallMeasure& b = wd.level(upper);
  const long m = std::min(a.resolution(), b.resolution());
  const BallMeasure expected = coarsen(a, m);
  const BallMeasure projected = coarsen(leading_marginal(b, wd.dims()[lower]), m);
  if (expected.cells() == projected.cells()) return std::nullopt;
  // First differing cell in canonical order.
  auto ia = expected.cells().begin();
  auto ib = projected.cells().begin();
  ConsistencyViolation v{lower, upper, m, {}, Rational(0), Rational(0)};
  for (;;) {
    const bool ea = ia == expected.cells().end();
    const bool eb = ib == projected.cells().end();
    if (!ea && (eb || ia->first < ib->first)) {
      v.cell = ia->first;
      v.lower_weight = ia->second;
      return v;
    }
    if (!eb && (ea || ib->first < ia->first)) {
      v.cell = ib->first;
      v.projected_weight = ib->second;
      return v;
    }
    if (ia->second != ib->second) {
      v.cell = ia->first;
      v.lower_weight = ia->second;
      v.projected_weight = ib->second;
      return v;
    }
    ++ia;
    ++ib;
  }
}

/// Exact check of μ_{L(j)} = μ_{L(j+1)} ∘ P^{-1} for all adjacent pairs.
inline ConsistencyReport check_consistency(const WeakDistribution& wd) {
  ConsistencyReport report;
  for (std::size_t j = 0; j + 1 < wd.size(); ++j) {
    ++report.pairs_checked;
    if (auto v = compare_levels(wd, j, j + 1)) {
      report.ok = false;
      report.violation = std::move(v);
      return report;
    }
  }
  return report;
}

/// Cells of mu lying outside B(0, r); r must be at least the cell radius.
inline bool outside_ball(const BallMeasure& mu, const Point& c, const Rational& r) {
  return sup_norm(c, mu.prime()) > r;
}

inline void require_aligned_radius(const BallMeasure& mu, const Rational& r) {
  if (r < rational_pow(mu.prime(), -mu.resolution()))
    throw ResolutionError("radius " + to_string(r) + " is below the cell radius of a level");
}

struct TightnessCheck {
  Rational c;
  Rational r;
  bool pass = true;
  std::optional<std::size_t> witness_level;  ///< first level exceeding c
  Rational worst;                            ///< largest outside mass / norm seen
};

struct TightnessReport {
  std::vector<TightnessCheck> checks;
  Rational sup_level_norm;  ///< sup over stored levels of |μ_n|(L_n) or ‖L_n‖
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// For each (c, r): real mode checks |μ_n|(L_n \ B(0,r)) <= c, s-adic mode
/// checks ‖L_n \ B(0,r)‖ <= c, over every stored level n.
inline TightnessReport check_tightness(const WeakDistribution& wd, const std::vector<std::pair<Rational, Rational>>& schedule) {
  TightnessReport report;
  report.sup_level_norm = 0;
  for (const auto& mu : wd.levels()) report.sup_level_norm = std::max(report.sup_level_norm, norm(mu));
  for (const auto& [c, r] : schedule) {
    if (c <= 0 || r <= 0) throw InvalidArgument("tightness schedule needs c > 0 and r > 0");
    TightnessCheck check{c, r, true, std::nullopt, Rational(0)};
    for (std::size_t n = 0; n < wd.size(); ++n) {
      const BallMeasure& mu = wd.level(n);
      require_aligned_radius(mu, r);
      const Rational outside = restricted_norm(mu, [&](const Point& x) { return outside_ball(mu, x, r); });
      check.worst = std::max(check.worst, outside);
      if (outside > c && check.pass) {
        check.pass = false;
        check.witness_level = n;
      }
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

/// P_{L(j)}^{-1}(base): a cylinder set with a clopen base in Q_p^{k_j}.
struct CylinderSet {
  std::size_t level = 0;
  ClopenSet base;
};

inline void require_consistent_through(const WeakDistribution& wd, std::size_t level) {
  if (level >= wd.size()) throw InvalidArgument("cylinder level beyond the stored levels");
  for (std::size_t j = 0; j < level; ++j)
    if (compare_levels(wd, j, j + 1)) throw InconsistentFamily("levels " + std::to_string(j) + " and " + std::to_string(j + 1) + " disagree");
}

/// μ(C) computed on level `at` >= C.level (defaults to C.level).
inline ValueScalar cylinder_evaluate(const WeakDistribution& wd, const CylinderSet& cyl, std::optional<std::size_t> at = std::nullopt) {
  const std::size_t level = at.value_or(cyl.level);
  if (level < cyl.level) throw InvalidArgument("cannot evaluate a cylinder below its base level");
  require_consistent_through(wd, level);
  if (level == cyl.level) return measure_of(wd.level(level), cyl.base);
  return measure_of(leading_marginal(wd.level(level), wd.dims()[cyl.level]), cyl.base);
}

/// ∫ φ(P_{L(j)} x) μ(dx) for φ on Q_p^{k_j}, computed on level `at` >= j.
inline Rational integrate_cylinder(const WeakDistribution& wd, const RationalFn& phi, std::size_t j,
                                   std::optional<std::size_t> at = std::nullopt) {
  const std::size_t level = at.value_or(j);
  if (level < j) throw InvalidArgument("cannot integrate a cylinder function below its base level");
  if (phi.dim() != wd.dims().at(j)) throw InvalidArgument("cylinder function has the wrong dimension");
  require_consistent_through(wd, level);
  if (level == j) return integrate(phi, wd.level(j));
  return integrate(phi, leading_marginal(wd.level(level), wd.dims()[j]));
}

/// Mass (real) or norm (s-adic) of {x : |x_i| <= c for all i >= k}, the
/// c-neighbourhood of the span of the first k coordinates.
inline Rational plane_concentration(const BallMeasure& mu, int k, const Rational& c) {
  if (k < 0 || k > mu.dim()) throw InvalidArgument("plane dimension out of range");
  require_aligned_radius(mu, c);
  const long p = mu.prime();
  auto near_plane = [&](const Point& x) {
    for (std::size_t i = static_cast<std::size_t>(k); i < x.size(); ++i)
      if (padic_norm(x[i], p) > c) return false;
    return true;
  };
  if (mu.mode().is_sadic()) return restricted_norm(mu, near_plane);
  Rational s(0);
  for (const auto& [x, w] : mu.cells())
    if (near_plane(x)) s += w;
  return s;
}

/// Certified rational enclosure of π².
inline Rational pi_squared_lower() { return make_rational(Integer(9869604401L), Integer(1000000000L)); }
inline Rational pi_squared_upper() { return make_rational(Integer(9869604404L), Integer(1000000000L)); }

struct MinlosWitness {
  Matrix<Rational> moment_over_pi2;  ///< J(j,l) / π², exact
  Matrix<Rational> rounded;          ///< g_{j,l}: least p^i >= |J(j,l)|, 0 where J = 0
  Matrix<Rational> xi;               ///< ξ_{j,l} with |ξ_{j,l}|_p = g_{j,l}
  bool certified = true;             ///< every rounding was decided by the π² enclosure
};

/// J(j,l) = 2π² ∫_{B(0,r)} η(u_j) η(u_l) μ(du) with η = {·}_p, its rounding
/// into the value group, and matching entries ξ_{j,l} = 1/g_{j,l}.
inline MinlosWitness minlos_sazonov_witness(const BallMeasure& mu, const Rational& r) {
  if (!mu.mode().is_real()) throw ModeMismatch("the Minlos-Sazonov witness needs a real measure");
  if (mu.resolution() < 0) throw ResolutionError("η is constant on cells only for resolution >= 0");
  if (r <= 0) throw InvalidArgument("radius must be positive");
  require_aligned_radius(mu, r);
  const long p = mu.prime();
  const auto n = static_cast<std::size_t>(mu.dim());
  MinlosWitness out{Matrix<Rational>(n, n), Matrix<Rational>(n, n), Matrix<Rational>(n, n), true};
  for (const auto& [c, w] : mu.cells()) {
    if (sup_norm(c, p) > r) continue;
    std::vector<Rational> eta(n);
    for (std::size_t i = 0; i < n; ++i) eta[i] = fractional_part(c[i], p);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) out.moment_over_pi2(j, l) += 2 * eta[j] * eta[l] * w;
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      const Rational a = abs_rational(out.moment_over_pi2(j, l));
      if (a == 0) continue;
      const ValueGroupRounding g = round_up_enclosure(Rational(a * pi_squared_lower()), Rational(a * pi_squared_upper()), p);
      out.certified = out.certified && g.certified;
      out.rounded(j, l) = g.power;
      out.xi(j, l) = 1 / g.power;
    }
  return out;
}

/// Mass (real) or norm (s-adic) captured by the box {|x_k| <= radii_k}.
inline Rational box_capture(const BallMeasure& mu, const std::vector<Rational>& radii) {
  if (static_cast<int>(radii.size()) != mu.dim()) throw InvalidArgument("one radius per coordinate is required");
  const long p = mu.prime();
  auto inside = [&](const Point& x) {
    for (std::size_t k = 0; k < x.size(); ++k)
      if (padic_norm(x[k], p) > radii[k]) return false;
    return true;
  };
  if (mu.mode().is_sadic()) return restricted_norm(mu, inside);
  Rational s(0);
  for (const auto& [x, w] : mu.cells())
    if (inside(x)) s += w;
  return s;
}

struct SazonovWitness {
  std::vector<Rational> radii;  ///< z_k; coordinates beyond the level use p^{-m}
  Rational captured;
};

/// A coordinatewise-minimal resolution-aligned box L(0, z) with captured
/// mass (real) or norm (s-adic) >= 1 - ε. Coordinates are shrunk greedily in
/// index order; since feasibility is monotone this reaches a minimal box.
inline SazonovWitness sazonov_witness(const BallMeasure& mu, const Rational& eps) {
  if (eps <= 0) throw InvalidArgument("ε must be positive");
  if (!mu.is_probability()) throw InvalidArgument("sazonov_witness needs a probability measure");
  const long p = mu.prime();
  const auto n = static_cast<std::size_t>(mu.dim());
  const Rational floor_radius = rational_pow(p, -mu.resolution());
  std::vector<Rational> radii(n, floor_radius);
  for (const auto& [x, w] : mu.cells())
    for (std::size_t k = 0; k < n; ++k) radii[k] = std::max(radii[k], padic_norm(x[k], p));
  const Rational target = 1 - eps;
  for (std::size_t k = 0; k < n; ++k) {
    while (radii[k] > floor_radius) {
      std::vector<Rational> trial = radii;
      trial[k] /= p;
      if (box_capture(mu, trial) < target) break;
      radii = std::move(trial);
    }
  }
  return {radii, box_capture(mu, radii)};
}

}  // namespace nam
