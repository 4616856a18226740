#pragma once

/// @file kakutani.hpp
/// @brief Densities between ball measures, the orthogonality test, product
///        densities and the equivalence/singularity decision for infinite
///        products given as a finite prefix plus a tail rule.

#include <optional>
#include <variant>
#include <vector>

#include "nam/algebra.hpp"

namespace nam {

using DensityFn = RationalFn;

/// ρ = dμ/dν cellwise. Cells outside supp ν get ρ = 0 (the function's
/// default), so ρ ≡ 1 only ν-almost everywhere when μ = ν.
inline DensityFn density(const BallMeasure& mu, const BallMeasure& nu) {
  require_same_space(mu, nu);
  if (mu.dim() != nu.dim()) throw InvalidArgument("density between measures on different dimensions");
  const auto [a, b] = unify_resolution(mu, nu);
  for (const auto& [c, w] : a.cells())
    if (b.cells().count(c) == 0) throw AbsoluteContinuityViolation("μ charges a cell that ν does not");
  DensityFn rho(a.prime(), a.dim(), a.resolution(), Rational(0));
  for (const auto& [c, w] : b.cells()) rho.set(c, Rational(a.weight_at(c) / w));
  return rho;
}

/// β = max over cells of |ρ| N_ν in the mode's absolute value, which is
/// max |w_μ| because |ρ||w_ν| = |w_μ| on supp ν.
inline Rational beta(const BallMeasure& mu, const BallMeasure& nu) {
  const DensityFn rho = density(mu, nu);
  const auto [a, b] = unify_resolution(mu, nu);
  const ValueMode& mode = b.mode();
  Rational out(0);
  for (const auto& [c, w] : b.cells()) out = std::max(out, Rational(mode.abs(rho(c)) * mode.abs(w)));
  return out;
}

/// f ⊗ g on the product space. Both defaults must be 0, which holds for
/// densities; otherwise the product would not have finite description.
inline RationalFn tensor(const RationalFn& f, const RationalFn& g) {
  if (f.prime() != g.prime()) throw PrimeMismatch("functions over different primes");
  if (f.default_value() != 0 || g.default_value() != 0) throw InvalidArgument("tensor needs zero defaults");
  const long m = std::max(f.resolution(), g.resolution());
  const RationalFn a = refine_fn(f, m);
  const RationalFn b = refine_fn(g, m);
  RationalFn out(f.prime(), f.dim() + g.dim(), m, Rational(0));
  for (const auto& [c1, v1] : a.values())
    for (const auto& [c2, v2] : b.values()) {
      Point c = c1;
      c.insert(c.end(), c2.begin(), c2.end());
      out.set(c, Rational(v1 * v2));
    }
  return out;
}

/// d(μ1⊗μ2)/d(ν1⊗ν2) = dμ1/dν1 ⊗ dμ2/dν2.
inline DensityFn product_density(const BallMeasure& mu1, const BallMeasure& nu1, const BallMeasure& mu2,
                                 const BallMeasure& nu2) {
  return tensor(density(mu1, nu1), density(mu2, nu2));
}

/// ∫ h dμ == ∫ h ρ dν, exactly.
inline bool change_of_measure_holds(const RationalFn& h, const BallMeasure& mu, const DensityFn& rho, const BallMeasure& nu) {
  return integrate(h, mu) == integrate(multiply(h, rho), nu);
}

struct Orthogonality {
  bool orthogonal = true;
  std::optional<Point> witness;  ///< least cell charged by both measures
};

/// Orthogonal iff no cell has N_{μ1} N_{μ2} != 0. Stored cells have nonzero
/// weight, so in both modes this is disjointness of the stored supports.
inline Orthogonality orthogonality_check(const BallMeasure& mu1, const BallMeasure& mu2) {
  require_same_space(mu1, mu2);
  if (mu1.dim() != mu2.dim()) throw InvalidArgument("orthogonality of measures on different dimensions");
  const auto [a, b] = unify_resolution(mu1, mu2);
  for (const auto& [c, w] : a.cells())
    if (b.cells().count(c) != 0) return {false, c};
  return {};
}

struct TrivialTail {};
struct GeometricTail {
  Rational ratio;  ///< β_j <= ratio < 1 for every j beyond the prefix
};
using TailRule = std::variant<TrivialTail, GeometricTail>;

struct FactorPair {
  BallMeasure mu;
  BallMeasure nu;
};

struct ProductPair {
  std::vector<FactorPair> factors;
  TailRule tail = TrivialTail{};
};

enum class Verdict { Equivalent, Singular };

inline const char* to_string(Verdict v) { return v == Verdict::Equivalent ? "Equivalent" : "Singular"; }

struct KakutaniDecision {
  Verdict verdict = Verdict::Equivalent;
  std::vector<Rational> betas;             ///< β_j for the prefix
  std::vector<Rational> partial_products;  ///< ∏_{i<=j} β_i
  Rational prefix_product;                 ///< ∏ β_j over the prefix
  std::optional<Rational> tail_ratio;      ///< set for a geometric tail
  std::vector<DensityFn> densities;        ///< ρ_j per factor
};

inline void validate_product_pair(const ProductPair& pp) {
  if (const auto* g = std::get_if<GeometricTail>(&pp.tail); g && !(g->ratio > 0 && g->ratio < 1))
    throw InvalidProductPair("geometric tail ratio must lie in (0, 1)");
  for (std::size_t j = 0; j < pp.factors.size(); ++j) {
    const auto& f = pp.factors[j];
    const std::string at = "factor " + std::to_string(j) + ": ";
    if (f.mu.prime() != pp.factors[0].mu.prime() || f.mu.mode() != pp.factors[0].mu.mode())
      throw InvalidProductPair(at + "all factors need the same p and mode");
    require_same_space(f.mu, f.nu);
    if (f.mu.dim() != f.nu.dim()) throw InvalidProductPair(at + "μ and ν live on different dimensions");
    if (!f.mu.is_probability() || !f.nu.is_probability()) throw InvalidProductPair(at + "not a probability pair");
  }
}

/// Decides μ ≪ ν versus μ ⊥ ν for ⊗μ_j, ⊗ν_j. A trivial tail leaves a
/// finite product of positive β_j, hence Equivalent; a geometric tail sends
/// the product to 0, hence Singular.
inline KakutaniDecision kakutani_decide(const ProductPair& pp) {
  validate_product_pair(pp);
  KakutaniDecision out;
  out.prefix_product = 1;
  for (const auto& f : pp.factors) {
    out.densities.push_back(density(f.mu, f.nu));
    const Rational b = beta(f.mu, f.nu);
    if (b <= 0 || b > 1) throw InvalidProductPair("β_j outside (0, 1] for a probability factor");
    out.betas.push_back(b);
    out.prefix_product *= b;
    out.partial_products.push_back(out.prefix_product);
  }
  if (const auto* g = std::get_if<GeometricTail>(&pp.tail)) {
    out.verdict = Verdict::Singular;
    out.tail_ratio = g->ratio;
  }
  return out;
}

/// (⊗_{j<n} μ_j, ⊗_{j<n} ν_j); n must be in 1..prefix length.
inline std::pair<BallMeasure, BallMeasure> truncated_product(const ProductPair& pp, std::size_t n) {
  if (n == 0 || n > pp.factors.size()) throw InvalidArgument("truncation length out of range");
  BallMeasure mu = pp.factors[0].mu;
  BallMeasure nu = pp.factors[0].nu;
  for (std::size_t j = 1; j < n; ++j) {
    mu = product_measure(mu, pp.factors[j].mu);
    nu = product_measure(nu, pp.factors[j].nu);
  }
  return {mu, nu};
}

/// q_n(x) = ∏_{j<n} ρ_j(x_j) on the product of the first n factor spaces.
inline DensityFn partial_density(const KakutaniDecision& d, std::size_t n) {
  if (n == 0 || n > d.densities.size()) throw InvalidArgument("truncation length out of range");
  DensityFn q = d.densities[0];
  for (std::size_t j = 1; j < n; ++j) q = tensor(q, d.densities[j]);
  return q;
}

}  // namespace nam
