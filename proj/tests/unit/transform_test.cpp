#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace nam;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

CyclotomicElement one(long p) { return CyclotomicElement::constant(p, q(1)); }

TEST(Transform, Examples) {
  corpus::Rng rng(41);
  const BallMeasure pr = corpus::random_probability(rng, {3, 2, 2, 1, 4});
  EXPECT_EQ(fourier_stieltjes(pr, {q(0), q(0)}), one(3));
  for (const auto& z : admissible_lattice(haar(3, 1, 2))) EXPECT_EQ(fourier_stieltjes(dirac_origin(3, 1, 2), z), one(3));
  EXPECT_THROW(fourier_stieltjes(dirac_origin(3, 1, 1), {q(1, 9)}), AdmissibilityError);
  EXPECT_TRUE(is_admissible(dirac_origin(3, 1, 1), {q(1, 3)}));
}

TEST(Transform, HaarIsIndicatorOfUnitBall) {
  for (long p : {2, 3, 5}) {
    for (long m = 0; m <= 3; ++m) {
      const BallMeasure h = haar(p, 1, m);
      for (const auto& z : dual_lattice(p, 1, m, 1)) {
        const Rational expected = padic_norm(z[0], p) <= 1 ? 1 : 0;
        const CyclotomicElement t = fourier_stieltjes(h, z);
        EXPECT_EQ(t, CyclotomicElement::constant(p, expected));
        EXPECT_TRUE(oracle::equal(oracle::character_sum_exact(h, z), oracle::constant(p, expected)));
      }
    }
  }
}

TEST(Transform, MatchesExactCharacterSumOracle) {
  corpus::Rng rng(42);
  for (long p : {2, 3, 5}) {
    for (int i = 0; i < 40; ++i) {
      const BallMeasure mu = corpus::random_measure(rng, {p, 2, 1, 1, 4});
      for (const auto& z : admissible_lattice(mu)) {
        const CyclotomicElement t = fourier_stieltjes(mu, z);
        EXPECT_TRUE(oracle::equal(oracle::from_library(t), oracle::character_sum_exact(mu, z)));
        const auto approx = oracle::character_sum(mu, z);
        EXPECT_NEAR(t.complex_approx().real(), approx.real(), 1e-9);
        EXPECT_NEAR(t.complex_approx().imag(), approx.imag(), 1e-9);
      }
    }
  }
}

TEST(Transform, PeriodicModuloSupportDepth) {
  corpus::Rng rng(43);
  for (long p : {2, 3}) {
    for (int i = 0; i < 30; ++i) {
      const BallMeasure mu = corpus::random_measure(rng, {p, 1, 1, 2, 4});
      const Rational period = rational_pow(p, mu.support_depth());
      for (const auto& z : admissible_lattice(mu))
        EXPECT_EQ(fourier_stieltjes(mu, z), fourier_stieltjes(mu, {Rational(z[0] + period)}));
    }
  }
}

TEST(Transform, SymmetricIffRealOnEnumeratedCorpus) {
  for (long p : {2, 3}) {
    MeasureEnumerator e({p, 1, 1, {q(0), q(1, 2), q(1)}, ValueMode::real(), false, Integer(100000)});
    while (auto mu = e.next()) EXPECT_EQ(is_symmetric(*mu), has_real_transform(*mu)) << *mu;
  }
}

TEST(Transform, PositiveDefinite) {
  corpus::Rng rng(44);
  for (long p : {2, 3}) {
    for (int i = 0; i < 30; ++i) {
      const BallMeasure mu = corpus::random_probability(rng, {p, 1, 2, 1, 4});
      const auto zs = admissible_lattice(mu);
      const auto n = static_cast<Eigen::Index>(zs.size());
      Eigen::MatrixXcd gram(n, n);
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
          gram(a, b) = fourier_stieltjes(mu, {Rational(zs[static_cast<std::size_t>(a)][0] - zs[static_cast<std::size_t>(b)][0])}).complex_approx();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
      EXPECT_GE(solver.eigenvalues().minCoeff(), -1e-9);
    }
  }
}

TEST(Transform, DualLatticeShape) {
  EXPECT_EQ(dual_lattice(2, 1, 2, 0).size(), 4u);
  EXPECT_EQ(dual_lattice(3, 2, 1, 1).size(), 81u);
  EXPECT_EQ(dual_lattice(2, 1, -1, 0).size(), 1u);
  EXPECT_EQ(dual_lattice(2, 1, 2, 0)[1], Point{q(1, 4)});
}

}  // namespace
