#include <gtest/gtest.h>

#include "nam/cli/scenario.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace nam;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

const Integer kCap(1000000);

BallMeasure scaled(const BallMeasure& mu, const Rational& c) {
  BallMeasure out(mu.prime(), mu.dim(), mu.resolution(), mu.mode());
  for (const auto& [x, w] : mu.cells()) out.add(x, Rational(w * c));
  return out;
}

TEST(Convolve, Examples) {
  corpus::Rng rng(51);
  const BallMeasure mu = corpus::random_measure(rng, {3, 2, 1, 1, 5});
  EXPECT_EQ(convolve(mu, dirac_origin(3, 2, 1)), mu);
  EXPECT_EQ(convolve(haar(2, 1, 2), haar(2, 1, 2)), haar(2, 1, 2));
  // Brute-force cell sums for haar * haar on a ball.
  const BallMeasure h = haar(3, 1, 1, ValueMode::real(), -1);
  const BallMeasure c = convolve(h, h);
  for (const auto& x : cells_in_ball(3, 1, 1, -1)) {
    Rational s(0);
    for (const auto& a : cells_in_ball(3, 1, 1, -1))
      for (const auto& b : cells_in_ball(3, 1, 1, -1))
        if (canonical_center({Rational(a[0] + b[0])}, 3, 1) == x) s += h.weight_at(a) * h.weight_at(b);
    EXPECT_EQ(c.weight_at(x), s);
  }
  EXPECT_THROW(convolve(mu, dirac_origin(3, 2, 1, ValueMode::sadic(2))), ModeMismatch);
}

TEST(Convolve, TheoremOnRandomPairs) {
  corpus::Rng rng(52);
  for (long p : {2, 3, 5}) {
    for (int i = 0; i < 40; ++i) {
      const int n = static_cast<int>(corpus::uniform(rng, 1, 2));
      const BallMeasure a = corpus::random_measure(rng, {p, n, 1, 1, 3});
      const BallMeasure b = corpus::random_measure(rng, {p, n, 1, 1, 3});
      EXPECT_TRUE(cli::convolution_theorem_holds(a, b, kCap));
    }
  }
}

TEST(Convolve, MixedResolutionNeedsRefinable) {
  const BallMeasure h = haar(2, 1, 2);
  const BallMeasure d = dirac_origin(2, 1, 1);
  EXPECT_EQ(convolve(h, haar(2, 1, 1)).resolution(), 2);
  EXPECT_THROW(convolve(h, d), ResolutionError);
  EXPECT_TRUE(cli::convolution_theorem_holds(h, haar(2, 1, 1), kCap));
}

TEST(Product, Examples) {
  EXPECT_EQ(product_measure(dirac_origin(2, 1, 1), dirac_origin(2, 1, 1)), dirac_origin(2, 2, 1));
  EXPECT_EQ(product_measure(haar(3, 1, 1), haar(3, 1, 1)), haar(3, 2, 1));
  corpus::Rng rng(53);
  for (long p : {2, 3}) {
    for (int i = 0; i < 30; ++i) {
      const BallMeasure a = corpus::random_measure(rng, {p, 1, 1, 1, 3});
      const BallMeasure b = corpus::random_measure(rng, {p, 1, 1, 1, 3});
      EXPECT_TRUE(cli::product_factorization_holds(a, b, kCap));
      EXPECT_EQ(marginal(product_measure(a, b), {0}), scaled(a, b.total_mass()));
    }
  }
}

TEST(Pushforward, Examples) {
  corpus::Rng rng(54);
  const BallMeasure a = corpus::random_measure(rng, {3, 1, 1, 1, 3});
  const BallMeasure b = corpus::random_probability(rng, {3, 1, 1, 1, 3});
  const BallMeasure mu = product_measure(a, b);
  EXPECT_EQ(pushforward(mu, RationalMatrix::identity(2)), mu);
  EXPECT_EQ(pushforward(mu, RationalMatrix{{q(1), q(0)}}), a);
  EXPECT_THROW(pushforward(mu, RationalMatrix{{q(1)}}), DimensionMismatch);
  // T = [[1/3]] loses one digit of resolution.
  EXPECT_EQ(pushforward(mu, RationalMatrix{{q(1, 3), q(0)}}).resolution(), 0);
}

TEST(Pushforward, AdjointLawOnRandomCorpus) {
  corpus::Rng rng(55);
  for (long p : {2, 3, 5}) {
    for (int i = 0; i < 30; ++i) {
      const BallMeasure mu = corpus::random_measure(rng, {p, 2, 1, 1, 3});
      RationalMatrix t(static_cast<std::size_t>(corpus::uniform(rng, 1, 2)), 2);
      for (std::size_t r = 0; r < t.rows(); ++r)
        for (std::size_t c = 0; c < 2; ++c) t(r, c) = corpus::small_rational(rng, p, 3);
      EXPECT_TRUE(cli::pushforward_adjoint_holds(mu, t, kCap));
      EXPECT_EQ(pushforward(mu, t).total_mass(), mu.total_mass());
    }
  }
}

TEST(WeakMoment, Examples) {
  EXPECT_EQ(weak_q_moment(dirac_origin(2, 1, 3), {q(1)}, 1.0).value, 0.0);
  EXPECT_EQ(weak_q_moment(haar(2, 1, 3), {q(0)}, 2.0).value, 0.0);
  EXPECT_EQ(weak_q_moment(haar(2, 1, 3), {q(0)}, 2.0).error_bound, 0.0);
  EXPECT_THROW(weak_q_moment(haar(2, 1, 1, ValueMode::sadic(3)), {q(1)}, 1.0), ModeMismatch);
}

TEST(WeakMoment, HaarPartialSumsApproachTwoThirds) {
  for (long m = 1; m <= 8; ++m) {
    const Approximation a = weak_q_moment(haar(2, 1, m), {q(1)}, 1.0);
    // Σ_{k<m} 2^{-k-1} 2^{-k}: the brute-force partial sum.
    double partial = 0.0;
    for (long k = 0; k < m; ++k) partial += std::ldexp(1.0, static_cast<int>(-2 * k - 1));
    EXPECT_NEAR(a.value, partial, 1e-15);
    EXPECT_LE(std::abs(a.value - 2.0 / 3.0), a.error_bound + 1e-15);
    EXPECT_LE(a.error_bound, std::ldexp(1.0, static_cast<int>(-m)));
  }
}

TEST(TailInequality, Examples) {
  const BallMeasure d = dirac_origin(2, 1, 2);
  const auto r = symmetric_tail_inequality_check(d, d, q(1, 2));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_TRUE(symmetric_tail_inequality_check(haar(3, 1, 2), haar(3, 1, 2), q(1, 3)).holds);
  EXPECT_THROW(symmetric_tail_inequality_check(d, dirac(2, 1, 2, {q(1)}), q(1, 2)), SymmetryRequired);
}

TEST(TailInequality, EnumeratedPairs) {
  const auto corpus = enumerate_measures({2, 1, 2, {q(0), q(1, 4), q(1, 2)}, ValueMode::real(), true, Integer(100000)});
  std::vector<BallMeasure> symmetric;
  for (const auto& mu : corpus)
    if (is_symmetric(mu)) symmetric.push_back(mu);
  ASSERT_FALSE(symmetric.empty());
  for (const auto& mu : corpus)
    for (const auto& nu : symmetric)
      for (const Rational& l : {q(1, 4), q(1, 2), q(3, 4)}) EXPECT_TRUE(symmetric_tail_inequality_check(mu, nu, l).holds);
}

}  // namespace
