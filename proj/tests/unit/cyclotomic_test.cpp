#include <gtest/gtest.h>

#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace nam;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

CyclotomicElement zeta(long p, long k, long e = 1) { return CyclotomicElement::from_root(RootOfUnity(p, q(e, prime_power(p, k)))); }

CyclotomicElement random_element(corpus::Rng& rng, long p, long k) {
  std::vector<Rational> c(static_cast<std::size_t>(totient_prime_power(p, k)));
  for (auto& x : c) x = corpus::small_rational(rng, p, 3);
  return {p, k, c};
}

TEST(Character, Examples) {
  EXPECT_TRUE(character(PadicScalar(3, q(7, 9)), PadicScalar(3, q(0))).is_one());
  EXPECT_TRUE(character(PadicScalar(5, q(1)), PadicScalar(5, q(7, 3))).is_one());
  const RootOfUnity half = character(PadicScalar(2, q(1)), PadicScalar(2, q(1, 2)));
  EXPECT_EQ(half.angle(), q(1, 2));
  EXPECT_NEAR(half.approx().real(), -1.0, 1e-15);
}

TEST(Character, HomomorphismAndLocalConstancy) {
  corpus::Rng rng(21);
  for (long p : {2, 3, 5}) {
    for (int i = 0; i < 300; ++i) {
      const Rational xi = corpus::small_rational(rng, p, 20);
      const Rational x = corpus::small_rational(rng, p, 20) / p;
      const Rational y = corpus::small_rational(rng, p, 20) / (p * p);
      EXPECT_EQ(character(p, xi, Rational(x + y)), character(p, xi, x) * character(p, xi, y));
      // |ξ| <= p^m and |x - x'| <= p^{-m} leave χ unchanged.
      const long m = corpus::uniform(rng, 0, 3);
      const Rational xi_m = rational_pow(p, -m) * corpus::uniform(rng, -9, 9);
      const Rational shift = rational_pow(p, m) * corpus::uniform(rng, -9, 9) / (p == 2 ? 3 : 2);
      EXPECT_EQ(character(p, xi_m, x), character(p, xi_m, Rational(x + shift)));
    }
  }
}

TEST(Character, FullCycleCancellation) {
  for (long p : {2, 3, 5}) {
    for (long k = 1; k <= 3; ++k) {
      const long order = prime_power(p, k);
      // 1 < |ξ| <= p^k: ξ = u / p^j with 1 <= j <= k and u a unit.
      for (long j = 1; j <= k; ++j) {
        for (long u : {1L, p + 1, 2 * p - 1}) {
          const Rational xi = q(u, prime_power(p, j));
          CyclotomicElement sum = CyclotomicElement::constant(p, q(0));
          for (long r = 0; r < order; ++r) sum += CyclotomicElement::from_root(character(p, xi, q(r)));
          EXPECT_TRUE(sum.is_zero()) << "p=" << p << " k=" << k << " xi=" << xi;
        }
      }
    }
  }
}

TEST(Cyclotomic, MinimalPolynomialRelation) {
  for (long p : {2, 3, 5, 7}) {
    CyclotomicElement s = CyclotomicElement::constant(p, q(0));
    for (long j = 0; j < p; ++j) s += zeta(p, 1, j);
    EXPECT_TRUE(s.is_zero());
  }
}

TEST(Cyclotomic, ConjugateExamples) {
  const CyclotomicElement z = zeta(2, 2);
  EXPECT_EQ(z.conjugate(), z * q(-1));
  EXPECT_TRUE((zeta(5, 2) + zeta(5, 2).conjugate()).is_real());
  EXPECT_FALSE(zeta(3, 1).is_real());
  EXPECT_TRUE(CyclotomicElement::constant(3, q(2, 7)).is_real());
}

TEST(Cyclotomic, ComplexApprox) {
  EXPECT_NEAR(CyclotomicElement::constant(2, q(1)).complex_approx().real(), 1.0, 1e-15);
  EXPECT_NEAR(zeta(2, 1).complex_approx().real(), -1.0, 1e-15);
  const auto z3 = zeta(3, 1).complex_approx();
  EXPECT_NEAR(z3.real(), -0.5, 1e-15);
  EXPECT_NEAR(z3.imag(), 0.8660254037844386, 1e-15);
}

TEST(Cyclotomic, RingAxiomsAndEmbedding) {
  corpus::Rng rng(22);
  for (long p : {2, 3, 5}) {
    for (int i = 0; i < 60; ++i) {
      const auto a = random_element(rng, p, corpus::uniform(rng, 0, 2));
      const auto b = random_element(rng, p, corpus::uniform(rng, 0, 2));
      const auto c = random_element(rng, p, corpus::uniform(rng, 0, 2));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a.conjugate().conjugate(), a);
      EXPECT_EQ((a * b).conjugate(), a.conjugate() * b.conjugate());
      EXPECT_TRUE((a * a.conjugate()).is_real());
      // complex_approx is a ring homomorphism up to rounding.
      const auto lhs = (a * b).complex_approx();
      const auto rhs = a.complex_approx() * b.complex_approx();
      EXPECT_NEAR(lhs.real(), rhs.real(), 1e-9);
      EXPECT_NEAR(lhs.imag(), rhs.imag(), 1e-9);
    }
  }
}

TEST(Cyclotomic, LiftAndMinimalLevel) {
  corpus::Rng rng(23);
  for (long p : {2, 3}) {
    for (int i = 0; i < 40; ++i) {
      const auto a = random_element(rng, p, 1);
      const auto lifted = a.lift_level(3);
      EXPECT_EQ(lifted, a);
      EXPECT_EQ(lifted.minimal_level().level(), a.minimal_level().level());
      EXPECT_EQ(oracle::from_library(lifted).coeff.size(), static_cast<std::size_t>(prime_power(p, 3)));
      EXPECT_TRUE(oracle::equal(oracle::from_library(lifted), oracle::from_library(a)));
    }
  }
  EXPECT_THROW(zeta(2, 2).lift_level(1), InvalidArgument);
}

TEST(Cyclotomic, NormalFormAgreesWithPolynomialDivision) {
  corpus::Rng rng(24);
  for (long p : {2, 3, 5}) {
    for (long k = 1; k <= 2; ++k) {
      for (int i = 0; i < 40; ++i) {
        const long order = prime_power(p, k);
        std::vector<Rational> dense(static_cast<std::size_t>(order));
        for (auto& x : dense) x = corpus::small_rational(rng, p, 3);
        const auto reduced = CyclotomicElement::from_dense(p, k, dense);
        EXPECT_TRUE(oracle::equal(oracle::from_library(reduced), oracle::GroupRing{p, k, dense}));
      }
    }
  }
}

TEST(Cyclotomic, CrossPrimeEquality) {
  EXPECT_EQ(CyclotomicElement::constant(2, q(3)), CyclotomicElement::constant(5, q(3)));
  EXPECT_NE(CyclotomicElement::constant(2, q(3)), CyclotomicElement::constant(5, q(2)));
  EXPECT_THROW(zeta(2, 1) + zeta(3, 1), PrimeMismatch);
}

TEST(RootOfUnity, Validation) {
  EXPECT_THROW(RootOfUnity(2, q(1, 3)), InvalidArgument);
  EXPECT_EQ(RootOfUnity(3, q(4, 3)).angle(), q(1, 3));
  EXPECT_EQ(RootOfUnity(3, q(-1, 3)).angle(), q(2, 3));
  EXPECT_EQ(RootOfUnity(3, q(1, 9)).level(), 2);
}

}  // namespace
