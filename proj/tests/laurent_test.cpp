#include <gtest/gtest.h>

#include <random>

#include "heunqdot/laurent.hpp"

using namespace heunqdot;

namespace {
LaurentPolynomial random_laurent(std::mt19937_64& rng) {
  const int low = static_cast<int>(rng() % 7) - 3;
  std::vector<Rational> c(1 + rng() % 5);
  for (auto& x : c) x = Rational(static_cast<int>(rng() % 21) - 10, 1 + static_cast<int>(rng() % 6));
  return LaurentPolynomial(low, c);
}
}  // namespace

TEST(Laurent, TrimsZerosAtBothEnds) {
  const LaurentPolynomial p(-2, {0, 0, 3, 0, 5, 0});
  EXPECT_EQ(p.low(), 0);
  EXPECT_EQ(p.high(), 2);
  EXPECT_EQ(p.coefficient(1), 0);
  EXPECT_EQ(p.coefficient(2), 5);
  EXPECT_TRUE(LaurentPolynomial(4, {0, 0}).is_zero());
}

TEST(Laurent, ToStringHighestPowerFirst) {
  const auto d2 = LaurentPolynomial::monomial(Rational(1, 4), 2) - LaurentPolynomial::monomial(4, -1);
  EXPECT_EQ(d2.to_string(), "1/4 t^2 - 4 t^-1");
  EXPECT_EQ(LaurentPolynomial().to_string(), "0");
}

TEST(Laurent, ArithmeticMatchesPointwiseEvaluation) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_laurent(rng);
    const auto b = random_laurent(rng);
    const Rational t(1 + static_cast<int>(rng() % 40), 1 + static_cast<int>(rng() % 7));
    EXPECT_EQ((a + b)(t), a(t) + b(t));
    EXPECT_EQ((a - b)(t), a(t) - b(t));
    EXPECT_EQ((a * b)(t), a(t) * b(t));
    EXPECT_EQ((a * Rational(3, 7))(t), a(t) * Rational(3, 7));
    EXPECT_NEAR(a(to_double(t)), to_double(a(t)), 1e-9 * (1 + std::abs(to_double(a(t)))));
  }
}

TEST(Polynomial, DivisionReconstructs) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<Rational> n(2 + rng() % 6), d(1 + rng() % 3);
    for (auto& x : n) x = static_cast<int>(rng() % 19) - 9;
    for (auto& x : d) x = static_cast<int>(rng() % 19) - 9;
    d.back() = 1 + static_cast<int>(rng() % 4);
    Polynomial num(n), den(d), q, r;
    Polynomial::divide(num, den, q, r);
    EXPECT_LT(r.degree(), den.degree() == 0 ? 0 : den.degree());
    for (int k = -3; k <= 3; ++k) EXPECT_EQ(q(Rational(k)) * den(Rational(k)) + r(Rational(k)), num(Rational(k)));
  }
  Polynomial q, r;
  EXPECT_THROW(Polynomial::divide(Polynomial({1, 1}), Polynomial(), q, r), std::invalid_argument);
}

TEST(Polynomial, GcdFindsCommonFactor) {
  // (t - 2)(t + 3) and (t - 2)(t - 5)
  const Polynomial a({-6, 1, 1});
  const Polynomial b({10, -7, 1});
  const auto g = Polynomial::gcd(a, b).monic();
  EXPECT_EQ(g, Polynomial({-2, 1}));
}

TEST(Polynomial, DerivativeAndSign) {
  const Polynomial p({-16, 0, 0, 1});
  EXPECT_EQ(p.derivative(), Polynomial({0, 0, 3}));
  EXPECT_EQ(p.sign_at(Rational(2)), -1);
  EXPECT_EQ(p.sign_at(Rational(3)), 1);
  EXPECT_EQ(Polynomial({0, 1}).sign_at(Rational(0)), 0);
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(Polynomial().degree(), -1);
}
