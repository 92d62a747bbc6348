#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "heunqdot/errors.hpp"
#include "heunqdot/termination.hpp"
#include "test_oracles.hpp"

using namespace heunqdot;
using heunqdot::testing::laplace_determinant;
using heunqdot::testing::reference_gamma;
using heunqdot::testing::termination_matrix;

namespace {
LaurentPolynomial L(int low, std::vector<Rational> c) { return LaurentPolynomial(low, std::move(c)); }
}  // namespace

TEST(GammaFactors, TableConsistentExamples) {
  const auto s2 = build_gamma_factors(2, 0, Convention::TableConsistent);
  ASSERT_EQ(s2.gamma.size(), 1u);
  EXPECT_EQ(s2.gamma_at(1), (GammaFactor{0, 4}));

  const auto s3 = build_gamma_factors(3, 0, Convention::TableConsistent);
  ASSERT_EQ(s3.gamma.size(), 2u);
  EXPECT_EQ(s3.gamma_at(1), (GammaFactor{0, 6}));
  EXPECT_EQ(s3.gamma_at(2), (GammaFactor{12, 6}));
  EXPECT_EQ(s3.gamma_at(1)(Rational(1)), 6);
  EXPECT_EQ(s3.gamma_at(2)(Rational(1)), 18);
}

TEST(GammaFactors, MatchReferenceFormulaBothConventions) {
  for (bool table : {true, false}) {
    const auto conv = table ? Convention::TableConsistent : Convention::RecurrenceLiteral;
    for (int n = 1; n <= 9; ++n)
      for (int l = 0; l <= 4; ++l) {
        const auto s = build_gamma_factors(n, l, conv);
        ASSERT_EQ(static_cast<int>(s.gamma.size()), n - 1);
        for (int p = 1; p < n; ++p)
          for (const Rational t : {Rational(1, 3), Rational(2), Rational(17, 5)})
            EXPECT_EQ(s.gamma_at(p)(t), reference_gamma(table, n, l, p, t)) << n << " " << l << " " << p;
      }
  }
}

TEST(GammaFactors, RejectsBadLabels) {
  EXPECT_THROW(build_gamma_factors(0, 0, Convention::TableConsistent), DomainError);
  EXPECT_THROW(build_gamma_factors(2, -1, Convention::TableConsistent), DomainError);
}

TEST(ConventionNames, RoundTrip) {
  EXPECT_EQ(parse_convention("table"), Convention::TableConsistent);
  EXPECT_EQ(parse_convention("literal"), Convention::RecurrenceLiteral);
  EXPECT_EQ(parse_convention(to_string(Convention::RecurrenceLiteral)), Convention::RecurrenceLiteral);
  EXPECT_FALSE(parse_convention("bogus").has_value());
}

TEST(Determinant, SymbolicExamples) {
  const auto d2 = determinant_sequence(build_gamma_factors(2, 0, Convention::TableConsistent)).last();
  EXPECT_EQ(d2, L(-1, {-4, 0, 0, Rational(1, 4)}));
  const auto d3 = determinant_sequence(build_gamma_factors(3, 0, Convention::TableConsistent)).last();
  EXPECT_EQ(d3, L(0, {-6, -6, 0, Rational(1, 8)}));
  const auto d4 = determinant_sequence(build_gamma_factors(4, 0, Convention::TableConsistent)).last();
  EXPECT_EQ(d4, L(-2, {64, 192, 0, -7, -12, 0, Rational(1, 16)}));
  for (int l = 0; l < 4; ++l) {
    const auto d1 = determinant_sequence(build_gamma_factors(1, l, Convention::TableConsistent)).last();
    EXPECT_EQ(d1, LaurentPolynomial::monomial(Rational(1, 2), 1));
  }
}

TEST(Determinant, DenominatorExponentBound) {
  for (int n = 1; n <= 8; ++n) {
    const auto seq = determinant_sequence(build_gamma_factors(n, 1, Convention::TableConsistent));
    for (int k = 1; k <= n; ++k) {
      EXPECT_GE(seq.at(k).low(), -(k - 1));
      EXPECT_EQ(seq.at(k).high(), k);
    }
  }
}

TEST(Clearing, Examples) {
  const auto c2 = clear_denominators(L(-1, {-4, 0, 0, Rational(1, 4)}));
  EXPECT_EQ(c2.clearing_power, 1);
  EXPECT_EQ(c2.polynomial, Polynomial({-4, 0, 0, Rational(1, 4)}));
  EXPECT_EQ(c2.primitive, Polynomial({-16, 0, 0, 1}));
  EXPECT_EQ(c2.content, Rational(1, 4));

  const auto c3 = clear_denominators(L(0, {-6, -6, 0, Rational(1, 8)}));
  EXPECT_EQ(c3.clearing_power, 0);
  EXPECT_EQ(c3.primitive, Polynomial({-48, -48, 0, 1}));
  EXPECT_EQ(c3.content, Rational(1, 8));

  const auto c1 = clear_denominators(LaurentPolynomial::monomial(Rational(1, 2), 1));
  EXPECT_EQ(c1.clearing_power, 0);
  EXPECT_EQ(c1.polynomial, Polynomial({0, Rational(1, 2)}));

  EXPECT_THROW(clear_denominators(LaurentPolynomial()), std::invalid_argument);
}

TEST(Clearing, ReproducesLaurentAtRandomPoints) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> tdist(0.05, 25.0);
  for (int n = 1; n <= 8; ++n)
    for (int l = 0; l <= 3; ++l) {
      const auto d = determinant_sequence(build_gamma_factors(n, l, Convention::TableConsistent)).last();
      const auto c = clear_denominators(d);
      for (int i = 0; i < 100; ++i) {
        const double t = tdist(rng);
        const double ref = d(t);
        EXPECT_NEAR(c.as_laurent(t), ref, 1e-12 * std::max(1.0, std::abs(ref)));
      }
    }
}

TEST(Roots, PublishedExamples) {
  const auto r20 = solve_termination(2, 0, Convention::TableConsistent).roots;
  ASSERT_EQ(r20.roots.size(), 1u);
  EXPECT_NEAR(r20.roots[0].t_star, std::cbrt(16.0), 1e-12);
  EXPECT_TRUE(r20.asymptotic_flag);

  const auto r31 = solve_termination(3, 1, Convention::TableConsistent).roots;
  ASSERT_EQ(r31.roots.size(), 1u);
  const double t = r31.roots[0].t_star;
  EXPECT_NEAR(t * t * t - 48 * t - 144, 0.0, 1e-10);
  EXPECT_NEAR(t, 8.1091, 5e-4 * 8.1091);

  const auto r40 = solve_termination(4, 0, Convention::TableConsistent).roots;
  ASSERT_EQ(r40.roots.size(), 2u);
  EXPECT_NEAR(r40.roots[0].t_star, 2.47047, 5e-4 * 2.47047);
  EXPECT_NEAR(r40.roots[1].t_star, 14.1004, 5e-4 * 14.1004);
  EXPECT_FALSE(r40.asymptotic_flag);
}

TEST(Roots, ClosedFormNEqualsTwo) {
  for (int l = 0; l <= 4; ++l) {
    const auto rs = solve_termination(2, l, Convention::TableConsistent).roots;
    ASSERT_EQ(rs.roots.size(), 1u);
    EXPECT_NEAR(rs.roots[0].t_star, std::cbrt(16.0 * (2 * l + 1)), 1e-12 * rs.roots[0].t_star);
  }
}

TEST(Roots, ConstantPolynomialHasNone) {
  ClearedPolynomial c = clear_denominators(LaurentPolynomial::constant(3));
  EXPECT_TRUE(isolate_roots(c, 1e-12).roots.empty());
}

TEST(Roots, PrecisionOutsideRangeRejected) {
  const auto c = solve_termination(2, 0, Convention::TableConsistent).cleared;
  EXPECT_THROW(isolate_roots(c, 1e-16), DomainError);
  EXPECT_THROW(isolate_roots(c, 1e-3), DomainError);
}

TEST(Roots, RepeatedRootWarns) {
  // (t - 3)^2 (t - 1)
  const Polynomial p({-9, 15, -7, 1});
  ClearedPolynomial c{p, 0, 1, p};
  const auto rs = isolate_roots(c, 1e-12);
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_NEAR(rs.roots[0].t_star, 1.0, 1e-12);
  EXPECT_NEAR(rs.roots[1].t_star, 3.0, 1e-12);
  EXPECT_FALSE(rs.warnings.empty());
}

TEST(Roots, CountsDiscardedRoots) {
  // t (t + 2)(t^2 + 1)(t - 5)
  const Polynomial p({0, -10, -3, -9, -3, 1});
  ClearedPolynomial c{p, 0, 1, p};
  const auto rs = isolate_roots(c, 1e-12);
  ASSERT_EQ(rs.roots.size(), 1u);
  EXPECT_NEAR(rs.roots[0].t_star, 5.0, 1e-12);
  EXPECT_EQ(rs.zero_roots, 1);
  EXPECT_EQ(rs.negative_roots, 1);
  EXPECT_EQ(rs.complex_roots, 2);
}

// Every root is certified and agrees with an independent sampled-bisection root finder.
TEST(RootProperties, CertifiedSortedAndIndependentlyConfirmed) {
  for (auto conv : {Convention::TableConsistent, Convention::RecurrenceLiteral})
    for (int n = 1; n <= 7; ++n)
      for (int l = 0; l <= 2; ++l) {
        const auto res = solve_termination(n, l, conv);
        const auto& p = res.cleared.polynomial;
        std::vector<double> dc;
        double max_c = 0;
        for (const auto& c : p.coefficients()) {
          dc.push_back(to_double(c));
          max_c = std::max(max_c, std::abs(dc.back()));
        }
        const auto& roots = res.roots.roots;
        for (std::size_t i = 0; i < roots.size(); ++i) {
          const auto& r = roots[i];
          EXPECT_GT(r.t_star, 0.0);
          EXPECT_DOUBLE_EQ(r.omega, 1.0 / (r.t_star * r.t_star));
          EXPECT_NE(r.sign_lo, r.sign_hi);
          EXPECT_EQ(p.sign_at(r.bracket_lo), r.sign_lo);
          EXPECT_EQ(p.sign_at(r.bracket_hi), r.sign_hi);
          EXPECT_LE(r.refinement_width, 1e-14 * std::max(1.0, r.t_star) + 1e-300);
          EXPECT_LE(std::abs(p(r.t_star)), 1e-10 * max_c * std::pow(r.t_star, p.degree()));
          if (i > 0) EXPECT_GT(r.t_star - roots[i - 1].t_star, r.refinement_width);
        }
        double hi = 1.0;
        for (const auto& r : roots) hi = std::max(hi, 2 * r.t_star);
        const auto ref = heunqdot::testing::sampled_roots(dc, 1e-3, hi);
        ASSERT_EQ(ref.size(), roots.size()) << n << " " << l;
        for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(roots[i].t_star, ref[i], 1e-9 * ref[i]);
      }
}

TEST(RootProperties, QuantumConditionByConstruction) {
  for (int n = 2; n <= 5; ++n)
    for (int l = 0; l <= 1; ++l)
      for (const auto& r : solve_termination(n, l, Convention::TableConsistent).roots.roots)
        EXPECT_NEAR((n + l + 1) * r.omega * r.t_star * r.t_star, n + l + 1, 1e-12);
}

TEST(AsymptoticListing, MatchesTables) {
  for (int l = 0; l <= 1; ++l) {
    EXPECT_TRUE(asymptotic_solution_listed(2, l));
    EXPECT_TRUE(asymptotic_solution_listed(3, l));
    EXPECT_FALSE(asymptotic_solution_listed(4, l));
    EXPECT_TRUE(asymptotic_solution_listed(5, l));
  }
  // The flagged entries are not roots: the cleared polynomials do not vanish at t = 0.
  for (int n : {2, 3}) {
    const auto c = solve_termination(n, 0, Convention::TableConsistent).cleared;
    EXPECT_NE(c.polynomial(Rational(0)), 0);
  }
}

TEST(CoefficientChain, Examples) {
  const auto s2 = build_gamma_factors(2, 0, Convention::TableConsistent);
  const double t = std::cbrt(16.0);
  const auto ch = coefficient_chain(s2, t);
  ASSERT_EQ(ch.A.size(), 3u);
  EXPECT_EQ(ch.A[0], 1.0);
  EXPECT_NEAR(ch.A[1], -1.25992, 5e-6);
  EXPECT_NEAR(ch.A[2], 0.0, 1e-12);
  EXPECT_EQ(ch.effective_degree, 1);

  const auto s1 = build_gamma_factors(1, 0, Convention::TableConsistent);
  const auto c1 = coefficient_chain(s1, 1.0);
  EXPECT_EQ(c1.A[0], 1.0);
  EXPECT_EQ(c1.A[1], -0.5);

  const auto s21 = build_gamma_factors(2, 1, Convention::TableConsistent);
  const auto c21 = coefficient_chain(s21, std::cbrt(48.0));
  EXPECT_NEAR(c21.A[1], -1.81712, 5e-6);
  EXPECT_NEAR(c21.A[2], 0.0, 1e-12);

  EXPECT_THROW(coefficient_chain(s2, 0.0), DomainError);
}

// A_k = (-1)^k d_k, so the chain vanishes at its last entry exactly at a root of d_n.
TEST(CoefficientChain, SymbolicChainIsSignedDeterminant) {
  for (int n = 1; n <= 7; ++n)
    for (int l = 0; l <= 2; ++l) {
      const auto s = build_gamma_factors(n, l, Convention::TableConsistent);
      const auto chain = coefficient_chain_symbolic(s);
      const auto seq = determinant_sequence(s);
      ASSERT_EQ(static_cast<int>(chain.size()), n + 1);
      EXPECT_EQ(chain[0], LaurentPolynomial::constant(1));
      for (int k = 1; k <= n; ++k) {
        const auto expected = (k % 2 == 0) ? seq.at(k) : seq.at(k) * Rational(-1);
        EXPECT_EQ(chain[k], expected);
      }
    }
}

// Dense determinant via Laplace expansion (test oracle) equals the recurrence exactly.
TEST(DeterminantEquivalence, LaplaceExpansionAtRandomRationals) {
  std::mt19937_64 rng(0xd37);
  for (bool table : {true, false}) {
    const auto conv = table ? Convention::TableConsistent : Convention::RecurrenceLiteral;
    for (int n = 1; n <= 7; ++n)
      for (int l = 0; l <= 3; ++l) {
        const auto d = determinant_sequence(build_gamma_factors(n, l, conv)).last();
        for (int i = 0; i < 10; ++i) {
          const Rational t = heunqdot::testing::random_rational_t(rng);
          EXPECT_EQ(d(t), laplace_determinant(termination_matrix(table, n, l, t))) << n << " " << l;
        }
      }
  }
}
