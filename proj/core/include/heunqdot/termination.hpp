#pragma once

// Polynomial-termination condition of the Heun series in the variable
// t = 1/sqrt(omega) = 2 delta'.
//
// With gamma - alpha - 2 = 2n fixed (the energy quantization), the remaining
// condition is det M = 0 for the n x n tridiagonal matrix with diagonal delta',
// superdiagonal 1 and subdiagonal gamma_1..gamma_{n-1}. Its determinant obeys
//
//   d_1 = delta',   d_k = delta' d_{k-1} - gamma_{k-1} d_{k-2},
//
// and since 1 + alpha = (2l+1)/t every gamma_p is affine in 1/t, so d_n is a
// Laurent polynomial in t with rational coefficients.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heunqdot/laurent.hpp"

namespace heunqdot {

enum class Convention {
  // gamma_1 = 2n(1+alpha), gamma_p = 2(n-p)(p+1)(p+1+alpha) for p >= 2.
  TableConsistent,
  // gamma_{p+1} = 2(n-p)(p+1)(p+1+alpha), the coefficient of A_p in the row
  // producing A_{p+2}.
  RecurrenceLiteral,
};

std::string_view to_string(Convention c);
/// Accepts "table" / "literal" (and the enumerator names).
std::optional<Convention> parse_convention(std::string_view text);

/// constant + inv_t / t
struct GammaFactor {
  Rational constant;
  Rational inv_t;

  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] Rational operator()(const Rational& t) const;
  [[nodiscard]] LaurentPolynomial to_laurent() const;
  bool operator==(const GammaFactor&) const = default;
};

struct TerminationSystem {
  std::int32_t n = 1;
  std::int32_t l = 0;
  Convention convention = Convention::TableConsistent;
  // delta' = coulomb_a * t; 1/2 for the electron pair, 0 switches the Coulomb term off.
  Rational coulomb_a{1, 2};
  std::vector<GammaFactor> gamma;  // gamma[p - 1] holds gamma_p, p = 1..n-1

  [[nodiscard]] const GammaFactor& gamma_at(std::int32_t p) const { return gamma.at(static_cast<std::size_t>(p - 1)); }
  [[nodiscard]] LaurentPolynomial delta_prime() const { return LaurentPolynomial::monomial(coulomb_a, 1); }
};

/// Throws DomainError for n < 1 or l < 0.
TerminationSystem build_gamma_factors(std::int32_t n, std::int32_t l, Convention convention,
                                      const Rational& coulomb_a = Rational(1, 2));

struct DeterminantSequence {
  std::vector<LaurentPolynomial> d;  // d[k - 1] holds d_k

  [[nodiscard]] const LaurentPolynomial& at(std::int32_t k) const { return d.at(static_cast<std::size_t>(k - 1)); }
  [[nodiscard]] const LaurentPolynomial& last() const { return d.back(); }
};

DeterminantSequence determinant_sequence(const TerminationSystem& system);

/// d_n(t) * t^clearing_power as an ordinary polynomial, factored as content * primitive
/// with primitive having coprime integer coefficients and a positive leading term.
struct ClearedPolynomial {
  Polynomial polynomial;
  std::int32_t clearing_power = 0;
  Rational content;
  Polynomial primitive;

  /// polynomial(t) / t^clearing_power, i.e. d_n(t) for t > 0.
  [[nodiscard]] double as_laurent(double t) const;
};

/// Throws std::invalid_argument for the zero polynomial.
ClearedPolynomial clear_denominators(const LaurentPolynomial& d_n);

struct IsolatedRoot {
  double t_star = 0.0;
  double omega = 0.0;
  double refinement_width = 0.0;
  Rational bracket_lo;
  Rational bracket_hi;
  // Signs of the cleared polynomial at the bracket ends (equal only for a repeated root).
  int sign_lo = 0;
  int sign_hi = 0;
};

struct RootSet {
  std::vector<IsolatedRoot> roots;  // ascending
  bool asymptotic_flag = false;
  std::int32_t zero_roots = 0;
  std::int32_t negative_roots = 0;
  std::int32_t complex_roots = 0;
  std::vector<std::string> warnings;
};

/// Positive real roots by Sturm-guided subdivision of (0, Cauchy bound], each refined by
/// exact bisection until its bracket is narrower than `precision`.
/// Throws DomainError when precision lies outside [1e-14, 1e-6].
RootSet isolate_roots(const ClearedPolynomial& p, double precision);

/// Whether the published root tables list a t = 0 ("asymptotic") entry for (n, l).
/// That entry is metadata only; t = 0 is never a root of the cleared determinant.
bool asymptotic_solution_listed(std::int32_t n, std::int32_t l);

/// Full pipeline for one (n, l): gamma factors, d_n, clearing, isolation.
struct TerminationResult {
  TerminationSystem system;
  DeterminantSequence sequence;
  ClearedPolynomial cleared;
  RootSet roots;
};

TerminationResult solve_termination(std::int32_t n, std::int32_t l, Convention convention,
                                    double precision = 1e-14);

struct CoefficientChain {
  std::vector<double> A;  // A_0..A_n
  std::int32_t effective_degree = 0;
};

/// A_0 = 1, A_1 = -delta', A_{p+2} = -delta' A_{p+1} - gamma_{p+1} A_p, evaluated at t.
/// effective_degree is the highest p with |A_p| >= 1e-9 max|A|. Throws DomainError for t <= 0.
CoefficientChain coefficient_chain(const TerminationSystem& system, double t);
/// The same chain as Laurent polynomials in t.
std::vector<LaurentPolynomial> coefficient_chain_symbolic(const TerminationSystem& system);

}  // namespace heunqdot
