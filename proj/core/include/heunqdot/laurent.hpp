#pragma once

// Exact rational polynomial arithmetic in one variable t.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

namespace heunqdot {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

double to_double(const Rational& q);

/// Sum_k coeffs[k] * t^(low + k). Kept trimmed: no zero coefficient at either end,
/// and the zero polynomial has an empty coefficient list.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  LaurentPolynomial(int low, std::vector<Rational> coeffs);

  static LaurentPolynomial monomial(const Rational& c, int power);
  static LaurentPolynomial constant(const Rational& c) { return monomial(c, 0); }

  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  /// Lowest exponent present (0 for the zero polynomial).
  [[nodiscard]] int low() const { return low_; }
  /// Highest exponent present (0 for the zero polynomial).
  [[nodiscard]] int high() const { return is_zero() ? 0 : low_ + static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] Rational coefficient(int power) const;
  [[nodiscard]] const std::vector<Rational>& coefficients() const { return coeffs_; }

  [[nodiscard]] Rational operator()(const Rational& t) const;
  [[nodiscard]] double operator()(double t) const;

  LaurentPolynomial& operator+=(const LaurentPolynomial& rhs);
  LaurentPolynomial& operator-=(const LaurentPolynomial& rhs);
  LaurentPolynomial& operator*=(const Rational& s);

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& s) { return a *= s; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);

  bool operator==(const LaurentPolynomial&) const = default;

  /// Human-readable form, highest power first, e.g. "1/4 t^2 - 4 t^-1".
  [[nodiscard]] std::string to_string() const;

 private:
  void trim();

  int low_ = 0;
  std::vector<Rational> coeffs_;
};

/// Ordinary polynomial, coefficients in ascending powers of t.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const std::vector<Rational>& coefficients() const { return coeffs_; }
  [[nodiscard]] const Rational& leading() const { return coeffs_.back(); }

  [[nodiscard]] Rational operator()(const Rational& t) const;
  [[nodiscard]] double operator()(double t) const;
  /// Sign of p(t) evaluated exactly.
  [[nodiscard]] int sign_at(const Rational& t) const;

  [[nodiscard]] Polynomial derivative() const;
  /// Monic rescaling.
  [[nodiscard]] Polynomial monic() const;

  /// Euclidean division; throws std::invalid_argument for a zero divisor.
  static void divide(const Polynomial& num, const Polynomial& den, Polynomial& quotient,
                     Polynomial& remainder);
  static Polynomial gcd(Polynomial a, Polynomial b);

  friend Polynomial operator-(const Polynomial& p);
  bool operator==(const Polynomial&) const = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace heunqdot
