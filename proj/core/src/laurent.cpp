#include "heunqdot/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace heunqdot {

double to_double(const Rational& q) { return q.convert_to<double>(); }

LaurentPolynomial::LaurentPolynomial(int low, std::vector<Rational> coeffs)
    : low_(low), coeffs_(std::move(coeffs)) {
  trim();
}

LaurentPolynomial LaurentPolynomial::monomial(const Rational& c, int power) {
  return LaurentPolynomial(power, {c});
}

void LaurentPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c != 0; });
  low_ += static_cast<int>(first - coeffs_.begin());
  coeffs_.erase(coeffs_.begin(), first);
  if (coeffs_.empty()) low_ = 0;
}

Rational LaurentPolynomial::coefficient(int power) const {
  const int k = power - low_;
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational LaurentPolynomial::operator()(const Rational& t) const {
  if (is_zero()) return Rational(0);
  if (t == 0 && low_ < 0) throw std::domain_error("Laurent polynomial has a pole at t = 0");
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  Rational scale = 1;
  const Rational base = low_ >= 0 ? t : Rational(1) / t;
  for (int i = 0; i < std::abs(low_); ++i) scale *= base;
  return acc * scale;
}

double LaurentPolynomial::operator()(double t) const {
  if (is_zero()) return 0.0;
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + to_double(*it);
  return acc * std::pow(t, low_);
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  const int lo = std::min(low_, rhs.low_);
  const int hi = std::max(high(), rhs.high());
  std::vector<Rational> out(static_cast<std::size_t>(hi - lo + 1));
  for (int p = lo; p <= hi; ++p) out[static_cast<std::size_t>(p - lo)] = coefficient(p) + rhs.coefficient(p);
  *this = LaurentPolynomial(lo, std::move(out));
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& rhs) {
  return *this += rhs * Rational(-1);
}

LaurentPolynomial& LaurentPolynomial::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return LaurentPolynomial(a.low_ + b.low_, std::move(out));
}

std::string LaurentPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int p = high(); p >= low_; --p) {
    Rational c = coefficient(p);
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    os << abs(c);
    if (p == 1) {
      os << " t";
    } else if (p != 0) {
      os << " t^" << p;
    }
  }
  return os.str();
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + to_double(*it);
  return acc;
}

int Polynomial::sign_at(const Rational& t) const {
  const Rational v = (*this)(t);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * static_cast<int>(k);
  return Polynomial(std::move(out));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  std::vector<Rational> out = coeffs_;
  const Rational lead = coeffs_.back();
  for (auto& c : out) c /= lead;
  return Polynomial(std::move(out));
}

void Polynomial::divide(const Polynomial& num, const Polynomial& den, Polynomial& quotient,
                        Polynomial& remainder) {
  if (den.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rational> rem = num.coeffs_;
  const int dd = den.degree();
  std::vector<Rational> quot(num.degree() >= dd ? static_cast<std::size_t>(num.degree() - dd + 1) : 0);
  for (int k = num.degree(); k >= dd; --k) {
    const Rational q = rem[static_cast<std::size_t>(k)] / den.leading();
    quot[static_cast<std::size_t>(k - dd)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= q * den.coeffs_[static_cast<std::size_t>(j)];
  }
  quotient = Polynomial(std::move(quot));
  if (dd > 0 && rem.size() > static_cast<std::size_t>(dd)) rem.resize(static_cast<std::size_t>(dd));
  if (dd == 0) rem.clear();
  remainder = Polynomial(std::move(rem));
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial q, r;
    divide(a, b, q, r);
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

Polynomial operator-(const Polynomial& p) {
  std::vector<Rational> out = p.coeffs_;
  for (auto& c : out) c = -c;
  return Polynomial(std::move(out));
}

}  // namespace heunqdot
