#include "heunqdot/termination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "heunqdot/errors.hpp"

namespace heunqdot {

std::string_view to_string(Convention c) {
  switch (c) {
    case Convention::TableConsistent:
      return "table";
    case Convention::RecurrenceLiteral:
      return "literal";
  }
  return "unknown";
}

std::optional<Convention> parse_convention(std::string_view text) {
  if (text == "table" || text == "TableConsistent") return Convention::TableConsistent;
  if (text == "literal" || text == "RecurrenceLiteral") return Convention::RecurrenceLiteral;
  return std::nullopt;
}

double GammaFactor::operator()(double t) const { return to_double(constant) + to_double(inv_t) / t; }

Rational GammaFactor::operator()(const Rational& t) const { return constant + inv_t / t; }

LaurentPolynomial GammaFactor::to_laurent() const {
  return LaurentPolynomial::monomial(constant, 0) + LaurentPolynomial::monomial(inv_t, -1);
}

namespace {

// 2 (n - p)(p + 1)(p + 1 + alpha) with 1 + alpha = (2l + 1)/t.
GammaFactor shifted_factor(std::int32_t n, std::int32_t p, std::int32_t l) {
  const Integer scale = Integer(2) * (n - p) * (p + 1);
  return GammaFactor{Rational(scale * p), Rational(scale * (2 * l + 1))};
}

}  // namespace

TerminationSystem build_gamma_factors(std::int32_t n, std::int32_t l, Convention convention,
                                      const Rational& coulomb_a) {
  if (n < 1) throw DomainError("state label n must be >= 1");
  if (l < 0) throw DomainError("l must be non-negative");

  TerminationSystem sys{n, l, convention, coulomb_a, {}};
  sys.gamma.reserve(static_cast<std::size_t>(n > 1 ? n - 1 : 0));
  for (std::int32_t p = 1; p <= n - 1; ++p) {
    if (convention == Convention::TableConsistent) {
      if (p == 1) {
        sys.gamma.push_back(GammaFactor{Rational(0), Rational(Integer(2) * n * (2 * l + 1))});
      } else {
        sys.gamma.push_back(shifted_factor(n, p, l));
      }
    } else {
      sys.gamma.push_back(shifted_factor(n, p - 1, l));
    }
  }
  return sys;
}

DeterminantSequence determinant_sequence(const TerminationSystem& system) {
  const LaurentPolynomial dp = system.delta_prime();
  DeterminantSequence seq;
  seq.d.reserve(static_cast<std::size_t>(system.n));
  seq.d.push_back(dp);
  LaurentPolynomial prev = LaurentPolynomial::constant(1);  // d_0
  for (std::int32_t k = 2; k <= system.n; ++k) {
    LaurentPolynomial next = dp * seq.d.back() - system.gamma_at(k - 1).to_laurent() * prev;
    prev = seq.d.back();
    seq.d.push_back(std::move(next));
  }
  return seq;
}

double ClearedPolynomial::as_laurent(double t) const {
  return polynomial(t) / std::pow(t, clearing_power);
}

ClearedPolynomial clear_denominators(const LaurentPolynomial& d_n) {
  if (d_n.is_zero()) throw std::invalid_argument("cannot clear the zero polynomial");
  ClearedPolynomial out;
  out.clearing_power = d_n.low() < 0 ? -d_n.low() : 0;
  std::vector<Rational> coeffs(static_cast<std::size_t>(d_n.high() + out.clearing_power + 1));
  for (int p = d_n.low(); p <= d_n.high(); ++p) {
    coeffs[static_cast<std::size_t>(p + out.clearing_power)] = d_n.coefficient(p);
  }
  out.polynomial = Polynomial(coeffs);

  // content = gcd(numerators) / lcm(denominators), sign of the leading term.
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& c : coeffs) {
    if (c == 0) continue;
    num_gcd = gcd(num_gcd, abs(numerator(c)));
    den_lcm = lcm(den_lcm, denominator(c));
  }
  out.content = Rational(num_gcd, den_lcm);
  if (out.polynomial.leading() < 0) out.content = -out.content;
  for (auto& c : coeffs) c /= out.content;
  out.primitive = Polynomial(std::move(coeffs));
  return out;
}

namespace {

using SturmChain = std::vector<Polynomial>;

SturmChain sturm_chain(const Polynomial& p) {
  SturmChain chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    Polynomial q, r;
    Polynomial::divide(chain[chain.size() - 2], chain.back(), q, r);
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

int sign_variations(const SturmChain& chain, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

// Sign pattern as x -> -inf (at_plus = false) or +inf.
int sign_variations_at_infinity(const SturmChain& chain, bool at_plus) {
  int variations = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = q.leading() > 0 ? 1 : -1;
    if (!at_plus && q.degree() % 2 == 1) s = -s;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

Rational cauchy_bound(const Polynomial& p) {
  Rational m = 0;
  const Rational lead = abs(p.leading());
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coefficients()[static_cast<std::size_t>(k)]) / lead));
  return m + 1;
}

// A split point strictly inside (a, b) where p does not vanish.
Rational split_point(const Polynomial& p, const Rational& a, const Rational& b) {
  Rational s = (a + b) / 2;
  Rational step = (b - a) / 8;
  int tries = 0;
  while (p.sign_at(s) == 0) {
    s = (tries % 2 == 0) ? Rational(s + step) : Rational(s - 2 * step);
    step /= 2;
    ++tries;
  }
  return s;
}

}  // namespace

RootSet isolate_roots(const ClearedPolynomial& cleared, double precision) {
  if (!(precision >= 1e-14 && precision <= 1e-6)) {
    throw DomainError("root precision must lie in [1e-14, 1e-6]");
  }
  RootSet out;
  Polynomial p = cleared.primitive;
  if (p.degree() <= 0) return out;

  // Strip the t = 0 roots.
  {
    std::vector<Rational> c = p.coefficients();
    auto first = std::find_if(c.begin(), c.end(), [](const Rational& v) { return v != 0; });
    out.zero_roots = static_cast<std::int32_t>(first - c.begin());
    c.erase(c.begin(), first);
    p = Polynomial(std::move(c));
  }
  if (p.degree() <= 0) return out;

  const Polynomial g = Polynomial::gcd(p, p.derivative());
  Polynomial square_free = p;
  if (g.degree() > 0) {
    Polynomial q, r;
    Polynomial::divide(p, g, q, r);
    square_free = q;
    out.warnings.push_back("repeated root detected; isolating the square-free part (gcd degree " +
                           std::to_string(g.degree()) + ")");
  }

  const SturmChain chain = sturm_chain(square_free);
  const Rational bound = cauchy_bound(square_free);
  const int v_minus_inf = sign_variations_at_infinity(chain, false);
  const int v_zero = sign_variations(chain, Rational(0));
  const int v_plus_inf = sign_variations_at_infinity(chain, true);
  const int positive = v_zero - v_plus_inf;
  out.negative_roots = v_minus_inf - v_zero;
  out.complex_roots = square_free.degree() - (v_minus_inf - v_plus_inf);

  // Subdivide (0, bound] until every interval holds exactly one root.
  std::vector<std::pair<Rational, Rational>> isolated;
  std::vector<std::pair<Rational, Rational>> stack{{Rational(0), bound}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const int count = sign_variations(chain, a) - sign_variations(chain, b);
    if (count == 0) continue;
    if (count == 1) {
      isolated.emplace_back(a, b);
      continue;
    }
    const Rational s = split_point(square_free, a, b);
    stack.emplace_back(s, b);
    stack.emplace_back(a, s);
  }
  if (static_cast<int>(isolated.size()) != positive) {
    out.warnings.push_back("Sturm count mismatch during isolation");
  }
  std::sort(isolated.begin(), isolated.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  const Rational width(precision);
  for (auto [a, b] : isolated) {
    // a == 0 is not a root (t factors stripped); b is never a root of this interval's
    // polynomial except possibly the interval's own root.
    if (square_free.sign_at(b) == 0) {
      a = b;
    }
    const int sa = square_free.sign_at(a);
    while (b - a > width) {
      const Rational m = (a + b) / 2;
      const int sm = square_free.sign_at(m);
      if (sm == 0) {
        a = b = m;
        break;
      }
      if (sm == sa) {
        a = m;
      } else {
        b = m;
      }
    }
    IsolatedRoot root;
    root.bracket_lo = a;
    root.bracket_hi = b;
    root.t_star = to_double((a + b) / 2);
    root.omega = 1.0 / (root.t_star * root.t_star);
    root.refinement_width = to_double(b - a);
    root.sign_lo = cleared.polynomial.sign_at(a);
    root.sign_hi = cleared.polynomial.sign_at(b);
    if (a != b && root.sign_lo == root.sign_hi) {
      out.warnings.push_back("root near t = " + std::to_string(root.t_star) +
                             " has no sign change in the cleared polynomial (even multiplicity)");
    }
    out.roots.push_back(std::move(root));
  }
  return out;
}

bool asymptotic_solution_listed(std::int32_t n, std::int32_t l) {
  return (l == 0 || l == 1) && (n == 2 || n == 3 || n == 5);
}

TerminationResult solve_termination(std::int32_t n, std::int32_t l, Convention convention,
                                    double precision) {
  TerminationResult r;
  r.system = build_gamma_factors(n, l, convention);
  r.sequence = determinant_sequence(r.system);
  r.cleared = clear_denominators(r.sequence.last());
  r.roots = isolate_roots(r.cleared, precision);
  r.roots.asymptotic_flag = asymptotic_solution_listed(n, l);
  return r;
}

CoefficientChain coefficient_chain(const TerminationSystem& system, double t) {
  if (!(t > 0.0)) throw DomainError("coefficient chain needs t > 0");
  const long double dp = static_cast<long double>(to_double(system.coulomb_a)) * t;
  std::vector<long double> A{1.0L, -dp};
  for (std::int32_t p = 0; p + 2 <= system.n; ++p) {
    const long double g = to_double(system.gamma_at(p + 1).constant) +
                          static_cast<long double>(to_double(system.gamma_at(p + 1).inv_t)) / t;
    A.push_back(-dp * A[static_cast<std::size_t>(p + 1)] - g * A[static_cast<std::size_t>(p)]);
  }
  A.resize(static_cast<std::size_t>(system.n + 1));

  CoefficientChain out;
  long double max_abs = 0.0L;
  for (auto a : A) max_abs = std::max(max_abs, std::fabs(a));
  out.A.reserve(A.size());
  for (std::size_t p = 0; p < A.size(); ++p) {
    out.A.push_back(static_cast<double>(A[p]));
    if (std::fabs(A[p]) >= 1e-9L * max_abs) out.effective_degree = static_cast<std::int32_t>(p);
  }
  return out;
}

std::vector<LaurentPolynomial> coefficient_chain_symbolic(const TerminationSystem& system) {
  const LaurentPolynomial dp = system.delta_prime();
  std::vector<LaurentPolynomial> A{LaurentPolynomial::constant(1), dp * Rational(-1)};
  for (std::int32_t p = 0; p + 2 <= system.n; ++p) {
    A.push_back(dp * A[static_cast<std::size_t>(p + 1)] * Rational(-1) -
                system.gamma_at(p + 1).to_laurent() * A[static_cast<std::size_t>(p)]);
  }
  A.resize(static_cast<std::size_t>(system.n + 1));
  return A;
}

}  // namespace heunqdot
