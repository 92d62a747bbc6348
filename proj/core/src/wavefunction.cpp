#include "heunqdot/wavefunction.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "heunqdot/errors.hpp"

namespace heunqdot {

double PolynomialSolution::y(double r) const {
  double acc = 0.0;
  for (auto it = y_coeffs.rbegin(); it != y_coeffs.rend(); ++it) acc = acc * r + *it;
  return acc;
}

double rising_factorial(double x, std::int32_t p) {
  double acc = 1.0;
  for (std::int32_t j = 0; j < p; ++j) acc *= x + j;
  return acc;
}

PolynomialSolution assemble_polynomial(std::int32_t n, std::int32_t l, double t_star,
                                       const CoefficientChain& chain, double coulomb_a) {
  if (!(t_star > 0.0)) throw DomainError("t_star must be positive");
  PolynomialSolution s;
  s.n = n;
  s.l = std::abs(l);
  s.t_star = t_star;
  s.omega = 1.0 / (t_star * t_star);
  s.eta = (n + s.l + 1) * s.omega;
  s.coulomb_a = coulomb_a;
  s.A_chain = chain.A;
  s.effective_degree = chain.effective_degree;

  const double root_omega = 1.0 / t_star;
  const double one_plus_alpha = (2 * s.l + 1) * root_omega;
  double factorial = 1.0;
  s.y_coeffs.reserve(chain.A.size());
  for (std::size_t p = 0; p < chain.A.size(); ++p) {
    const auto pi = static_cast<std::int32_t>(p);
    if (p > 0) factorial *= static_cast<double>(p);
    const double poch = rising_factorial(one_plus_alpha, pi);
    if (poch == 0.0) throw BranchError("(1 + alpha)_p vanished");
    const double coeff = chain.A[p] * std::pow(root_omega, pi) / (factorial * poch);

    if (p > 0) {
      double explicit_den = factorial * (2 * s.l + 1);
      for (std::int32_t j = 1; j < pi; ++j) explicit_den *= (2 * s.l + 1) * root_omega + j;
      const double explicit_coeff = chain.A[p] * std::pow(root_omega, pi - 1) / explicit_den;
      const double scale = std::max(std::fabs(coeff), std::fabs(explicit_coeff));
      if (std::fabs(coeff - explicit_coeff) > 1e-12 * scale) {
        throw std::logic_error("series and explicit r-form disagree at p = " + std::to_string(p));
      }
    }
    s.y_coeffs.push_back(coeff);
  }
  return s;
}

SquareExpansion square_expansion(const std::vector<double>& y) {
  SquareExpansion sq;
  if (y.empty()) return sq;
  sq.c.assign(2 * y.size() - 1, 0.0);
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) sq.c[i + j] += y[i] * y[j];
  return sq;
}

double gamma_half_integer(double z) {
  const double twice = 2.0 * z;
  if (!(z > 0.0) || twice != std::floor(twice) || twice > 340.0) {
    throw DomainError("gamma_half_integer: argument must be a positive half-integer, got " +
                      std::to_string(z));
  }
  const auto m = static_cast<int>(twice);
  double g = (m % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);  // Gamma(1) or Gamma(1/2)
  for (double x = (m % 2 == 0) ? 1.0 : 0.5; x < z; x += 1.0) g *= x;
  return g;
}

double RadialState::u(double r) const {
  const auto& s = solution;
  return std::pow(r, s.l + 0.5) * std::exp(-s.omega * r * r / 2.0) * s.y(r);
}

double RadialState::R(double r) const {
  const auto& s = solution;
  return normalization * std::pow(r, s.l) * std::exp(-s.omega * r * r / 2.0) * s.y(r);
}

namespace {

// int_0^inf exp(-omega r^2) r^(2l+1+j) dr with omega = 1/t^2.
double gaussian_moment(std::int32_t l, std::int32_t j, double t) {
  const double z = l + 1 + j / 2.0;
  return 0.5 * std::pow(t, 2.0 * z) * gamma_half_integer(z);
}

double closed_form_integral(const PolynomialSolution& s, const SquareExpansion& sq, std::int32_t k) {
  double acc = 0.0;
  for (std::size_t j = 0; j < sq.c.size(); ++j) {
    if (sq.c[j] == 0.0) continue;
    acc += sq.c[j] * gaussian_moment(s.l, static_cast<std::int32_t>(j) + k, s.t_star);
  }
  return acc;
}

}  // namespace

RadialState normalize(const PolynomialSolution& solution) {
  if (std::all_of(solution.y_coeffs.begin(), solution.y_coeffs.end(), [](double c) { return c == 0.0; })) {
    throw std::invalid_argument("cannot normalize the zero polynomial");
  }
  RadialState st{solution, square_expansion(solution.y_coeffs), 0.0};
  const double integral = closed_form_integral(solution, st.square, 0);
  st.normalization = 1.0 / std::sqrt(integral);
  return st;
}

RadialState make_state(const TerminationSystem& system, double t) {
  const CoefficientChain chain = coefficient_chain(system, t);
  return normalize(assemble_polynomial(system.n, system.l, t, chain, to_double(system.coulomb_a)));
}

double moment(const RadialState& state, std::int32_t k) {
  if (k < 0) throw DomainError("moment order must be non-negative");
  return state.normalization * state.normalization * closed_form_integral(state.solution, state.square, k);
}

QuadratureResult moment_by_quadrature(const RadialState& state, std::int32_t k) {
  using boost::math::quadrature::gauss_kronrod;
  const auto& s = state.solution;
  QuadratureResult q;
  q.r_cut = 20.0 * s.t_star;
  auto density = [&](double r) {
    const double u = state.normalized_u(r);
    return std::pow(r, k) * u * u;
  };
  // Split at a few characteristic lengths so the adaptive rule sees the structure.
  const double scale = s.t_star;
  const double knots[] = {0.0, 0.5 * scale, scale, 2.0 * scale, 4.0 * scale, 8.0 * scale, q.r_cut};
  for (std::size_t i = 0; i + 1 < std::size(knots); ++i) {
    double err = 0.0;
    q.value += gauss_kronrod<double, 61>::integrate(density, knots[i], knots[i + 1], 15, 1e-14, &err);
    q.error_estimate += err;
  }
  // Beyond r_cut the Gaussian dominates: the integrand is bounded by f(r_cut) exp(-omega (r^2 - r_cut^2) / 2)
  // once omega r exceeds the polynomial growth rate, giving f(r_cut) / (omega r_cut).
  q.tail_bound = density(q.r_cut) / (s.omega * q.r_cut);
  return q;
}

double residual(const RadialState& state, const RadialGrid& grid, std::optional<double> eta_override) {
  if (grid.steps < 2 || !(grid.r1 > grid.r0)) throw DomainError("residual grid needs r1 > r0 and >= 2 points");
  const double h = grid.spacing();
  if (!(grid.r0 - 2.0 * h > 0.0)) throw DomainError("residual grid touches r = 0");

  const auto& s = state.solution;
  const double eta = eta_override.value_or(s.eta);
  const double centrifugal = s.l * s.l - 0.25;
  double max_res = 0.0;
  double max_upp = 0.0;
  for (std::int32_t i = 0; i < grid.steps; ++i) {
    const double r = grid.at(i);
    const double u0 = state.u(r);
    const double upp = (-state.u(r + 2 * h) + 16.0 * state.u(r + h) - 30.0 * u0 + 16.0 * state.u(r - h) -
                        state.u(r - 2 * h)) /
                       (12.0 * h * h);
    const double q = 2.0 * eta - 2.0 * s.coulomb_a / r - s.omega * s.omega * r * r - centrifugal / (r * r);
    max_res = std::max(max_res, std::fabs(upp + q * u0));
    max_upp = std::max(max_upp, std::fabs(upp));
  }
  return max_upp > 0.0 ? max_res / max_upp : max_res;
}

}  // namespace heunqdot
