#pragma once

// Polynomial solutions y_nl, radial functions u_nl / R_nl, closed-form
// normalization and moments via half-integer Gamma functions.
//
// Every integral needed here has the form
//   int_0^inf exp(-omega r^2) r^(nu - 1) dr = omega^(-nu/2) Gamma(nu/2) / 2,
// and nu is always an integer, so Gamma is only ever evaluated at half-integers.

#include <cstdint>
#include <optional>
#include <vector>

#include "heunqdot/termination.hpp"

namespace heunqdot {

struct PolynomialSolution {
  std::int32_t n = 0;
  std::int32_t l = 0;
  double t_star = 0.0;
  double omega = 0.0;
  double eta = 0.0;
  double coulomb_a = 0.5;
  std::vector<double> y_coeffs;  // powers of r
  std::vector<double> A_chain;
  std::int32_t effective_degree = 0;

  [[nodiscard]] double y(double r) const;
};

/// Converts the series coefficients to powers of r:
///   y_p = A_p (sqrt omega)^p / (p! (1 + alpha)_p),  1 + alpha = (2l + 1) sqrt(omega).
/// The result is checked against the closed denominators
///   A_p (sqrt omega)^(p-1) / (p! (2l+1) prod_{j<p} ((2l+1) sqrt(omega) + j)).
PolynomialSolution assemble_polynomial(std::int32_t n, std::int32_t l, double t_star,
                                       const CoefficientChain& chain, double coulomb_a = 0.5);

/// (x)_p = x (x+1) ... (x+p-1).
double rising_factorial(double x, std::int32_t p);

/// Coefficients of y^2.
struct SquareExpansion {
  std::vector<double> c;
};

SquareExpansion square_expansion(const std::vector<double>& y_coeffs);

/// Gamma at z in {1/2, 1, 3/2, ...}; throws DomainError elsewhere.
double gamma_half_integer(double z);

struct RadialState {
  PolynomialSolution solution;
  SquareExpansion square;
  double normalization = 0.0;

  /// r^(l+1/2) exp(-omega r^2/2) y(r), not normalized.
  [[nodiscard]] double u(double r) const;
  [[nodiscard]] double normalized_u(double r) const { return normalization * u(r); }
  /// N r^l exp(-omega r^2/2) y(r).
  [[nodiscard]] double R(double r) const;
};

/// Throws std::invalid_argument for an identically zero polynomial.
RadialState normalize(const PolynomialSolution& solution);

/// Chain + assembly + normalization at an arbitrary t = 1/sqrt(omega).
RadialState make_state(const TerminationSystem& system, double t);

/// <r^k> with weight (N u)^2 dr.
double moment(const RadialState& state, std::int32_t k);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double r_cut = 0.0;
  double tail_bound = 0.0;
};

/// Adaptive Gauss-Kronrod integral of r^k (N u)^2 over (0, 20/sqrt(omega)].
QuadratureResult moment_by_quadrature(const RadialState& state, std::int32_t k);

/// Inclusive uniform grid of `steps` points.
struct RadialGrid {
  double r0 = 0.0;
  double r1 = 0.0;
  std::int32_t steps = 0;

  [[nodiscard]] double spacing() const { return (r1 - r0) / (steps - 1); }
  [[nodiscard]] double at(std::int32_t i) const { return r0 + i * spacing(); }
};

/// max |u'' + [2 eta - 2a/r - omega^2 r^2 - (l^2 - 1/4)/r^2] u| / max |u''| over the grid,
/// with u'' from the 5-point stencil at the grid spacing. Throws DomainError if any
/// stencil point reaches r <= 0.
double residual(const RadialState& state, const RadialGrid& grid,
                std::optional<double> eta_override = std::nullopt);

}  // namespace heunqdot
