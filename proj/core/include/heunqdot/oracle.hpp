#pragma once

// Independent numerical eigensolver for the relative-motion radial equation
//
//   u'' = [2a/r + omega^2 r^2 + (l^2 - 1/4)/r^2 - 2 eta] u.
//
// With r = e^x and u = r^(1/2) w the equation becomes w'' = [r^2 (2a/r + omega^2 r^2 - 2 eta) + l^2] w,
// which has no singular coefficient and is integrated by Numerov on a uniform x grid:
// outward from the regular series w = r^l (1 + 2a r/(2l+1)), inward from the Gaussian
// tail u ~ r^(eta/omega - 1/2) exp(-omega r^2/2). States are bracketed by node count
// and refined by bisection on the Wronskian mismatch at the outer turning point.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heunqdot/laurent.hpp"
#include "heunqdot/model.hpp"
#include "heunqdot/termination.hpp"

namespace heunqdot {

struct ShootingConfig {
  double r_min = 1e-6;
  std::optional<double> r_max;  // default 20/sqrt(omega)
  std::int32_t steps = 20000;
  // Solve every state with eigenvalue inside this interval instead of k = 0..node_target.
  std::optional<std::pair<double, double>> eta_bracket;
  std::int32_t node_target = 0;
  double relative_tolerance = 1e-13;
};

struct Eigenstate {
  double eta = 0.0;
  std::int32_t nodes = 0;  // interior nodes of the matched eigenfunction
  double convergence_width = 0.0;
  std::vector<double> r;  // downsampled samples, int u^2 dr = 1
  std::vector<double> u;
};

struct OracleResult {
  std::vector<Eigenstate> states;  // ascending in eta and in node count
  double convergence_width = 0.0;  // widest final bracket
};

/// Throws DomainError for an invalid config, NoEigenvalueError when the bracket holds no
/// state, StepSizeError when the grid is too coarse for Numerov.
OracleResult solve_eigen(const RadialProblem& problem, const ShootingConfig& config = {},
                         bool coulomb_on = true);

enum class Classification { Confirmed, Near, Discrepant };

std::string_view to_string(Classification c);

/// CONFIRMED below 1e-6 relative, NEAR below 1e-2, DISCREPANT otherwise.
Classification classify(double eta_reference, double abs_delta);

struct ValidationRecord {
  std::int32_t n = 0;
  std::int32_t l = 0;
  double t_star = 0.0;
  double omega = 0.0;
  double eta_analytic = 0.0;
  double eta_oracle = 0.0;
  std::int32_t oracle_nodes = 0;
  double abs_delta = 0.0;
  double residual = 0.0;
  std::int32_t effective_degree = 0;
  Classification classification = Classification::Discrepant;
};

/// Compares eta = (n + l + 1) omega with the nearest oracle eigenvalue at the same omega,
/// and records the ODE residual of the analytic state. coulomb_a = 0 checks the machinery
/// against the bare oscillator.
ValidationRecord validate_state(std::int32_t n, std::int32_t l, double omega, Convention convention,
                                const Rational& coulomb_a);

ValidationRecord validate_root(std::int32_t n, std::int32_t l, double t_star,
                               Convention convention = Convention::TableConsistent);

struct DenseCheck {
  Rational recurrence;
  Rational dense;
  [[nodiscard]] bool equal() const { return recurrence == dense; }
};

/// Eliminates the assembled n x n tridiagonal matrix at rational t and compares with d_n(t).
/// Throws DomainError for n > 8 or t <= 0.
DenseCheck dense_determinant_check(std::int32_t n, std::int32_t l, const Rational& t,
                                   Convention convention = Convention::TableConsistent);

/// Determinant of a square rational matrix by fraction-exact Gaussian elimination.
Rational dense_determinant(std::vector<std::vector<Rational>> m);

}  // namespace heunqdot
