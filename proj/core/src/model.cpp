#include "heunqdot/model.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "heunqdot/errors.hpp"

namespace heunqdot {

namespace {

void require_positive_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("omega must be positive and finite, got " + std::to_string(omega));
  }
}

}  // namespace

SystemConfig SystemConfig::from_relative_omega(double omega, std::int32_t n_R) {
  require_positive_omega(omega);
  return SystemConfig{2.0 * omega, n_R};
}

RadialProblem RadialProblem::make(double omega, std::int32_t l, double coulomb_a) {
  require_positive_omega(omega);
  return RadialProblem{omega, std::abs(l), coulomb_a, 0.0};
}

HeunParams map_to_heun(const RadialProblem& problem, double eta) {
  require_positive_omega(problem.omega);
  const double c = problem.quadratic_c();
  const double a = problem.coulomb_a;
  const double b = problem.linear_b;
  const double ell_plus_1 = problem.effective_ell() + 1.0;

  HeunParams p;
  p.alpha_F = std::sqrt(2.0 * c);  // = omega
  p.beta_F = std::sqrt(2.0 / c) * b;
  p.eps_F = p.beta_F * p.beta_F + 2.0 * eta;

  const double root_aF = std::sqrt(p.alpha_F);
  p.alpha = 2.0 * ell_plus_1 * root_aF - 1.0;
  p.beta = 2.0 * p.beta_F / root_aF;
  p.gamma = p.eps_F / p.alpha_F + 2.0 * ell_plus_1 * (root_aF - 1.0);
  p.delta = 2.0 / root_aF * (-a + 2.0 * p.beta_F * ell_plus_1 * (1.0 - root_aF));
  return p;
}

double energy_relative(std::int32_t n, std::int32_t l, double omega) {
  require_positive_omega(omega);
  return (n + std::abs(l) + 1) * omega;
}

double energy_center_of_mass(std::int32_t n_R, const SystemConfig& config) {
  return config.omega_R() * (n_R + 1);
}

MagneticConfig MagneticConfig::from_cyclotron(double omega_0, double omega_c, std::int32_t m) {
  return MagneticConfig{omega_0, omega_c * kSpeedOfLight, m};
}

double MagneticConfig::omega_tilde() const {
  const double half_c = omega_c() / 2.0;
  return std::sqrt(omega_0 * omega_0 + half_c * half_c);
}

MagneticMapping map_magnetic(const MagneticConfig& config) {
  if (config.omega_0 < 0.0) {
    throw DomainError("omega_0 must be non-negative");
  }
  if (config.omega_0 == 0.0 && config.B == 0.0) {
    throw DegenerateProblemError("omega_0 = B = 0 leaves no confinement");
  }
  return MagneticMapping{RadialProblem::make(config.omega_tilde_r(), config.m),
                         config.energy_shift()};
}

}  // namespace heunqdot
