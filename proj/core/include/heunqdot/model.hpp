#pragma once

// Two electrons in a 2D isotropic harmonic trap, Hartree atomic units.
//
// The pair separates into a center-of-mass oscillator (frequency 2*Omega) and
// a relative-motion radial problem
//
//   u'' + [2 eta - 2a/r - omega^2 r^2 - (l^2 - 1/4)/r^2] u = 0,   omega = Omega/2,
//
// with a = 1/2 for the Coulomb repulsion. Substituting
// u = r^(l+1/2) exp(-omega r^2/2) y(x), x = sqrt(omega) r, turns it into a
// biconfluent Heun equation whose parameters are computed by map_to_heun().

#include <cstdint>

namespace heunqdot {

inline constexpr double kSpeedOfLight = 137.035999;

struct SystemConfig {
  double trap_frequency_Omega = 1.0;
  std::int32_t n_R = 0;

  /// Relative-motion frequency, Omega/2.
  [[nodiscard]] double omega() const { return trap_frequency_Omega / 2.0; }
  /// Center-of-mass frequency, 2*Omega.
  [[nodiscard]] double omega_R() const { return 2.0 * trap_frequency_Omega; }

  static SystemConfig from_relative_omega(double omega, std::int32_t n_R = 0);
};

struct RadialProblem {
  double omega = 1.0;
  std::int32_t l = 0;  // |angular momentum|; the equation only sees l^2
  double coulomb_a = 0.5;
  double linear_b = 0.0;

  [[nodiscard]] double quadratic_c() const { return omega * omega / 2.0; }
  /// Regular branch: ell + 1 = l + 1/2, so u ~ r^(l + 1/2) at the origin.
  [[nodiscard]] double small_r_exponent() const { return l + 0.5; }
  /// ell = l - 1/2; the ell = -l - 1/2 branch is not representable.
  [[nodiscard]] double effective_ell() const { return l - 0.5; }

  /// Throws DomainError for omega <= 0. Negative l is folded to |l|.
  static RadialProblem make(double omega, std::int32_t l, double coulomb_a = 0.5);

  bool operator==(const RadialProblem&) const = default;
};

struct HeunParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  // Intermediates of the confining-potential form.
  double alpha_F = 0.0;
  double beta_F = 0.0;
  double eps_F = 0.0;

  /// delta' = -delta/2, the diagonal entry of the termination matrix.
  [[nodiscard]] double delta_prime() const { return -delta / 2.0; }
};

HeunParams map_to_heun(const RadialProblem& problem, double eta);

/// eta_{nl} = (n + l + 1) omega, the energy at which the series truncates.
double energy_relative(std::int32_t n, std::int32_t l, double omega);

/// eps = omega_R (n_R + 1). The stated eigenvalue is used as-is; whether the
/// CM energy should read eps or 2*eps is left open.
double energy_center_of_mass(std::int32_t n_R, const SystemConfig& config);

inline double total_energy(double eps_cm, double eta) { return eps_cm + eta; }

struct MagneticConfig {
  double omega_0 = 0.0;
  double B = 0.0;
  std::int32_t m = 0;

  static MagneticConfig from_cyclotron(double omega_0, double omega_c, std::int32_t m);

  [[nodiscard]] double omega_c() const { return B / kSpeedOfLight; }
  [[nodiscard]] double omega_tilde() const;
  [[nodiscard]] double omega_tilde_r() const { return omega_tilde() / 2.0; }
  /// m*omega_c/4, the difference eps_r - eps~_r.
  [[nodiscard]] double energy_shift() const { return m * omega_c() / 4.0; }
};

struct MagneticMapping {
  RadialProblem problem;
  double energy_shift = 0.0;
};

MagneticMapping map_magnetic(const MagneticConfig& config);

}  // namespace heunqdot
