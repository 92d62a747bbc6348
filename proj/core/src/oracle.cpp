#include "heunqdot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "heunqdot/errors.hpp"
#include "heunqdot/wavefunction.hpp"

namespace heunqdot {

namespace {

constexpr double kRescale = 1e100;

class Shooter {
 public:
  Shooter(const RadialProblem& problem, const ShootingConfig& config, bool coulomb_on)
      : omega_(problem.omega),
        l_(problem.l),
        a_(coulomb_on ? problem.coulomb_a : 0.0),
        steps_(config.steps) {
    const double r_max = config.r_max.value_or(20.0 / std::sqrt(omega_));
    if (!(config.r_min > 0.0)) throw DomainError("shooting r_min must be positive");
    if (!(r_max > config.r_min)) throw DomainError("shooting r_max must exceed r_min");
    if (config.steps < 1000) throw DomainError("shooting needs at least 1000 steps");
    x0_ = std::log(config.r_min);
    h_ = (std::log(r_max) - x0_) / steps_;
    r_.resize(static_cast<std::size_t>(steps_) + 1);
    for (std::int32_t i = 0; i <= steps_; ++i) r_[static_cast<std::size_t>(i)] = std::exp(x0_ + i * h_);
    f_.resize(r_.size());
  }

  // w'' = f w on the x grid.
  void set_energy(double eta) {
    eta_ = eta;
    double worst = 0.0;
    for (std::size_t i = 0; i < r_.size(); ++i) {
      const double r = r_[i];
      f_[i] = r * r * (2.0 * a_ / r + omega_ * omega_ * r * r - 2.0 * eta) + l_ * l_;
      worst = std::max(worst, std::fabs(f_[i]));
    }
    if (h_ * h_ * worst / 12.0 > 0.5) {
      throw StepSizeError("Numerov step too coarse: h^2 max|f| / 12 = " + std::to_string(h_ * h_ * worst / 12.0));
    }
  }

  // Sign changes of the outward solution over the whole grid.
  std::int32_t outward_nodes() {
    std::vector<double> w;
    integrate_outward(static_cast<std::int32_t>(r_.size()) - 1, w);
    return count_sign_changes(w, 0.0);
  }

  // Last index where the classically allowed region (f < 0) ends.
  std::int32_t turning_index() const {
    for (std::int32_t i = steps_ - 2; i > 1; --i) {
      if (f_[static_cast<std::size_t>(i)] < 0.0) return std::min(i + 1, steps_ - 3);
    }
    // No allowed region: match near the oscillator length.
    const double target = std::log(1.0 / std::sqrt(omega_));
    return std::clamp(static_cast<std::int32_t>((target - x0_) / h_), 2, steps_ - 3);
  }

  // w_out'(m) w_in(m) - w_in'(m) w_out(m); only its sign is meaningful.
  double mismatch(std::int32_t m) {
    std::vector<double> out, in;
    integrate_outward(m + 1, out);
    integrate_inward(m - 1, in);
    const auto mi = static_cast<std::size_t>(m);
    const double dout = (out[mi + 1] - out[mi - 1]) / (2.0 * h_);
    const double din = (in[mi + 1] - in[mi - 1]) / (2.0 * h_);
    const double scale = std::fabs(out[mi]) + std::fabs(dout) * h_ + 1e-300;
    return (dout * in[mi] - din * out[mi]) / (scale * (std::fabs(in[mi]) + 1e-300));
  }

  // Matched u = sqrt(r) w, normalized in int u^2 dr.
  void eigenfunction(std::int32_t m, std::vector<double>& u) {
    std::vector<double> out, in;
    integrate_outward(m, out);
    integrate_inward(m, in);
    const auto mi = static_cast<std::size_t>(m);
    const double s = in[mi] != 0.0 ? out[mi] / in[mi] : 1.0;
    u.assign(r_.size(), 0.0);
    for (std::size_t i = 0; i < r_.size(); ++i) {
      const double w = i <= mi ? out[i] : in[i] * s;
      u[i] = std::sqrt(r_[i]) * w;
    }
    // dr = r dx
    double norm = 0.0;
    for (std::size_t i = 0; i < r_.size(); ++i) {
      const double weight = (i == 0 || i + 1 == r_.size()) ? 0.5 : 1.0;
      norm += weight * u[i] * u[i] * r_[i] * h_;
    }
    const double inv = 1.0 / std::sqrt(norm);
    for (auto& v : u) v *= inv;
  }

  const std::vector<double>& radii() const { return r_; }

  static std::int32_t count_sign_changes(const std::vector<double>& v, double threshold) {
    std::int32_t changes = 0;
    int last = 0;
    for (double x : v) {
      if (std::fabs(x) <= threshold || x == 0.0) continue;
      const int s = x > 0.0 ? 1 : -1;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

 private:
  void numerov_step(std::vector<double>& w, std::size_t prev2, std::size_t prev1, std::size_t next) const {
    const double c = h_ * h_ / 12.0;
    w[next] = (2.0 * w[prev1] * (1.0 + 5.0 * c * f_[prev1]) - w[prev2] * (1.0 - c * f_[prev2])) /
              (1.0 - c * f_[next]);
  }

  void integrate_outward(std::int32_t last, std::vector<double>& w) const {
    w.assign(r_.size(), 0.0);
    const double c1 = 2.0 * a_ / (2 * l_ + 1);
    for (std::size_t i = 0; i < 2; ++i) w[i] = std::pow(r_[i], l_) * (1.0 + c1 * r_[i]);
    for (std::size_t i = 2; i <= static_cast<std::size_t>(last); ++i) {
      numerov_step(w, i - 2, i - 1, i);
      if (std::fabs(w[i]) > kRescale) {
        for (std::size_t j = 0; j <= i; ++j) w[j] /= kRescale;
      }
    }
  }

  void integrate_inward(std::int32_t first, std::vector<double>& w) const {
    w.assign(r_.size(), 0.0);
    const auto n = static_cast<std::size_t>(steps_);
    auto log_tail = [&](double r) { return (eta_ / omega_ - 1.0) * std::log(r) - omega_ * r * r / 2.0; };
    w[n - 1] = 1.0;
    w[n] = std::exp(log_tail(r_[n]) - log_tail(r_[n - 1]));
    for (std::size_t i = n - 1; i-- > static_cast<std::size_t>(first);) {
      numerov_step(w, i + 2, i + 1, i);
      if (std::fabs(w[i]) > kRescale) {
        for (std::size_t j = i; j <= n; ++j) w[j] /= kRescale;
      }
    }
  }

  double omega_;
  std::int32_t l_;
  double a_;
  std::int32_t steps_;
  double x0_ = 0.0;
  double h_ = 0.0;
  double eta_ = 0.0;
  std::vector<double> r_;
  std::vector<double> f_;
};

// Smallest eta with at least `count` outward nodes, bracketed within `rel` relative width.
std::pair<double, double> node_bracket(Shooter& s, std::int32_t count, double lo, double hi, double rel) {
  while (hi - lo > rel * hi) {
    const double mid = 0.5 * (lo + hi);
    s.set_energy(mid);
    if (s.outward_nodes() >= count) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

Eigenstate refine_state(Shooter& s, std::int32_t k, double lo, double hi, double rel_tol) {
  s.set_energy(0.5 * (lo + hi));
  const std::int32_t m = s.turning_index();
  auto sign_at = [&](double eta) {
    s.set_energy(eta);
    return s.mismatch(m) > 0.0 ? 1 : -1;
  };
  int s_lo = sign_at(lo);
  int s_hi = sign_at(hi);
  for (int widen = 0; s_lo == s_hi && widen < 12; ++widen) {
    const double w = hi - lo;
    lo = std::max(0.0, lo - w);
    hi += w;
    s_lo = sign_at(lo);
    s_hi = sign_at(hi);
  }
  if (s_lo == s_hi) {
    throw NoEigenvalueError("matching condition has no sign change near state k = " + std::to_string(k));
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    const int sm = sign_at(mid);
    if (sm == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (mid == lo && mid == hi) break;
  }

  Eigenstate st;
  st.eta = 0.5 * (lo + hi);
  st.convergence_width = hi - lo;
  s.set_energy(st.eta);
  std::vector<double> u;
  s.eigenfunction(s.turning_index(), u);
  double umax = 0.0;
  for (double v : u) umax = std::max(umax, std::fabs(v));
  st.nodes = Shooter::count_sign_changes(u, 1e-8 * umax);
  const auto& r = s.radii();
  for (std::size_t i = 0; i < r.size(); i += 10) {
    st.r.push_back(r[i]);
    st.u.push_back(u[i]);
  }
  return st;
}

}  // namespace

OracleResult solve_eigen(const RadialProblem& problem, const ShootingConfig& config, bool coulomb_on) {
  if (!(problem.omega > 0.0)) throw DomainError("omega must be positive");
  Shooter shooter(problem, config, coulomb_on);
  const double omega = problem.omega;
  const double a = coulomb_on ? problem.coulomb_a : 0.0;

  std::int32_t k_first = 0;
  std::int32_t k_last = config.node_target;
  if (config.eta_bracket) {
    const auto [lo, hi] = *config.eta_bracket;
    if (!(hi > lo)) throw DomainError("eta bracket must be increasing");
    shooter.set_energy(lo);
    k_first = shooter.outward_nodes();
    shooter.set_energy(hi);
    const std::int32_t k_end = shooter.outward_nodes();
    if (k_end <= k_first) throw NoEigenvalueError("no eigenvalue inside the eta bracket");
    k_last = k_end - 1;
  }

  OracleResult result;
  double lo = 0.0;
  for (std::int32_t k = k_first; k <= k_last; ++k) {
    double hi = (2 * k + problem.l + 1) * omega + 4.0 * a * std::sqrt(omega) + omega;
    shooter.set_energy(hi);
    for (int grow = 0; shooter.outward_nodes() < k + 1; ++grow) {
      if (grow > 60) throw NoEigenvalueError("could not bracket state k = " + std::to_string(k));
      hi *= 2.0;
      shooter.set_energy(hi);
    }
    const auto [blo, bhi] = node_bracket(shooter, k + 1, lo, hi, 1e-6);
    Eigenstate st = refine_state(shooter, k, blo, bhi, config.relative_tolerance);
    lo = st.eta;
    result.convergence_width = std::max(result.convergence_width, st.convergence_width);
    result.states.push_back(std::move(st));
  }
  return result;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Confirmed:
      return "CONFIRMED";
    case Classification::Near:
      return "NEAR";
    case Classification::Discrepant:
      return "DISCREPANT";
  }
  return "DISCREPANT";
}

Classification classify(double eta_reference, double abs_delta) {
  const double scale = std::fabs(eta_reference);
  if (abs_delta < 1e-6 * scale) return Classification::Confirmed;
  if (abs_delta < 1e-2 * scale) return Classification::Near;
  return Classification::Discrepant;
}

ValidationRecord validate_state(std::int32_t n, std::int32_t l, double omega, Convention convention,
                                const Rational& coulomb_a) {
  ValidationRecord rec;
  rec.n = n;
  rec.l = std::abs(l);
  rec.omega = omega;
  rec.t_star = 1.0 / std::sqrt(omega);
  rec.eta_analytic = energy_relative(n, rec.l, omega);

  const RadialProblem problem = RadialProblem::make(omega, rec.l, to_double(coulomb_a));
  const bool coulomb_on = coulomb_a != 0;
  ShootingConfig cfg;
  double best = -1.0;
  for (std::int32_t k = 0; k <= 16; ++k) {
    cfg.node_target = k;
    cfg.eta_bracket.reset();
    // Each call re-solves from the ground state; the sweep is short.
    const OracleResult res = solve_eigen(problem, cfg, coulomb_on);
    const Eigenstate& st = res.states.back();
    const double delta = std::fabs(st.eta - rec.eta_analytic);
    if (best < 0.0 || delta < best) {
      best = delta;
      rec.eta_oracle = st.eta;
      rec.oracle_nodes = st.nodes;
    }
    if (st.eta > rec.eta_analytic) break;
  }
  rec.abs_delta = best;
  rec.classification = classify(rec.eta_analytic, rec.abs_delta);

  const TerminationSystem system = build_gamma_factors(n, rec.l, convention, coulomb_a);
  const RadialState state = make_state(system, rec.t_star);
  rec.effective_degree = state.solution.effective_degree;
  rec.residual = residual(state, RadialGrid{0.05 * rec.t_star, 6.0 * rec.t_star, 2000});
  return rec;
}

ValidationRecord validate_root(std::int32_t n, std::int32_t l, double t_star, Convention convention) {
  if (!(t_star > 0.0)) throw DomainError("t_star must be positive");
  return validate_state(n, l, 1.0 / (t_star * t_star), convention, Rational(1, 2));
}

Rational dense_determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      const Rational factor = m[row][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[row][j] -= factor * m[col][j];
    }
  }
  return det;
}

DenseCheck dense_determinant_check(std::int32_t n, std::int32_t l, const Rational& t, Convention convention) {
  if (n > 8) throw DomainError("dense determinant check is limited to n <= 8");
  if (t <= 0) throw DomainError("t must be positive");
  const TerminationSystem system = build_gamma_factors(n, l, convention);
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<Rational>> m(un, std::vector<Rational>(un, Rational(0)));
  const Rational dp = system.coulomb_a * t;
  for (std::size_t i = 0; i < un; ++i) {
    m[i][i] = dp;
    if (i + 1 < un) m[i][i + 1] = 1;
    if (i > 0) m[i][i - 1] = system.gamma_at(static_cast<std::int32_t>(i))(t);
  }
  DenseCheck out;
  out.dense = dense_determinant(std::move(m));
  out.recurrence = determinant_sequence(system).last()(t);
  return out;
}

}  // namespace heunqdot
