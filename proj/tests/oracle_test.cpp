#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "heunqdot/errors.hpp"
#include "heunqdot/oracle.hpp"
#include "test_oracles.hpp"

using namespace heunqdot;
using heunqdot::testing::laplace_determinant;
using heunqdot::testing::termination_matrix;

namespace {
ShootingConfig up_to(int k) {
  ShootingConfig c;
  c.node_target = k;
  return c;
}
}  // namespace

TEST(Oracle, CoulombOffGroundStates) {
  const auto a = solve_eigen(RadialProblem::make(1.0, 0), {}, false);
  ASSERT_EQ(a.states.size(), 1u);
  EXPECT_NEAR(a.states[0].eta, 1.0, 1e-6);
  const auto b = solve_eigen(RadialProblem::make(0.25, 1), {}, false);
  EXPECT_NEAR(b.states[0].eta, 0.5, 1e-6 * 0.5);
  EXPECT_LT(a.convergence_width, 1e-9);
}

TEST(Oracle, CoulombOffSpectrumSweep) {
  for (double omega : {0.05, 0.25, 1.0})
    for (int l = 0; l <= 2; ++l) {
      const auto res = solve_eigen(RadialProblem::make(omega, l), up_to(3), false);
      ASSERT_EQ(res.states.size(), 4u);
      for (int k = 0; k <= 3; ++k) {
        const double exact = (2 * k + l + 1) * omega;
        EXPECT_NEAR(res.states[k].eta, exact, 1e-6 * exact) << omega << " " << l << " " << k;
      }
    }
}

// With the correct Heun mapping, omega = 1/(2(2l+1)) admits u = r^(l+1/2)(1 + r/(2l+1)) exp(-omega r^2/2)
// at eta = (l+2) omega, a nodeless Coulomb-on eigenstate.
TEST(Oracle, ExactCoulombStates) {
  for (int l = 0; l <= 2; ++l) {
    const double omega = 1.0 / (2.0 * (2 * l + 1));
    const auto res = solve_eigen(RadialProblem::make(omega, l), {}, true);
    EXPECT_NEAR(res.states[0].eta, (l + 2) * omega, 1e-8 * (l + 2) * omega) << l;
    EXPECT_EQ(res.states[0].nodes, 0);
    const auto& st = res.states[0];
    // Compare the shape with the closed form, both normalized.
    auto exact = [&](double r) {
      return std::pow(r, l + 0.5) * (1.0 + r / (2 * l + 1)) * std::exp(-omega * r * r / 2.0);
    };
    const double norm = std::sqrt(heunqdot::testing::simpson([&](double r) { return exact(r) * exact(r); }, 0.0,
                                                             20.0 / std::sqrt(omega), 200000));
    for (std::size_t i = 0; i < st.r.size(); i += 97) EXPECT_NEAR(st.u[i], exact(st.r[i]) / norm, 1e-5);
  }
}

TEST(OracleProperties, NodeTheoremAndOrdering) {
  for (double omega : {0.05, 0.25, 1.0})
    for (int l = 0; l <= 2; ++l)
      for (bool coulomb : {false, true}) {
        const auto res = solve_eigen(RadialProblem::make(omega, l), up_to(4), coulomb);
        ASSERT_EQ(res.states.size(), 5u);
        for (int k = 0; k <= 4; ++k) {
          EXPECT_EQ(res.states[k].nodes, k) << omega << " " << l << " " << coulomb;
          if (k > 0) EXPECT_GT(res.states[k].eta, res.states[k - 1].eta);
        }
      }
}

TEST(OracleProperties, CoulombRaisesEveryLevel) {
  for (double omega : {0.05, 0.25, 1.0})
    for (int l = 0; l <= 2; ++l) {
      const auto off = solve_eigen(RadialProblem::make(omega, l), up_to(3), false);
      const auto on = solve_eigen(RadialProblem::make(omega, l), up_to(3), true);
      for (int k = 0; k <= 3; ++k) EXPECT_GT(on.states[k].eta, off.states[k].eta);
    }
}

TEST(OracleProperties, StepHalvingStable) {
  for (double omega : {0.0183491, 0.157490, 1.0})
    for (int l = 0; l <= 1; ++l) {
      ShootingConfig coarse = up_to(2);
      ShootingConfig fine = up_to(2);
      fine.steps = 2 * coarse.steps;
      const auto a = solve_eigen(RadialProblem::make(omega, l), coarse, true);
      const auto b = solve_eigen(RadialProblem::make(omega, l), fine, true);
      for (int k = 0; k <= 2; ++k)
        EXPECT_NEAR(a.states[k].eta, b.states[k].eta, 1e-8 * b.states[k].eta) << omega << " " << l << " " << k;
    }
}

TEST(OracleProperties, LSignSymmetry) {
  const auto p = solve_eigen(RadialProblem::make(0.2, 2), up_to(1), true);
  const auto m = solve_eigen(RadialProblem::make(0.2, -2), up_to(1), true);
  EXPECT_EQ(p.states[0].eta, m.states[0].eta);
  EXPECT_EQ(p.states[1].eta, m.states[1].eta);
}

TEST(Oracle, EigenfunctionNormalized) {
  const auto res = solve_eigen(RadialProblem::make(0.3, 1), up_to(2), true);
  for (const auto& st : res.states) {
    // Downsampled every 10th point of a log grid: trapezoid in x = ln r.
    double norm = 0;
    for (std::size_t i = 1; i < st.r.size(); ++i) {
      const double dx = std::log(st.r[i] / st.r[i - 1]);
      norm += 0.5 * dx * (st.u[i] * st.u[i] * st.r[i] + st.u[i - 1] * st.u[i - 1] * st.r[i - 1]);
    }
    EXPECT_NEAR(norm, 1.0, 1e-4);
  }
}

TEST(Oracle, BracketSelectsStates) {
  ShootingConfig c;
  c.eta_bracket = std::make_pair(2.5, 5.5);
  const auto res = solve_eigen(RadialProblem::make(1.0, 0), c, false);
  ASSERT_EQ(res.states.size(), 2u);
  EXPECT_NEAR(res.states[0].eta, 3.0, 1e-6);
  EXPECT_NEAR(res.states[1].eta, 5.0, 1e-6);

  c.eta_bracket = std::make_pair(1.2, 2.8);
  EXPECT_THROW(solve_eigen(RadialProblem::make(1.0, 0), c, false), NoEigenvalueError);
  c.eta_bracket = std::make_pair(2.0, 1.0);
  EXPECT_THROW(solve_eigen(RadialProblem::make(1.0, 0), c, false), DomainError);
}

TEST(Oracle, InvalidConfigs) {
  const auto p = RadialProblem::make(1.0, 0);
  ShootingConfig c;
  c.r_min = 0.0;
  EXPECT_THROW(solve_eigen(p, c), DomainError);
  c = {};
  c.r_max = 1e-7;
  EXPECT_THROW(solve_eigen(p, c), DomainError);
  c = {};
  c.steps = 999;
  EXPECT_THROW(solve_eigen(p, c), DomainError);
  c = {};
  c.steps = 1000;
  c.r_max = 1e4;
  EXPECT_THROW(solve_eigen(p, c), StepSizeError);
}

TEST(Classify, Thresholds) {
  EXPECT_EQ(classify(1.0, 5e-7), Classification::Confirmed);
  EXPECT_EQ(classify(1.0, 5e-3), Classification::Near);
  EXPECT_EQ(classify(1.0, 0.5), Classification::Discrepant);
  EXPECT_EQ(to_string(Classification::Near), "NEAR");
}

TEST(Validation, CoulombOffSyntheticStatesConfirmed) {
  // Without the 1/r term, eta = (n + l + 1) omega is an oscillator level whenever n is even.
  for (int n : {2, 4})
    for (int l = 0; l <= 2; ++l)
      for (double omega : {0.05, 0.25, 1.0}) {
        const auto rec = validate_state(n, l, omega, Convention::TableConsistent, Rational(0));
        EXPECT_EQ(rec.classification, Classification::Confirmed) << n << " " << l << " " << omega;
        EXPECT_EQ(rec.oracle_nodes, n / 2);
      }
}

TEST(Validation, PublishedRootsRecorded) {
  for (auto [n, t] : {std::pair{2, 2.5198420997897433}, std::pair{4, 14.100402227486493}}) {
    const auto rec = validate_root(n, 0, t);
    EXPECT_TRUE(std::isfinite(rec.eta_oracle));
    EXPECT_TRUE(std::isfinite(rec.residual));
    EXPECT_NEAR(rec.eta_analytic, (n + 1) / (t * t), 1e-14);
    RecordProperty("classification_n" + std::to_string(n), std::string(to_string(rec.classification)));
  }
  EXPECT_THROW(validate_root(2, 0, 0.0), DomainError);
}

TEST(DenseDeterminant, Examples) {
  EXPECT_TRUE(dense_determinant_check(3, 0, Rational(2)).equal());
  EXPECT_TRUE(dense_determinant_check(8, 2, Rational(7, 3)).equal());
  const auto d1 = dense_determinant_check(1, 5, Rational(3));
  EXPECT_TRUE(d1.equal());
  EXPECT_EQ(d1.dense, Rational(3, 2));
  EXPECT_THROW(dense_determinant_check(9, 0, Rational(1)), DomainError);
  EXPECT_THROW(dense_determinant_check(3, 0, Rational(0)), DomainError);
}

TEST(DenseDeterminant, AgreesWithLaplaceOracle) {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 7; ++n)
    for (int l = 0; l <= 3; ++l) {
      const Rational t = heunqdot::testing::random_rational_t(rng);
      const auto m = termination_matrix(true, n, l, t);
      EXPECT_EQ(dense_determinant(m), laplace_determinant(m));
      EXPECT_EQ(dense_determinant_check(n, l, t).dense, laplace_determinant(m));
    }
  // Pivoting on a zero leading entry.
  const std::vector<std::vector<Rational>> swap{{0, 2, 1}, {3, 1, 0}, {1, 0, 4}};
  EXPECT_EQ(dense_determinant(swap), laplace_determinant(swap));
}
