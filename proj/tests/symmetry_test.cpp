#include "cyclewalk/symmetry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cyclewalk/limiting.hpp"
#include "test_support.hpp"

namespace cw = cyclewalk;
using std::numbers::pi;

namespace {

TEST(SymmetryResidual, VanishesForBalancedStates) {
  const cw::coin_params coin = testsup::hadamard_coin();
  EXPECT_LE(cw::symmetry_residual(coin, testsup::quarter_phase_init()), 1e-14);
  EXPECT_LE(cw::symmetry_residual(coin, testsup::quarter_phase_init(0, -1)),
            1e-14);
  EXPECT_LE(cw::symmetry_residual(coin, testsup::pi_eighth_init()), 1e-14);
  EXPECT_LE(cw::symmetry_residual(coin, testsup::fifth_weights_init()), 1e-14);
  EXPECT_LE(cw::symmetry_residual(coin, testsup::fifth_weights_init(0, -1)),
            1e-14);
}

TEST(SymmetryResidual, DetectsInPhaseImbalance) {
  const double residual = cw::symmetry_residual(testsup::hadamard_coin(),
                                                testsup::in_phase_init());
  EXPECT_NEAR(residual, 1.0, 1e-14);
}

TEST(SolveSymmetricPhase, RecoversThirdTurnForFifthWeights) {
  const cw::initial_condition init = testsup::fifth_weights_init();
  const std::vector<double> phases =
      cw::solve_symmetric_phase(testsup::hadamard_coin(), init.p0);
  ASSERT_EQ(phases.size(), 2u);
  EXPECT_NEAR(phases[0], pi / 3.0, 1e-14);
  EXPECT_NEAR(phases[1], -pi / 3.0, 1e-14);
}

TEST(SolveSymmetricPhase, EqualWeightsNeedQuarterTurn) {
  const std::vector<double> phases =
      cw::solve_symmetric_phase(testsup::coin_with_a(0.37),
                               std::numbers::sqrt2 / 2.0);
  ASSERT_EQ(phases.size(), 2u);
  EXPECT_DOUBLE_EQ(phases[0], pi / 2.0);
  EXPECT_DOUBLE_EQ(phases[1], -pi / 2.0);
}

TEST(SolveSymmetricPhase, LopsidedWeightsHaveNoSolution) {
  EXPECT_TRUE(
      cw::solve_symmetric_phase(testsup::hadamard_coin(), 0.05).empty());
  EXPECT_TRUE(
      cw::solve_symmetric_phase(testsup::hadamard_coin(), 0.998).empty());
}

TEST(SolveSymmetricPhase, RejectsWeightOutsideOpenInterval) {
  EXPECT_THROW(cw::solve_symmetric_phase(testsup::hadamard_coin(), 0.0),
               cw::constraint_violation);
  EXPECT_THROW(cw::solve_symmetric_phase(testsup::hadamard_coin(), 1.0),
               cw::constraint_violation);
}

TEST(SolveSymmetricPhase, SolutionsZeroTheResidual) {
  std::mt19937 rng(137u);
  std::uniform_real_distribution<double> weight(0.2, 0.8);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const cw::coin_params coin = testsup::random_coin(rng);
    const double p0 = weight(rng);
    for (const double phi : cw::solve_symmetric_phase(coin, p0)) {
      ++solved;
      const cw::initial_condition init{0, p0, std::sqrt(1.0 - p0 * p0), phi};
      EXPECT_LE(cw::symmetry_residual(coin, init), 1e-14);
    }
  }
  EXPECT_GE(solved, 20);
}

TEST(VariationTrace, StaysFlatForQuarterPhaseState) {
  const cw::walk_config cfg = testsup::make_config(
      50, testsup::hadamard_coin(), testsup::quarter_phase_init());
  const cw::symmetry_trace trace = cw::variation_trace(cfg, 300);
  ASSERT_EQ(trace.times.size(), 300u);
  for (const double v : trace.v) EXPECT_LE(v, 1e-24);
}

TEST(VariationTrace, MatchesDirectDistributionDifference) {
  const cw::walk_config cfg = testsup::make_config(
      13, testsup::coin_with_a(0.6), testsup::in_phase_init(4));
  const cw::symmetry_trace trace = cw::variation_trace(cfg, 40);
  for (const std::size_t i : {0u, 12u, 39u}) {
    const cw::distance_distribution dist = cw::position_distribution(
        cw::evolve(cfg, trace.times[i]), cfg.init.x0);
    double v = 0.0;
    for (std::size_t d = 0; d < cfg.n; ++d) {
      const double diff = dist[d] - dist[d == 0 ? 0 : cfg.n - d];
      v += diff * diff;
    }
    EXPECT_NEAR(trace.v[i], v, 1e-15);
  }
}

TEST(VariationTrace, RejectsEmptyHorizon) {
  const cw::walk_config cfg = testsup::make_config(
      8, testsup::hadamard_coin(), testsup::quarter_phase_init());
  EXPECT_THROW(cw::variation_trace(cfg, 0), cw::constraint_violation);
}

cw::symmetry_trace synthetic_trace(std::vector<double> v) {
  cw::symmetry_trace trace;
  for (std::size_t i = 0; i < v.size(); ++i) {
    trace.times.push_back(i + 1);
  }
  trace.v = std::move(v);
  return trace;
}

TEST(MixingTime, FindsLastCrossing) {
  std::vector<double> v(100, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.1 / double(i + 1);
  v[36] = 0.5;  // t = 37
  const cw::symmetry_trace trace = synthetic_trace(v);
  const cw::mixing_report rep = cw::mixing_time(trace, 0.2);
  ASSERT_TRUE(rep.converged());
  EXPECT_EQ(*rep.m_epsilon, 37u);
  // V at the reported time is still >= epsilon; strictly after it is below.
  EXPECT_GE(trace.v[36], rep.epsilon);
  for (std::size_t i = 37; i < v.size(); ++i) {
    EXPECT_LT(trace.v[i], rep.epsilon);
  }
}

TEST(MixingTime, ThresholdAboveTraceGivesZero) {
  const cw::mixing_report rep =
      cw::mixing_time(synthetic_trace({0.1, 0.05, 0.01}), 1.0);
  ASSERT_TRUE(rep.converged());
  EXPECT_EQ(*rep.m_epsilon, 0u);
}

TEST(MixingTime, LateCrossingIsUnresolved) {
  std::vector<double> v(100, 1e-6);
  v[97] = 0.5;  // t = 98, inside the final tenth of the horizon
  const cw::mixing_report rep = cw::mixing_time(synthetic_trace(v), 1e-3);
  EXPECT_FALSE(rep.converged());
  EXPECT_EQ(rep.t_horizon, 100u);
}

TEST(MixingTime, MonotoneInEpsilon) {
  const cw::walk_config cfg = testsup::make_config(
      64, testsup::hadamard_coin(), testsup::pi_eighth_init());
  const cw::symmetry_trace trace = cw::variation_trace(cfg, 2000);
  double prev = -1.0;
  for (const double eps : {1e-2, 3e-3, 1e-3, 3e-4, 1e-4}) {
    const cw::mixing_report rep = cw::mixing_time(trace, eps);
    const double m = rep.converged()
                         ? static_cast<double>(*rep.m_epsilon)
                         : std::numeric_limits<double>::infinity();
    EXPECT_GE(m, prev) << "eps = " << eps;
    prev = m;
  }
}

TEST(MixingTime, RejectsBadInputs) {
  EXPECT_THROW(cw::mixing_time(cw::symmetry_trace{}, 0.1), cw::empty_trace);
  EXPECT_THROW(cw::mixing_time(synthetic_trace({0.1}), 0.0),
               cw::constraint_violation);
}

TEST(EnvelopeSlope, RecoversPureInversePowerLaw) {
  std::vector<double> v(5000);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::pow(static_cast<double>(i + 1), -0.5);
  }
  const double slope = cw::envelope_slope(synthetic_trace(v), 10, 5000);
  EXPECT_NEAR(slope, -0.5, 1e-6);
}

TEST(EnvelopeSlope, FlatSeriesHasZeroSlope) {
  const std::vector<double> v(2000, 3.7e-4);
  EXPECT_NEAR(cw::envelope_slope(synthetic_trace(v), 10, 2000), 0.0, 1e-9);
}

TEST(EnvelopeSlope, IgnoresOscillationNulls) {
  // A power-law ceiling times an oscillation that keeps touching zero: the
  // per-bin maxima see only the ceiling.
  std::vector<double> v(20000);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = static_cast<double>(i + 1);
    const double osc = std::sin(0.37 * t);
    v[i] = std::pow(t, -0.5) * osc * osc;
  }
  const double slope = cw::envelope_slope(synthetic_trace(v), 100, 20000);
  EXPECT_NEAR(slope, -0.5, 0.05);
}

TEST(EnvelopeSlope, RejectsThinWindows) {
  const std::vector<double> v(100, 0.5);
  EXPECT_THROW(cw::envelope_slope(synthetic_trace(v), 3, 9),
               cw::insufficient_samples);
  EXPECT_THROW(cw::envelope_slope(synthetic_trace(v), 50, 40),
               cw::constraint_violation);
  EXPECT_THROW(cw::envelope_slope(synthetic_trace(v), 10, 500),
               cw::constraint_violation);
  EXPECT_THROW(cw::envelope_slope(cw::symmetry_trace{}, 1, 10),
               cw::empty_trace);
}

TEST(EnvelopeSlope, NearlySymmetricWalkDecaysRoughlyAsInverseSqrt) {
  const cw::walk_config cfg = testsup::make_config(
      200, testsup::hadamard_coin(), testsup::pi_eighth_init());
  const cw::symmetry_trace trace = cw::variation_trace(cfg, 2000);
  const double slope = cw::envelope_slope(trace, 50, 2000);
  EXPECT_LE(slope, -0.1);
  EXPECT_GE(slope, -0.9);
}

// A state with zero residual keeps V pinned near the floating-point floor,
// so its mixing time is 0 for any sensible epsilon.
TEST(MixingTime, SymmetricStateMixesImmediately) {
  const cw::walk_config cfg = testsup::make_config(
      32, testsup::hadamard_coin(), testsup::quarter_phase_init());
  const cw::symmetry_trace trace = cw::variation_trace(cfg, 500);
  const cw::mixing_report rep = cw::mixing_time(trace, 1e-10);
  ASSERT_TRUE(rep.converged());
  EXPECT_EQ(*rep.m_epsilon, 0u);
}

}  // namespace
