#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gstx/gaussian/state.hpp"
#include "gstx/simulator/transfer.hpp"
#include "gstx/simulator/validation.hpp"

namespace {

using namespace gstx::simulator;
using gstx::gaussian::InputStateSpec;
constexpr double pi = std::numbers::pi;

TransferExperiment lossless(double p, const InputStateSpec& in) {
  TransferExperiment e;
  e.params.G = 1.0;
  e.params.p = p;
  e.input = in;
  return e;
}

TEST(RunTransfer, PerfectSwapOfSqueezedVacuum) {
  const auto o = run_transfer(lossless(0.0, {1.0, 0.0, 0.0}));
  EXPECT_NEAR(o.F, 1.0, 1e-6);
  EXPECT_EQ(o.method, Method::numeric);
}

TEST(RunTransfer, SwapCorrectedFrameRecoversDisplacedInput) {
  auto e = lossless(0.0, squeezed_figure_input());
  EXPECT_NEAR(run_transfer(e).F, 1.0, 1e-6);
  // The raw readout is the input rotated by pi: mean -X, so d = 2|alpha|.
  e.frame = OutputFrame::raw;
  e.input = coherent_figure_input();
  const auto raw = run_transfer(e);
  EXPECT_NEAR(raw.X_f[0], -1.0, 1e-6);
  EXPECT_NEAR(raw.F, std::exp(-4.0), 1e-6);
}

TEST(RunTransfer, LosslessAgreesWithClosedForm) {
  const auto v = validate_against_closed_form(lossless(0.0, {1.0, 0.0, 0.0}));
  EXPECT_LT(v.dF, 1e-6);
  EXPECT_LT(v.dlambda, 1e-6);
  EXPECT_LT(v.dn_h_bar, 1e-6);
}

TEST(RunTransfer, LosslessSwitchedOnKeepsLosslessFidelityBelowOne) {
  const auto v = validate_against_closed_form(lossless(5.0, coherent_figure_input()));
  EXPECT_LT(v.numeric.F, 0.99);
  EXPECT_LT(v.dF, 1e-6);
}

TEST(RunTransfer, FigureTwoPointAgreesWithClosedForm) {
  const auto v = validate_against_closed_form(figure_experiment(10.0, 5.0, 1.5, squeezed_figure_input(), kDefaultSteps));
  EXPECT_LT(v.dF, kOracleGate);
  EXPECT_LT(v.dlambda, kOracleGate * 10);
}

TEST(RunTransfer, ZeroPCurveHasAnOptimumAboveWeakCoupling) {
  double best = 0.0;
  for (double g : {1.0, 2.0, 5.0, 10.0, 20.0}) best = std::max(best, run_transfer(figure_experiment(g, 0.0, 1.5, squeezed_figure_input(), kDefaultSteps)).F);
  const double weak = run_transfer(figure_experiment(0.5, 0.0, 1.5, squeezed_figure_input(), kDefaultSteps)).F;
  EXPECT_GT(best, weak);
}

TEST(RunTransfer, ColdBathLeavesOnlyAmplitudeDecay) {
  const auto o = run_transfer(figure_experiment(30.0, 5.0, 1e-3, coherent_figure_input(), kDefaultSteps));
  EXPECT_LT(o.n_h_bar, 0.01);
  EXPECT_NEAR(o.lambda, 0.9, 0.05);
}

// The switched-on curve lies below the switched-off one once coupling is
// strong; at G/kappa below about 2 the order reverses (see README).
TEST(RunTransfer, SwitchLowersFidelityAtStrongCoupling) {
  for (double g : {2.0, 5.0, 10.0, 20.0, 30.0}) {
    const double on = run_transfer(figure_experiment(g, 5.0, 1.5, squeezed_figure_input(), kDefaultSteps)).F;
    const double off = run_transfer(figure_experiment(g, 0.0, 1.5, squeezed_figure_input(), kDefaultSteps)).F;
    EXPECT_LT(on, off) << "G/kappa=" << g;
  }
}

TEST(RunTransfer, RejectsTooFewSteps) {
  auto e = lossless(0.0, {});
  e.dt_steps = 999;
  EXPECT_THROW(run_transfer(e), gstx::model::ValidationError);
}

TEST(RunTransfer, StepCountConverges) {
  const auto e = figure_experiment(10.0, 2.0, 1.5, squeezed_figure_input(), 2000);
  auto fine = e;
  fine.dt_steps = 50000;
  EXPECT_NEAR(run_transfer(e).F, run_transfer(fine).F, 1e-9);
}

TEST(Calibration, VacuumConventionMatchesClosedForm) {
  const auto c = calibrate_initial_convention(figure_experiment(10.0, 5.0, 1.5, squeezed_figure_input(), kDefaultSteps));
  EXPECT_EQ(c.chosen, InitialConvention::vacuum_all_others);
  EXPECT_LT(c.dF_vacuum, c.dF_thermal_springs);
}

struct Tuple {
  double G_over_kappa, p, T;
  InputStateSpec in;
};

const std::vector<Tuple> kTuples{{0.5, 0.0, 1.5, squeezed_figure_input()}, {10.0, 5.0, 1.5, squeezed_figure_input()},
                                 {30.0, 2.0, 0.0, coherent_figure_input()}, {3.0, 50.0, 1.5, coherent_figure_input()},
                                 {10.0, 1.0, 1e-3, {2.0, 3.0, 1.0}}};

TEST(SimulatorProperty, PhysicalAtSampledTimes) {
  for (const auto& tp : kTuples)
    for (auto conv : {InitialConvention::vacuum_all_others, InitialConvention::thermal_springs}) {
      auto e = figure_experiment(tp.G_over_kappa, tp.p, tp.T, tp.in, 5000);
      e.initial_convention = conv;
      const double t0 = transfer_time(e.params);
      for (int k = 1; k <= 10; ++k) {
        const auto s = evolve(e, t0 * k / 10.0, 500 * k);
        EXPECT_TRUE(gstx::gaussian::is_physical(s)) << "G/kappa=" << tp.G_over_kappa << " p=" << tp.p << " k=" << k;
      }
    }
}

TEST(SimulatorProperty, VacuumIsAFixedPointAtZeroTemperature) {
  for (double p : {0.0, 1.0, 5.0, 50.0}) {
    const auto e = figure_experiment(10.0, p, 0.0, {0.0, 0.0, 0.0}, kDefaultSteps);
    const double t0 = transfer_time(e.params);
    for (int k = 1; k <= 4; ++k) {
      const auto s = evolve(e, t0 * k / 4.0, 5000 * k);
      for (double m : s.mean.v) EXPECT_LE(std::abs(m), 1e-9);
      EXPECT_LE(gstx::numkit::max_abs_diff(s.cov, 0.25 * gstx::numkit::Matrix<8>::identity()), 1e-9) << "p=" << p;
    }
  }
}

TEST(SimulatorProperty, MeanNormContracts) {
  for (const auto& tp : kTuples) {
    const auto e = figure_experiment(tp.G_over_kappa, tp.p, tp.T, tp.in, 5000);
    const double n0 = gstx::numkit::norm(initial_state(e).mean);
    const double t0 = transfer_time(e.params);
    double prev = n0;
    for (int k = 1; k <= 10; ++k) {
      const double n = gstx::numkit::norm(evolve(e, t0 * k / 10.0, 500 * k).mean);
      EXPECT_LE(n, prev * (1.0 + 1e-12));
      prev = n;
    }
  }
}

TEST(OracleGrid, DeterministicAndInRange) {
  const auto a = oracle_grid(100, 42), b = oracle_grid(100, 42);
  ASSERT_EQ(a.size(), 100u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].G_over_kappa, b[i].G_over_kappa);
    EXPECT_GE(a[i].G_over_kappa, 0.5);
    EXPECT_LE(a[i].G_over_kappa, 30.0);
    EXPECT_TRUE(a[i].T_bath == 0.0 || a[i].T_bath == 1.5);
  }
}

}  // namespace
