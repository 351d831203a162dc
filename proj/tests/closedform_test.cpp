#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "gstx/closedform/lossless.hpp"
#include "gstx/closedform/spectral.hpp"
#include "gstx/closedform/transfer.hpp"
#include "gstx/gaussian/state.hpp"
#include "gstx/model/drift.hpp"
#include "gstx/numkit/ode.hpp"
#include "gstx/simulator/validation.hpp"

namespace {

using namespace gstx::closedform;
using gstx::model::SystemParams;
using gstx::numkit::Matrix;
constexpr double pi = std::numbers::pi;

SystemParams params(double G, double p, double kappa, double gamma, double Nc = 0.0, double Nm = 0.0) {
  SystemParams s;
  s.G = G;
  s.p = p;
  s.kappa = kappa;
  s.gamma = gamma;
  s.N_c = Nc;
  s.N_m = Nm;
  return s;
}

TEST(Spectral, ZeroP) {
  const auto sc = spectral_constants(1.0, 0.0);
  EXPECT_EQ(sc.nu_plus, 1.0);
  EXPECT_EQ(sc.nu_minus, 1.0);
  EXPECT_NEAR(sc.h_plus, 4.0 * std::sqrt(2.0), 1e-15);
  EXPECT_EQ(sc.h_minus, 0.0);
  EXPECT_NEAR(sc.t0, pi / std::sqrt(2.0), 1e-15);
}

TEST(Spectral, LargeP) {
  const auto sc = spectral_constants(1.0, 100.0);
  EXPECT_NEAR(sc.nu_plus, 2.0, 1e-3);
  EXPECT_NEAR(sc.nu_minus, 0.0, 1e-3);
}

// Golden values: 40-digit evaluation of the defining formulas at p = 5, G = 1.
TEST(Spectral, HighPrecisionValuesAtP5) {
  const auto sc = spectral_constants(1.0, 5.0);
  EXPECT_NEAR(sc.nu_plus, 1.996815278536124999, 1e-15);
  EXPECT_NEAR(sc.nu_minus, 0.00318472146387500095, 1e-17);
  EXPECT_NEAR(sc.h_plus, 20.411736311831760478, 1e-13);
  EXPECT_NEAR(sc.h_minus, 3.9193138093611182784, 1e-14);
  EXPECT_NEAR(sc.t0, 0.61564437353009582957, 1e-15);
}

TEST(SpectralProperty, Identities) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ug(0.01, 100.0), up(0.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = up(rng);
    const auto sc = spectral_constants(ug(rng), p);
    EXPECT_EQ(sc.nu_plus + sc.nu_minus, 2.0);
    EXPECT_GE(sc.h_plus, sc.h_minus);
    EXPECT_GT(sc.h_minus, 0.0);
    EXPECT_NEAR(sc.nu_plus * sc.nu_minus, 4.0 / (4.0 + std::pow(p, 4)), 1e-12 * 4.0 / (4.0 + std::pow(p, 4)) + 1e-300);
  }
}

TEST(Spectral, RejectsBadArguments) {
  EXPECT_THROW(spectral_constants(0.0, 1.0), gstx::model::ValidationError);
  EXPECT_THROW(spectral_constants(1.0, -1.0), gstx::model::ValidationError);
}

TEST(Lossless, IdentityAtTimeZero) {
  for (double p : {0.0, 1.0, 5.0}) {
    const auto T = lossless_output_operators(spectral_constants(1.0, p), p, 1.0, 0.0);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(T[i][j], (i == j ? 1.0 : 0.0)) << i << "," << j;
  }
}

TEST(Lossless, PerfectSwapAtZeroP) {
  const auto sc = spectral_constants(1.0, 0.0);
  const auto T = lossless_output_operators(sc, 0.0, 1.0, sc.t0);
  EXPECT_NEAR(T[amp::d2][amp::d1].real(), -1.0, 1e-14);
  EXPECT_NEAR(T[amp::d1][amp::d2].real(), -1.0, 1e-14);
  EXPECT_NEAR(std::abs(T[amp::d2][amp::d2]), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(T[amp::d2][amp::a1]), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(T[amp::d2][amp::a2]), 0.0, 1e-14);
}

// Golden values from a 40-digit evaluation at p = 5, G = 1, t = t0. The cavity
// keeps most of its own amplitude (0.82) and exchanges little with the other.
TEST(Lossless, HighPrecisionValuesAtP5) {
  const auto sc = spectral_constants(1.0, 5.0);
  const auto T = lossless_output_operators(sc, 5.0, 1.0, sc.t0);
  EXPECT_NEAR(T[amp::d2][amp::d2].real(), 0.82060617294130932599, 1e-13);
  EXPECT_NEAR(T[amp::d2][amp::d1].real(), -0.072708099497937513037, 1e-13);
  EXPECT_LT(std::abs(T[amp::d2][amp::d1]), std::abs(T[amp::d2][amp::d2]));
}

class LosslessPropagator : public ::testing::TestWithParam<std::pair<double, double>> {};

TEST_P(LosslessPropagator, IsSymplectic) {
  const auto [p, tfrac] = GetParam();
  const double G = 1.3;
  const auto sc = spectral_constants(G, p);
  const auto S = quadrature_propagator(lossless_output_operators(sc, p, G, tfrac * sc.t0));
  const auto W = gstx::gaussian::symplectic_form<4>();
  EXPECT_LT(gstx::numkit::max_abs_diff(gstx::numkit::transpose(S) * W * S, W), 1e-10);
}

TEST_P(LosslessPropagator, MatchesIntegratedDrift) {
  const auto [p, tfrac] = GetParam();
  const double G = 1.3;
  const auto sc = spectral_constants(G, p);
  const double t = tfrac * sc.t0;
  const auto S = quadrature_propagator(lossless_output_operators(sc, p, G, t));
  const auto Q = gstx::model::build_drift_noise(params(G, p, 0.0, 0.0)).Q;
  for (std::size_t c = 0; c < 8; ++c) {
    gstx::numkit::Vector<8> e{};
    e[c] = 1.0;
    const auto m = gstx::numkit::integrate_linear_moments_steps(Q, Matrix<8>{}, e, Matrix<8>{}, t, 4000);
    for (std::size_t r = 0; r < 8; ++r) EXPECT_NEAR(m.mean[r], S(r, c), 1e-10) << "entry " << r << "," << c;
  }
}

INSTANTIATE_TEST_SUITE_P(Grid, LosslessPropagator,
                         ::testing::Values(std::pair{0.0, 1.0}, std::pair{0.0, 0.37}, std::pair{0.5, 1.0},
                                           std::pair{1.0, 0.8}, std::pair{2.0, 1.0}, std::pair{5.0, 1.0},
                                           std::pair{5.0, 2.3}, std::pair{20.0, 0.6}));

// Golden values from a 40-digit evaluation at G = 1, p = 2, kappa = 0.1, gamma = 0.02.
TEST(ClosedForm, SubExpressionsMatchHighPrecision) {
  const auto r = closed_form_transfer(params(1.0, 2.0, 0.1, 0.02), {0.0, 1.0, 0.0});
  EXPECT_NEAR(r.spectral.t0, 1.3729263319094337469, 1e-14);
  EXPECT_NEAR(r.A_plus, -1.0, 1e-14);
  EXPECT_NEAR(r.A_minus, 0.34104769904695366167, 1e-13);
  EXPECT_NEAR(r.beta, 63.9936, 1e-12);
  EXPECT_NEAR(r.I1_plus, 0.65883665253869338505, 1e-13);
  EXPECT_NEAR(r.I2_plus, 0.65896247914281117314, 1e-13);
  EXPECT_NEAR(r.I1_minus, 0.46476126471122289293, 1e-13);
  EXPECT_NEAR(r.I2_minus, 0.83170770658421207636, 1e-13);
}

TEST(ClosedForm, LosslessPerfectSwap) {
  for (const auto& in : {gstx::gaussian::InputStateSpec{1.0, 0.0, 0.0}, gstx::gaussian::InputStateSpec{1.0, 1.0, pi / 4}}) {
    const auto r = closed_form_transfer(params(1.0, 0.0, 0.0, 0.0), in);
    EXPECT_NEAR(r.C1, 1.0, 1e-14);
    EXPECT_NEAR(r.C2, 0.0, 1e-14);
    EXPECT_NEAR(r.C3, 1.0, 1e-14);
    EXPECT_NEAR(r.n_h_bar, 0.0, 1e-13);
    EXPECT_NEAR(r.lambda_sq, 0.0, 1e-13);
    EXPECT_NEAR(r.F, 1.0, 1e-13);
  }
}

TEST(ClosedForm, ZeroPLimitIsContinuous) {
  const auto in = gstx::simulator::squeezed_figure_input();
  const auto at0 = closed_form_transfer(params(1.0, 0.0, 0.1, 0.02, 2.0, 2.0), in);
  const auto near0 = closed_form_transfer(params(1.0, 1e-5, 0.1, 0.02, 2.0, 2.0), in);
  EXPECT_NEAR(at0.C1, near0.C1, 1e-8);
  EXPECT_NEAR(at0.C2, near0.C2, 1e-8);
  EXPECT_NEAR(at0.F, near0.F, 1e-8);
  EXPECT_TRUE(std::isnan(at0.C2_spring_noise_full_bracket));
  EXPECT_TRUE(std::isfinite(near0.C2_spring_noise_full_bracket));
}

TEST(ClosedForm, ExpressionsAgreeWithFidelityOfOutputState) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ug(0.5, 30.0), ur(0.0, 1.5), ua(0.0, 2.0), uph(0.0, 2 * pi);
  for (int i = 0; i < 50; ++i) {
    auto s = gstx::model::params_from_figure_defaults(1.5);
    s.G = ug(rng) * s.kappa;
    s.p = std::vector<double>{0.0, 0.5, 1.0, 2.0, 5.0}[i % 5];
    const gstx::gaussian::InputStateSpec in{ur(rng), ua(rng), uph(rng)};
    const auto r = closed_form_transfer(s, in);
    const auto input = gstx::gaussian::prepare_squeezed_coherent(in);
    const auto t = gstx::gaussian::fidelity_terms(input, closed_form_output_state(r, input));
    EXPECT_NEAR(r.n_h_bar, t.n_h_bar, 1e-12);
    EXPECT_NEAR(r.lambda_sq, t.lambda_sq, 1e-12 * std::max(1.0, t.lambda_sq));
    EXPECT_NEAR(r.F, t.F, 1e-12);
  }
}

TEST(ClosedFormProperty, StructuralIdentities) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ug(0.5, 30.0), up(0.0, 20.0), ut(0.0, 3.0), ur(0.0, 1.5);
  for (int i = 0; i < 1000; ++i) {
    auto s = gstx::model::params_from_figure_defaults(ut(rng));
    s.G = ug(rng) * s.kappa;
    s.p = up(rng);
    const auto r = closed_form_transfer(s, {ur(rng), 1.0, 0.3});
    EXPECT_NEAR(r.C3, r.C1 * r.C1, 1e-12);
    EXPECT_GE(r.C1, -1.0);
    EXPECT_LE(r.C1, 1.0);
    EXPECT_GE(r.C2, 0.0);
    EXPECT_GE(r.F, 0.0);
    EXPECT_LE(r.F, 1.0);
  }
}

TEST(ClosedForm, FigureTwoStrongCouplingBelowPointThree) {
  for (double g : {5.0, 10.0, 20.0, 30.0}) {
    auto s = gstx::model::params_from_figure_defaults(1.5);
    s.G = g * s.kappa;
    s.p = 5.0;
    EXPECT_LT(closed_form_transfer(s, gstx::simulator::squeezed_figure_input()).F, 0.3) << "G/kappa=" << g;
  }
}

TEST(ClosedForm, CoherentFidelityDecreasesWithP) {
  auto at = [](double p) {
    auto s = gstx::model::params_from_figure_defaults(1.5);
    s.G = 10.0 * s.kappa;
    s.p = p;
    return closed_form_transfer(s, gstx::simulator::coherent_figure_input()).F;
  };
  EXPECT_LT(at(50.0), at(5.0));
  EXPECT_LT(at(5.0), at(0.0));
}

}  // namespace
