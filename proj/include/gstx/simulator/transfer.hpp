#pragma once

// End-to-end numeric transfer: prepare the four-mode state, integrate the
// moment equations to t0, read out cavity II and compare with the input.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string_view>

#include "gstx/closedform/transfer.hpp"
#include "gstx/gaussian/fidelity.hpp"
#include "gstx/gaussian/state.hpp"
#include "gstx/model/drift.hpp"
#include "gstx/numkit/ode.hpp"

namespace gstx::simulator {

/// State of cavity II and both springs at t = 0.
enum class InitialConvention { vacuum_all_others, thermal_springs };

/// How the cavity II readout is referenced to the input. The swap maps
/// d1 -> -d2 up to damping (a pi rotation of phase space); `swap_corrected`
/// undoes that rotation, `raw` reports the rotating-frame output as is.
enum class OutputFrame { swap_corrected, raw };

enum class Method { numeric, closed_form };

inline constexpr std::size_t kDefaultSteps = 20000;
inline constexpr std::size_t kMinSteps = 1000;

inline std::string_view to_string(Method m) { return m == Method::numeric ? "numeric" : "closed_form"; }
inline std::string_view to_string(InitialConvention c) {
  return c == InitialConvention::vacuum_all_others ? "vacuum" : "thermal-springs";
}

struct TransferExperiment {
  model::SystemParams params;
  gaussian::InputStateSpec input;
  InitialConvention initial_convention = InitialConvention::vacuum_all_others;
  std::size_t dt_steps = kDefaultSteps;
  OutputFrame frame = OutputFrame::swap_corrected;

  void validate() const {
    params.validate();
    input.validate();
    if (dt_steps < kMinSteps) throw model::ValidationError("steps", "must be >= 1000");
  }
};

struct TransferOutcome {
  double F = 0.0;
  double lambda = 0.0;  ///< sqrt(lambda^2)
  double n_h_bar = 0.0;
  numkit::Vector<2> X_f;
  numkit::Matrix<2> sigma_f;
  Method method = Method::numeric;
  // Only meaningful for Method::closed_form.
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
};

using FourModeState = gaussian::GaussianState<4>;

inline FourModeState initial_state(const TransferExperiment& exp) {
  using gaussian::SingleMode;
  const SingleMode input = gaussian::prepare_squeezed_coherent(exp.input);
  const SingleMode spring = exp.initial_convention == InitialConvention::thermal_springs
                                ? gaussian::thermal_state(exp.params.N_m)
                                : SingleMode::vacuum();
  // mode order: cavity I, cavity II, spring 1, spring 2
  return gaussian::product_state<4>({input, SingleMode::vacuum(), spring, spring});
}

/// Full four-mode state after integrating to time t with `steps` RK4 steps.
inline FourModeState evolve(const TransferExperiment& exp, double t, std::size_t steps) {
  const auto dn = model::build_drift_noise(exp.params);
  const auto s0 = initial_state(exp);
  const auto m = numkit::integrate_linear_moments_steps(dn.Q, dn.N, s0.mean, s0.cov, t, steps);
  return {m.mean, m.cov};
}

inline double transfer_time(const model::SystemParams& p) { return closedform::spectral_constants(p.G, p.p).t0; }

inline TransferOutcome outcome_from_states(const gaussian::SingleMode& input, const gaussian::SingleMode& output,
                                           Method method) {
  const auto ft = gaussian::fidelity_terms(input, output);
  TransferOutcome o;
  o.F = ft.F;
  o.lambda = std::sqrt(std::max(0.0, ft.lambda_sq));
  o.n_h_bar = ft.n_h_bar;
  o.X_f = output.mean;
  o.sigma_f = output.cov;
  o.method = method;
  return o;
}

/// Numeric route. Throws numkit::IntegrationDiverged.
inline TransferOutcome run_transfer(const TransferExperiment& exp) {
  exp.validate();
  const auto final_state = evolve(exp, transfer_time(exp.params), exp.dt_steps);
  auto out = gaussian::extract_mode(final_state, model::quad::cavity_II);
  if (exp.frame == OutputFrame::swap_corrected) out.mean *= -1.0;
  return outcome_from_states(gaussian::prepare_squeezed_coherent(exp.input), out, Method::numeric);
}

/// Closed-form route; n_h and lambda^2 come from their C1..C3 expressions.
inline TransferOutcome run_closed_form(const TransferExperiment& exp) {
  exp.validate();
  const auto cf = closedform::closed_form_transfer(exp.params, exp.input);
  const auto in = gaussian::prepare_squeezed_coherent(exp.input);
  const auto out = closedform::closed_form_output_state(cf, in);
  TransferOutcome o;
  o.F = cf.F;
  o.lambda = std::sqrt(std::max(0.0, cf.lambda_sq));
  o.n_h_bar = cf.n_h_bar;
  o.X_f = out.mean;
  o.sigma_f = out.cov;
  o.method = Method::closed_form;
  o.C1 = cf.C1;
  o.C2 = cf.C2;
  o.C3 = cf.C3;
  return o;
}

inline TransferOutcome run(const TransferExperiment& exp, Method m) {
  return m == Method::numeric ? run_transfer(exp) : run_closed_form(exp);
}

struct ValidationReport {
  double dF;
  double dlambda;
  double dn_h_bar;
  TransferOutcome numeric;
  TransferOutcome closed_form;
};

inline ValidationReport validate_against_closed_form(const TransferExperiment& exp) {
  ValidationReport r;
  r.numeric = run_transfer(exp);
  r.closed_form = run_closed_form(exp);
  r.dF = std::abs(r.numeric.F - r.closed_form.F);
  r.dlambda = std::abs(r.numeric.lambda - r.closed_form.lambda);
  r.dn_h_bar = std::abs(r.numeric.n_h_bar - r.closed_form.n_h_bar);
  return r;
}

struct CalibrationResult {
  InitialConvention chosen;
  double dF_vacuum;
  double dF_thermal_springs;
};

/// Picks the initial convention whose numeric fidelity is closest to the
/// closed form at one calibration experiment.
inline CalibrationResult calibrate_initial_convention(TransferExperiment exp) {
  exp.initial_convention = InitialConvention::vacuum_all_others;
  const double vac = validate_against_closed_form(exp).dF;
  exp.initial_convention = InitialConvention::thermal_springs;
  const double th = validate_against_closed_form(exp).dF;
  return {th < vac ? InitialConvention::thermal_springs : InitialConvention::vacuum_all_others, vac, th};
}

}  // namespace gstx::simulator
