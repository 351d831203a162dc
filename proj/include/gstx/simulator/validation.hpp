#pragma once

// Closed-form versus numeric comparison over a seeded random parameter grid.

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "gstx/model/params.hpp"
#include "gstx/simulator/transfer.hpp"

namespace gstx::simulator {

inline constexpr double kOracleGate = 5e-4;

/// Squeezed input of the squeezed-state figures: r = 1, |alpha| = 1, phi = pi/4.
inline gaussian::InputStateSpec squeezed_figure_input() { return {1.0, 1.0, std::numbers::pi / 4.0}; }
/// Coherent input of the coherent-state figures: r = 0, alpha = 1.
inline gaussian::InputStateSpec coherent_figure_input() { return {0.0, 1.0, 0.0}; }

/// splitmix64; fixed output for a given seed on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::uint64_t state_;
};

struct OracleGridPoint {
  double G_over_kappa;
  double p;
  double T_bath;
  bool squeezed_input;
};

/// G/kappa uniform in [0.5, 30], p in {0, 0.5, 1, 2, 5}, T in {0, 1.5 K},
/// squeezed or coherent figure input.
inline std::vector<OracleGridPoint> oracle_grid(std::size_t count, std::uint64_t seed) {
  constexpr std::array<double, 5> ps{0.0, 0.5, 1.0, 2.0, 5.0};
  constexpr std::array<double, 2> temps{0.0, 1.5};
  SplitMix64 rng(seed);
  std::vector<OracleGridPoint> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    OracleGridPoint pt;
    pt.G_over_kappa = 0.5 + 29.5 * rng.uniform();
    pt.p = ps[rng.index(ps.size())];
    pt.T_bath = temps[rng.index(temps.size())];
    pt.squeezed_input = rng.index(2) == 0;
    pts.push_back(pt);
  }
  return pts;
}

/// Figure parameters (gamma = kappa/50 = 2pi x 1 kHz, single bath occupation)
/// at one grid point.
inline TransferExperiment figure_experiment(double G_over_kappa, double p, double T_bath,
                                            const gaussian::InputStateSpec& input, std::size_t steps) {
  TransferExperiment e;
  e.params = model::params_from_figure_defaults(T_bath);
  e.params.G = G_over_kappa * e.params.kappa;
  e.params.p = p;
  e.input = input;
  e.dt_steps = steps;
  return e;
}

struct OracleGridReport {
  CalibrationResult calibration;
  std::size_t points = 0;
  std::size_t within_gate = 0;
  double max_dF = 0.0;
  double max_dlambda = 0.0;
  double max_dn_h_bar = 0.0;
  OracleGridPoint worst{};
  std::vector<double> dF;  ///< per point, grid order
};

/// Calibrates the initial convention at the squeezed-input, p = 5, G/kappa = 10,
/// T = 1.5 K point, then compares both routes over the grid.
inline OracleGridReport run_oracle_grid(const std::vector<OracleGridPoint>& grid, std::size_t steps) {
  OracleGridReport rep;
  rep.calibration = calibrate_initial_convention(figure_experiment(10.0, 5.0, 1.5, squeezed_figure_input(), steps));
  rep.points = grid.size();
  for (const auto& pt : grid) {
    auto e = figure_experiment(pt.G_over_kappa, pt.p, pt.T_bath,
                               pt.squeezed_input ? squeezed_figure_input() : coherent_figure_input(), steps);
    e.initial_convention = rep.calibration.chosen;
    const auto v = validate_against_closed_form(e);
    rep.dF.push_back(v.dF);
    if (v.dF <= kOracleGate) ++rep.within_gate;
    if (v.dF > rep.max_dF) {
      rep.max_dF = v.dF;
      rep.worst = pt;
    }
    rep.max_dlambda = std::max(rep.max_dlambda, v.dlambda);
    rep.max_dn_h_bar = std::max(rep.max_dn_h_bar, v.dn_h_bar);
  }
  return rep;
}

}  // namespace gstx::simulator
