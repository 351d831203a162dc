#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "gstx/model/constants.hpp"

namespace gstx::model {

/// A physical parameter outside its allowed range. `field()` names it.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Mean thermal occupation 1/(exp(hbar w / k_B T) - 1); zero at T = 0.
inline double thermal_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) throw ValidationError("omega", "must be > 0");
  if (!(temperature >= 0.0)) throw ValidationError("T", "must be >= 0");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(constants::hbar * omega / (constants::k_B * temperature));
}

/// Symmetric dual-cavity, dual-spring system. Rates in rad/s.
/// G couples both cavities to spring 1; p*G couples cavity I to spring 2.
struct SystemParams {
  double G = 0.0;
  double p = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
  double omega_m = 0.0;
  double omega_cav = 0.0;
  double N_c = 0.0;
  double N_m = 0.0;

  /// kappa < omega_m / 10 and G > kappa. Recorded, never enforced.
  bool resolved_sideband() const { return kappa < omega_m / 10.0 && G > kappa; }

  void validate() const {
    auto finite_nonneg = [](double v, const char* name) {
      if (!std::isfinite(v) || v < 0.0) throw ValidationError(name, "must be finite and >= 0");
    };
    if (!std::isfinite(G) || !(G > 0.0)) throw ValidationError("G", "must be finite and > 0");
    finite_nonneg(p, "p");
    finite_nonneg(kappa, "kappa");
    finite_nonneg(gamma, "gamma");
    finite_nonneg(omega_m, "omega_m");
    finite_nonneg(omega_cav, "omega_cav");
    finite_nonneg(N_c, "N_c");
    finite_nonneg(N_m, "N_m");
  }

  /// kappa * (2 N_c + 1)
  double kappa_bar() const { return kappa * (2.0 * N_c + 1.0); }
  /// gamma * (2 N_m + 1)
  double gamma_bar() const { return gamma * (2.0 * N_m + 1.0); }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Which frequency sets the mechanical bath occupation N_m.
///   cavity:     N_m = N_c = n(omega_cav, T), a single bath occupation for every mode.
///   mechanical: N_m = n(omega_m, T).
/// The figure presets use `cavity`.
enum class MechanicalBath { cavity, mechanical };

/// Derives N_c and N_m from a bath temperature, keeping the other fields.
inline SystemParams with_bath_temperature(SystemParams p, double T_bath, MechanicalBath bath = MechanicalBath::cavity) {
  if (!(T_bath >= 0.0)) throw ValidationError("T_bath", "must be >= 0");
  p.N_c = thermal_occupation(p.omega_cav, T_bath);
  p.N_m = bath == MechanicalBath::cavity ? p.N_c : thermal_occupation(p.omega_m, T_bath);
  return p;
}

namespace figure {
inline constexpr double gamma = constants::two_pi * 1.0e3;
inline constexpr double kappa = 50.0 * gamma;
inline constexpr double omega_m = constants::two_pi * 10.0e6;
inline constexpr double omega_cav = constants::two_pi * 10.0e9;
inline constexpr double T_bath = 1.5;
}  // namespace figure

/// gamma = 2pi x 1 kHz, kappa = 50 gamma, omega_m = 2pi x 10 MHz,
/// omega_cav = 2pi x 10 GHz, occupations from T_bath. G and p are left at
/// G = kappa, p = 0 for the caller to overwrite.
inline SystemParams params_from_figure_defaults(double T_bath, MechanicalBath bath = MechanicalBath::cavity) {
  SystemParams p;
  p.gamma = figure::gamma;
  p.kappa = figure::kappa;
  p.omega_m = figure::omega_m;
  p.omega_cav = figure::omega_cav;
  p.G = p.kappa;
  p.p = 0.0;
  return with_bath_temperature(p, T_bath, bath);
}

}  // namespace gstx::model
