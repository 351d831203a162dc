#pragma once

// Gaussian states in the convention x = (b + b^dag)/2, p = -i(b - b^dag)/2,
// where the vacuum covariance is I/4.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

#include "gstx/numkit/matrix.hpp"

namespace gstx::gaussian {

inline constexpr double kVacuumVariance = 0.25;
inline constexpr double kPhysicalityTolerance = 1e-9;
inline constexpr double kSymmetryTolerance = 1e-12;

template <std::size_t Modes>
struct GaussianState {
  static constexpr std::size_t dim = 2 * Modes;
  numkit::Vector<dim> mean;
  numkit::Matrix<dim> cov;

  static constexpr std::size_t mode_count() { return Modes; }

  static GaussianState vacuum() { return {numkit::Vector<dim>{}, kVacuumVariance * numkit::Matrix<dim>::identity()}; }

  friend bool operator==(const GaussianState&, const GaussianState&) = default;
};

using SingleMode = GaussianState<1>;

/// Block-diagonal symplectic form with [[0, 1], [-1, 0]] per mode.
template <std::size_t Modes>
numkit::Matrix<2 * Modes> symplectic_form() {
  numkit::Matrix<2 * Modes> w;
  for (std::size_t k = 0; k < Modes; ++k) {
    w(2 * k, 2 * k + 1) = 1.0;
    w(2 * k + 1, 2 * k) = -1.0;
  }
  return w;
}

/// Symplectic eigenvalues of a positive-definite covariance, ascending.
/// They are the square roots of the spectrum of L^T W^T S W L, S = L L^T,
/// which holds each eigenvalue twice.
template <std::size_t Modes>
std::array<double, Modes> symplectic_eigenvalues(const numkit::Matrix<2 * Modes>& cov) {
  std::array<double, Modes> nu{};
  if constexpr (Modes == 1) {
    const double d = numkit::det2(cov);
    if (!(d > 0.0) || !(cov(0, 0) > 0.0)) throw std::domain_error("symplectic_eigenvalues: covariance not positive definite");
    nu[0] = std::sqrt(d);
  } else {
    const auto l = numkit::cholesky(cov);
    const auto w = symplectic_form<Modes>();
    const auto k = numkit::transpose(l) * numkit::transpose(w) * cov * w * l;
    const auto ev = numkit::symmetric_eigenvalues(numkit::symmetrized(k));
    for (std::size_t i = 0; i < Modes; ++i) nu[i] = std::sqrt(std::max(0.0, 0.5 * (ev[2 * i] + ev[2 * i + 1])));
  }
  return nu;
}

/// Symmetric covariance whose smallest symplectic eigenvalue is >= 1/4 - tol.
template <std::size_t Modes>
bool is_physical(const GaussianState<Modes>& s, double tol = kPhysicalityTolerance) {
  if (!numkit::all_finite(s.mean) || !numkit::all_finite(s.cov)) return false;
  if (numkit::max_asymmetry(s.cov) > kSymmetryTolerance * std::max(1.0, std::abs(s.cov(0, 0)))) return false;
  try {
    const auto nu = symplectic_eigenvalues<Modes>(s.cov);
    return nu[0] >= kVacuumVariance - tol;
  } catch (const std::domain_error&) {
    return false;
  }
}

/// Squeezed coherent input D(alpha) S(r)|0>, alpha = alpha_mag e^{i phi}.
struct InputStateSpec {
  double r = 0.0;
  double alpha_mag = 0.0;
  double phi = 0.0;

  void validate() const {
    if (!std::isfinite(r)) throw std::invalid_argument("r: must be finite");
    if (!std::isfinite(alpha_mag) || alpha_mag < 0.0) throw std::invalid_argument("alpha: must be finite and >= 0");
    if (!std::isfinite(phi) || phi < 0.0 || phi >= 2.0 * std::numbers::pi) throw std::invalid_argument("phi: must lie in [0, 2pi)");
  }

  friend bool operator==(const InputStateSpec&, const InputStateSpec&) = default;
};

inline SingleMode prepare_squeezed_coherent(const InputStateSpec& spec) {
  spec.validate();
  SingleMode s;
  s.mean[0] = spec.alpha_mag * std::cos(spec.phi);
  s.mean[1] = spec.alpha_mag * std::sin(spec.phi);
  s.cov(0, 0) = kVacuumVariance * std::exp(-2.0 * spec.r);
  s.cov(1, 1) = kVacuumVariance * std::exp(2.0 * spec.r);
  return s;
}

/// Reduced state of one mode: the mean slice and the 2x2 diagonal block.
template <std::size_t Modes>
SingleMode extract_mode(const GaussianState<Modes>& s, std::size_t mode) {
  if (mode >= Modes) throw std::out_of_range("extract_mode: mode index out of range");
  SingleMode out;
  const std::size_t o = 2 * mode;
  out.mean[0] = s.mean[o];
  out.mean[1] = s.mean[o + 1];
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out.cov(i, j) = s.cov(o + i, o + j);
  return out;
}

/// Embeds single-mode states as a block-diagonal product state.
template <std::size_t Modes>
GaussianState<Modes> product_state(const std::array<SingleMode, Modes>& modes) {
  GaussianState<Modes> s;
  for (std::size_t k = 0; k < Modes; ++k) {
    s.mean[2 * k] = modes[k].mean[0];
    s.mean[2 * k + 1] = modes[k].mean[1];
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) s.cov(2 * k + i, 2 * k + j) = modes[k].cov(i, j);
  }
  return s;
}

/// Thermal state with mean occupation n: covariance (2n + 1)/4 I.
inline SingleMode thermal_state(double occupation) {
  return {numkit::Vector<2>{}, kVacuumVariance * (2.0 * occupation + 1.0) * numkit::Matrix<2>::identity()};
}

}  // namespace gstx::gaussian
