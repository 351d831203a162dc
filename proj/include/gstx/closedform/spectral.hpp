#pragma once

#include <cmath>
#include <numbers>

#include "gstx/model/params.hpp"

namespace gstx::closedform {

/// Normal-mode constants of the lossless four-mode system.
///   nu+- = 1 +- p^2 / sqrt(4 + p^4)
///   h+-  = sqrt(8 G^2 (2 + p^2 +- sqrt(4 + p^4)))
///   t0   = 4 pi / h+
/// h+/4 and h-/4 are the normal-mode angular frequencies.
struct SpectralConstants {
  double root;  ///< sqrt(4 + p^4)
  double nu_plus;
  double nu_minus;
  double h_plus;
  double h_minus;
  double t0;
};

inline SpectralConstants spectral_constants(double G, double p) {
  if (!(G > 0.0)) throw model::ValidationError("G", "must be > 0");
  if (!(p >= 0.0)) throw model::ValidationError("p", "must be >= 0");
  SpectralConstants sc;
  const double p2 = p * p;
  const double root = std::sqrt(4.0 + p2 * p2);
  sc.root = root;
  // 1 - p^2/root without cancellation at large p; nu+ taken as 2 - nu- so the
  // pair sums to 2 in floating point.
  sc.nu_minus = 4.0 / (root * (root + p2));
  sc.nu_plus = 2.0 - sc.nu_minus;
  sc.h_plus = std::sqrt(8.0 * G * G * (2.0 + p2 + root));
  // 2 + p^2 - root = p^2 (2 + root - p^2) / (2 + root); vanishes only at p = 0.
  const double gap = p2 * (2.0 + 4.0 / (root + p2)) / (2.0 + root);
  sc.h_minus = std::sqrt(8.0 * G * G * gap);
  sc.t0 = 4.0 * std::numbers::pi / sc.h_plus;
  return sc;
}

/// sin(h t / 4) / h, continued to t / 4 at h = 0.
inline double sin_over(double h, double t) { return h == 0.0 ? t / 4.0 : std::sin(h * t / 4.0) / h; }

}  // namespace gstx::closedform
