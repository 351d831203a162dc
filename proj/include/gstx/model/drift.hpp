#pragma once

#include <cstddef>

#include "gstx/model/params.hpp"
#include "gstx/numkit/matrix.hpp"

namespace gstx::model {

/// Quadrature layout of the eight-dimensional phase space.
namespace quad {
inline constexpr std::size_t x_cI = 0;
inline constexpr std::size_t p_cI = 1;
inline constexpr std::size_t x_cII = 2;
inline constexpr std::size_t p_cII = 3;
inline constexpr std::size_t x_m1 = 4;
inline constexpr std::size_t p_m1 = 5;
inline constexpr std::size_t x_m2 = 6;
inline constexpr std::size_t p_m2 = 7;

/// Mode index (for extract_mode) of each oscillator.
inline constexpr std::size_t cavity_I = 0;
inline constexpr std::size_t cavity_II = 1;
inline constexpr std::size_t spring_1 = 2;
inline constexpr std::size_t spring_2 = 3;
}  // namespace quad

using Matrix8 = numkit::Matrix<8>;
using Vector8 = numkit::Vector<8>;

struct DriftNoisePair {
  Matrix8 Q;
  Matrix8 N;
};

/// Drift Q and diffusion N of the moment equations, in the `quad` ordering.
/// Quadratures x = (b + b^dag)/2, p = -i(b - b^dag)/2 for every mode.
inline DriftNoisePair build_drift_noise(const SystemParams& s) {
  using namespace quad;
  DriftNoisePair dn;
  Matrix8& q = dn.Q;
  for (std::size_t i = 0; i < 4; ++i) q(i, i) = -s.kappa / 2.0;
  for (std::size_t i = 4; i < 8; ++i) q(i, i) = -s.gamma / 2.0;

  const double g = s.G;
  const double pg = s.p * s.G;
  // cavity I <-> spring 1 and spring 2
  q(x_cI, p_m1) = g;
  q(x_cI, p_m2) = pg;
  q(p_cI, x_m1) = -g;
  q(p_cI, x_m2) = -pg;
  // cavity II <-> spring 1
  q(x_cII, p_m1) = g;
  q(p_cII, x_m1) = -g;
  // spring 1 <- both cavities
  q(x_m1, p_cI) = g;
  q(x_m1, p_cII) = g;
  q(p_m1, x_cI) = -g;
  q(p_m1, x_cII) = -g;
  // spring 2 <- cavity I
  q(x_m2, p_cI) = pg;
  q(p_m2, x_cI) = -pg;

  const double kb = s.kappa_bar() / 4.0;
  const double gb = s.gamma_bar() / 4.0;
  for (std::size_t i = 0; i < 4; ++i) dn.N(i, i) = kb;
  for (std::size_t i = 4; i < 8; ++i) dn.N(i, i) = gb;
  return dn;
}

}  // namespace gstx::model
