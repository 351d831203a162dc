#pragma once

// Heisenberg-picture propagator of the lossless system (rotating frame).

#include <array>
#include <complex>
#include <cstddef>

#include "gstx/closedform/spectral.hpp"
#include "gstx/model/drift.hpp"

namespace gstx::closedform {

/// Mode order of the amplitude transfer matrix.
namespace amp {
inline constexpr std::size_t d1 = 0;
inline constexpr std::size_t a1 = 1;
inline constexpr std::size_t d2 = 2;
inline constexpr std::size_t a2 = 3;
}  // namespace amp

/// T[i][j] is the coefficient of mode j at time 0 in mode i at time t.
using ModeTransfer = std::array<std::array<std::complex<double>, 4>, 4>;

/// Coefficients of b(t) = T b(0) for b = (d1, a1, d2, a2).
///
/// The cavity rows are the closed-form Heisenberg solutions; the generator is
/// real symmetric, so T is symmetric and the spring-to-cavity entries fix the
/// cavity-to-spring ones. The spring-spring block is cos(K' t) with
/// K'^2 = B^T B, built from the same two normal frequencies.
inline ModeTransfer lossless_output_operators(const SpectralConstants& sc, double p, double G, double t) {
  using namespace amp;
  using cd = std::complex<double>;
  const double s = sc.root;
  const double cp = std::cos(sc.h_plus * t / 4.0);
  const double cm = std::cos(sc.h_minus * t / 4.0);
  const double sp = std::sin(sc.h_plus * t / 4.0);
  const double sm = std::sin(sc.h_minus * t / 4.0);
  const double Sp = sin_over(sc.h_plus, t);
  const double Sm = sin_over(sc.h_minus, t);
  const double np = sc.nu_plus;
  const double nm = sc.nu_minus;
  const cd i{0.0, 1.0};

  ModeTransfer T{};
  T[d2][d2] = (nm * cp + np * cm) / 2.0;
  T[d2][a2] = i * (4.0 * p * G / s) * (Sm - Sp);
  T[d2][d1] = (cp - cm) / s;
  T[d2][a1] = -i * (2.0 * G) * ((nm + 2.0 / s) * Sp + (np - 2.0 / s) * Sm);

  T[d1][d1] = (nm * cm + np * cp) / 2.0;
  T[d1][a1] = i / (4.0 * G * s) * (sc.h_minus * sm - sc.h_plus * sp);
  T[d1][d2] = (cp - cm) / s;
  T[d1][a2] = -i * (2.0 * G * p) * (nm * Sm + np * Sp);

  for (std::size_t c : {d1, d2})
    for (std::size_t m : {a1, a2}) T[m][c] = T[c][m];

  // Spectral projector of B^T B onto the h+ branch:
  //   [[1/2 + (2 - p^2)/(2s), p/s], [p/s, 1/2 - (2 - p^2)/(2s)]]
  const double p2 = p * p;
  const double w11 = (2.0 + 4.0 / (s + p2)) / (2.0 * s);
  const double w22 = (p2 + p2 * p2 / (s + 2.0)) / (2.0 * s);  // (s - 2 + p^2) / (2s)
  T[a1][a1] = w11 * cp + (1.0 - w11) * cm;
  T[a2][a2] = w22 * cp + (1.0 - w22) * cm;
  T[a1][a2] = (p / s) * (cp - cm);
  T[a2][a1] = T[a1][a2];
  return T;
}

/// The real 8x8 map on quadratures induced by a mode transfer matrix, in the
/// model's quadrature ordering. b = x + i p, so c = u + i v acts as [[u, -v], [v, u]].
inline numkit::Matrix<8> quadrature_propagator(const ModeTransfer& T) {
  // amplitude index -> oscillator index in the quadrature layout
  constexpr std::array<std::size_t, 4> slot{model::quad::cavity_I, model::quad::spring_1, model::quad::cavity_II,
                                            model::quad::spring_2};
  numkit::Matrix<8> S;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double u = T[i][j].real();
      const double v = T[i][j].imag();
      const std::size_t r = 2 * slot[i];
      const std::size_t c = 2 * slot[j];
      S(r, c) = u;
      S(r, c + 1) = -v;
      S(r + 1, c) = v;
      S(r + 1, c + 1) = u;
    }
  return S;
}

}  // namespace gstx::closedform
