#pragma once

#include <cassert>
#include <cmath>

#include "gstx/gaussian/state.hpp"

namespace gstx::gaussian {

struct FidelityTerms {
  double F;
  double n_h_bar;    ///< heating parameter 2 sqrt(det(Sa + Sb)) - 1
  double lambda_sq;  ///< d^T [sqrt(det(Sa + Sb)) (Sa + Sb)^-1] d
};

/// F = exp(-lambda^2 / (1 + n_h)) / (1 + n_h) between two single-mode states.
/// This is the pure-state form; for mixed inputs F(s, s) < 1.
inline FidelityTerms fidelity_terms(const SingleMode& a, const SingleMode& b) {
  const auto sum = a.cov + b.cov;
  const double det = numkit::det2(sum);
  assert(det > 0.0 && "fidelity: singular covariance sum");
  const double root = std::sqrt(det);
  const auto inv = numkit::inverse2(sum);
  const auto d = a.mean - b.mean;
  const double lambda_sq = root * numkit::dot(d, inv * d);
  const double n_h = 2.0 * root - 1.0;
  return {std::exp(-lambda_sq / (1.0 + n_h)) / (1.0 + n_h), n_h, lambda_sq};
}

inline double fidelity(const SingleMode& a, const SingleMode& b) { return fidelity_terms(a, b).F; }

}  // namespace gstx::gaussian
