#pragma once

// Fixed-step RK4 for the linear moment equations
//   dX/dt = Q X,   dS/dt = Q S + S Q^T + N.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "gstx/numkit/matrix.hpp"

namespace gstx::numkit {

class IntegrationDiverged : public std::runtime_error {
 public:
  explicit IntegrationDiverged(std::size_t step)
      : std::runtime_error("integration diverged: non-finite value at step " + std::to_string(step)),
        step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

template <std::size_t N>
struct Moments {
  Vector<N> mean;
  Matrix<N> cov;
};

namespace detail {

template <std::size_t N>
Matrix<N> lyapunov_rhs(const Matrix<N>& q, const Matrix<N>& qt, const Matrix<N>& noise, const Matrix<N>& s) {
  Matrix<N> r = q * s;
  r += s * qt;
  r += noise;
  return r;
}

}  // namespace detail

/// Integrates the moment equations over `steps` equal steps of size t_end/steps.
/// The covariance is re-symmetrized after every step. Throws IntegrationDiverged
/// naming the first step (1-based) that produced a non-finite entry.
template <std::size_t N>
Moments<N> integrate_linear_moments_steps(const Matrix<N>& q, const Matrix<N>& noise, const Vector<N>& x0,
                                          const Matrix<N>& s0, double t_end, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("integrate_linear_moments: step count must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("integrate_linear_moments: t_end must be >= 0");
  Moments<N> m{x0, s0};
  if (t_end == 0.0) return m;

  const double h = t_end / static_cast<double>(steps);
  const Matrix<N> qt = transpose(q);
  for (std::size_t n = 1; n <= steps; ++n) {
    const Vector<N> kx1 = q * m.mean;
    const Vector<N> kx2 = q * (m.mean + (0.5 * h) * kx1);
    const Vector<N> kx3 = q * (m.mean + (0.5 * h) * kx2);
    const Vector<N> kx4 = q * (m.mean + h * kx3);
    m.mean += (h / 6.0) * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4);

    const Matrix<N> ks1 = detail::lyapunov_rhs(q, qt, noise, m.cov);
    const Matrix<N> ks2 = detail::lyapunov_rhs(q, qt, noise, m.cov + (0.5 * h) * ks1);
    const Matrix<N> ks3 = detail::lyapunov_rhs(q, qt, noise, m.cov + (0.5 * h) * ks2);
    const Matrix<N> ks4 = detail::lyapunov_rhs(q, qt, noise, m.cov + h * ks3);
    m.cov += (h / 6.0) * (ks1 + 2.0 * ks2 + 2.0 * ks3 + ks4);
    m.cov = symmetrized(m.cov);

    if (!all_finite(m.mean) || !all_finite(m.cov)) throw IntegrationDiverged(n);
  }
  return m;
}

/// Step-size form: uses ceil(t_end/dt) equal steps, so the last step lands on t_end.
template <std::size_t N>
Moments<N> integrate_linear_moments(const Matrix<N>& q, const Matrix<N>& noise, const Vector<N>& x0,
                                    const Matrix<N>& s0, double t_end, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_linear_moments: dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("integrate_linear_moments: t_end must be >= 0");
  if (t_end == 0.0) return {x0, s0};
  const double ratio = t_end / dt;
  auto steps = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * ratio));
  if (steps == 0) steps = 1;
  return integrate_linear_moments_steps(q, noise, x0, s0, t_end, steps);
}

}  // namespace gstx::numkit
