#pragma once

// Closed-form integrals of exponentially damped trigonometric products over
// [0, t0]. Small-argument regimes go through Taylor series in the frequency so
// the result keeps full relative precision where the antiderivative cancels.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace gstx::numkit {

class DegenerateFrequency : public std::domain_error {
 public:
  DegenerateFrequency() : std::domain_error("quad_exp_A_squared: frequency h must be > 0") {}
};

namespace detail {

inline constexpr std::size_t kSeriesOrder = 48;

/// mu[n] = int_0^1 s^n e^{x s} ds for n = 0..kSeriesOrder, x <= 0.
inline std::array<double, kSeriesOrder + 1> unit_exp_moments(double x) {
  std::array<double, kSeriesOrder + 1> mu{};
  if (x == 0.0) {
    for (std::size_t n = 0; n <= kSeriesOrder; ++n) mu[n] = 1.0 / static_cast<double>(n + 1);
    return mu;
  }
  const double ex = std::exp(x);
  const double ax = -x;
  if (ax > static_cast<double>(kSeriesOrder)) {
    // Upward recurrence contracts when n < |x|.
    mu[0] = -std::expm1(x) / ax;
    for (std::size_t n = 1; n <= kSeriesOrder; ++n) mu[n] = (static_cast<double>(n) * mu[n - 1] - ex) / ax;
    return mu;
  }
  // Downward recurrence mu[n-1] = (e^x + |x| mu[n]) / n contracts for n > |x|.
  constexpr std::size_t start = kSeriesOrder + 160;
  double m = ex / static_cast<double>(start + 1);
  for (std::size_t n = start; n > kSeriesOrder; --n) m = (ex + ax * m) / static_cast<double>(n);
  mu[kSeriesOrder] = m;
  for (std::size_t n = kSeriesOrder; n > 0; --n) mu[n - 1] = (ex + ax * mu[n]) / static_cast<double>(n);
  return mu;
}

/// int_0^t0 e^{-a t} dt
inline double exp_integral(double a, double t0) { return a == 0.0 ? t0 : -std::expm1(-a * t0) / a; }

/// int_0^t0 e^{-a t} (1 - cos(b t)) dt and int_0^t0 e^{-a t} sin(b t) dt.
struct DampedTrig {
  double one_minus_cos;
  double sin;
};

inline DampedTrig damped_trig(double a, double b, double t0) {
  const double beta = b * t0;
  if (beta <= 1.0) {
    const auto mu = unit_exp_moments(-a * t0);
    double omc = 0.0;
    double sn = 0.0;
    double term = 1.0;  // beta^k / k!
    for (std::size_t k = 1; k <= kSeriesOrder; ++k) {
      term *= beta / static_cast<double>(k);
      if (term == 0.0) break;
      if (k % 2 == 0) {
        const double sign = (k / 2) % 2 == 1 ? 1.0 : -1.0;
        omc += sign * mu[k] * term;
      } else {
        const double sign = ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        sn += sign * mu[k] * term;
      }
    }
    return {t0 * omc, t0 * sn};
  }
  const double e = std::exp(-a * t0);
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  const double den = a * a + b * b;
  const double cos_int = (a - e * (a * c - b * s)) / den;
  const double sin_int = (b - e * (a * s + b * c)) / den;
  return {exp_integral(a, t0) - cos_int, sin_int};
}

}  // namespace detail

/// int_0^t0 e^{-a t} sin^2(h t / 4) dt. Zero when h = 0.
inline double quad_exp_trig(double a, double h, double t0) {
  if (!(a >= 0.0) || !(t0 > 0.0) || !(h >= 0.0)) throw std::invalid_argument("quad_exp_trig: requires a >= 0, h >= 0, t0 > 0");
  if (h == 0.0) return 0.0;
  return 0.5 * detail::damped_trig(a, 0.5 * h, t0).one_minus_cos;
}

/// int_0^t0 e^{-a t} (cos(h t/4) - (c/h) sin(h t/4))^2 dt.
inline double quad_exp_A_squared(double a, double h, double c, double t0) {
  if (!(a >= 0.0) || !(t0 > 0.0) || !(h >= 0.0)) throw std::invalid_argument("quad_exp_A_squared: requires a >= 0, h > 0, t0 > 0");
  if (h == 0.0) throw DegenerateFrequency();
  const auto tr = detail::damped_trig(a, 0.5 * h, t0);
  const double k = c / h;
  const double sin_sq = 0.5 * tr.one_minus_cos;
  const double cos_sq = detail::exp_integral(a, t0) - sin_sq;
  // 2 sin(u) cos(u) = sin(2u), 2u = h t / 2
  return cos_sq - k * tr.sin + k * k * sin_sq;
}

/// h -> 0 limit of quad_exp_A_squared: int_0^t0 e^{-a t} (1 - c t / 4)^2 dt.
inline double quad_exp_A_squared_limit(double a, double c, double t0) {
  if (!(a >= 0.0) || !(t0 > 0.0)) throw std::invalid_argument("quad_exp_A_squared_limit: requires a >= 0, t0 > 0");
  const auto mu = detail::unit_exp_moments(-a * t0);
  const double m0 = t0 * mu[0];
  const double m1 = t0 * t0 * mu[1];
  const double m2 = t0 * t0 * t0 * mu[2];
  return m0 - 0.5 * c * m1 + (c * c / 16.0) * m2;
}

}  // namespace gstx::numkit
