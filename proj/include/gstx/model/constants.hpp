#pragma once

#include <numbers>

namespace gstx::constants {

// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_B = 1.380649e-23;      // J / K (exact)

inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace gstx::constants
