#pragma once

#include <cmath>

namespace verigen {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240;
inline constexpr double kSqrt2 = 1.41421356237309504880168872420970;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;

inline double std_normal_pdf(double z) {
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

// erfc-based so the lower tail keeps full relative precision
inline double std_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / kSqrt2);
}

}  // namespace verigen
