#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "ricker/errors.hpp"

namespace ricker {

/// Largest exponent handed to exp(); ln(DBL_MAX) is about 709.78.
inline constexpr double kExponentCap = 700.0;

/// exp(exponent), or OverflowError when the exponent exceeds `cap` or is NaN.
inline double checked_exp(double exponent, std::int64_t index, double cap = kExponentCap) {
  if (!(exponent <= cap)) {
    throw OverflowError("exponent " + std::to_string(exponent) + " exceeds cap " +
                            std::to_string(cap),
                        index);
  }
  return std::exp(exponent);
}

/// |a - b| scaled by max(1, |a|, |b|).
inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// |a - b| scaled by max(|a|, |b|); zero when both are zero.
inline double strict_rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace ricker
