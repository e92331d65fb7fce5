#pragma once

#include <cstddef>
#include <filesystem>
#include <string_view>

#include "ricker/periodic.hpp"

namespace ricker {

inline constexpr double kDefaultMatchingTol = 1e-12;

/// Parameters of the planar stage-structured Ricker system
///
///   x_{n+1} = sigma1_n y_n + sigma2_n x_n
///   y_{n+1} = beta_n x_n exp(alpha_n - c1_n x_n - c2_n y_n)
///
/// x is the stage-1 density, y the stage-2 density. All rates are
/// dimensionless and indexed from n = 0.
struct RickerSystem {
  PeriodicSeq alpha{0.0};
  PeriodicSeq beta{1.0};
  PeriodicSeq sigma1{1.0};
  PeriodicSeq sigma2{0.0};
  PeriodicSeq c1{1.0};
  PeriodicSeq c2{0.0};

  /// lcm of the six parameter periods.
  [[nodiscard]] std::size_t period() const;

  /// Throws DomainError unless every value is finite and non-negative and
  /// beta, sigma1 are positive on at least one slot.
  void validate() const;
};

/// Coefficients of the second-order fold
///   x_{n+1} = x_{n-1} exp(a_n - c1_n x_{n-1} - (c2_n / sigma1_n) x_n),
/// with a_n = alpha_n + ln(beta_n sigma1_{n+1}).
struct FoldedParams {
  PeriodicSeq a;
  PeriodicSeq c1;
  PeriodicSeq c2;
  PeriodicSeq sigma1;
};

/// Exponents of the reduced scalar equation r_{n+1} = r_{n-1} exp(d_n - r_{n-1} - r_n).
struct ReducedParams {
  PeriodicSeq d;
};

/// Throws DomainError when beta_n sigma1_{n+1} is not positive on some slot.
[[nodiscard]] FoldedParams fold_second_order(const RickerSystem& sys);

/// True iff |c2_n - sigma1_n c1_n| <= tol max(1, |c2_n|) on every slot.
[[nodiscard]] bool check_matching(const RickerSystem& sys, double tol = kDefaultMatchingTol);
[[nodiscard]] bool check_matching(const FoldedParams& fp, double tol = kDefaultMatchingTol);

/// d_n = a_n + ln(c1_{n+1} / c1_{n-1}) over one combined period.
/// Throws DomainError when c1 is not positive or the matching condition fails.
[[nodiscard]] ReducedParams reduce(const FoldedParams& params, double tol = kDefaultMatchingTol);

/// Parameter files: a JSON object with keys alpha, beta, sigma1, sigma2, c1, c2,
/// each a number (period 1) or a non-empty array of numbers. All six keys are
/// required; unknown keys are rejected. The result is validated.
[[nodiscard]] RickerSystem parse_system(std::string_view json_text);
[[nodiscard]] RickerSystem load_system(const std::filesystem::path& path);

}  // namespace ricker
