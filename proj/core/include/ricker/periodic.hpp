#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace ricker {

/// A real sequence defined by one cycle of values: eval(n) = values[n mod p].
///
/// Negative indices wrap as well, so eval(-1) is the last slot. The cycle is
/// not required to be minimal.
class PeriodicSeq {
 public:
  /// Constant sequence (period 1).
  PeriodicSeq(double constant = 0.0);  // NOLINT(google-explicit-constructor)
  PeriodicSeq(std::initializer_list<double> values);
  /// Throws DomainError when `values` is empty.
  explicit PeriodicSeq(std::vector<double> values);

  /// Builds a sequence of the given period from fn(0), ..., fn(period - 1).
  template <class Fn>
  static PeriodicSeq tabulate(std::size_t period, Fn&& fn) {
    std::vector<double> v(period);
    for (std::size_t k = 0; k < period; ++k) v[k] = fn(static_cast<std::int64_t>(k));
    return PeriodicSeq(std::move(v));
  }

  [[nodiscard]] double operator()(std::int64_t n) const noexcept {
    const auto p = static_cast<std::int64_t>(values_.size());
    auto k = n % p;
    if (k < 0) k += p;
    return values_[static_cast<std::size_t>(k)];
  }

  [[nodiscard]] std::size_t period() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] bool is_constant() const noexcept;

  [[nodiscard]] double max() const noexcept;
  [[nodiscard]] double min() const noexcept;
  [[nodiscard]] double mean() const noexcept;

  friend bool operator==(const PeriodicSeq&, const PeriodicSeq&) = default;

 private:
  std::vector<double> values_;
};

/// Least common multiple of two positive periods. Throws DomainError on zero.
[[nodiscard]] std::size_t lcm_period(std::size_t p1, std::size_t p2);

}  // namespace ricker
