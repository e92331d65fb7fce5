#include "ricker/periodic.hpp"

#include <algorithm>
#include <numeric>

#include "ricker/errors.hpp"

namespace ricker {

PeriodicSeq::PeriodicSeq(double constant) : values_{constant} {}

PeriodicSeq::PeriodicSeq(std::initializer_list<double> values)
    : PeriodicSeq(std::vector<double>(values)) {}

PeriodicSeq::PeriodicSeq(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("periodic sequence needs at least one value");
}

bool PeriodicSeq::is_constant() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [&](double v) { return v == values_.front(); });
}

double PeriodicSeq::max() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

double PeriodicSeq::min() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

double PeriodicSeq::mean() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

std::size_t lcm_period(std::size_t p1, std::size_t p2) {
  if (p1 == 0 || p2 == 0) throw DomainError("periods must be positive");
  return std::lcm(p1, p2);
}

}  // namespace ricker
