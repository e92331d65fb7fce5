#include "ricker/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ricker/errors.hpp"

namespace ricker {
namespace {

bool matches(double c2, double sigma1, double c1, double tol) {
  return std::abs(c2 - sigma1 * c1) <= tol * std::max(1.0, std::abs(c2));
}

void require_admissible(const PeriodicSeq& seq, const char* name) {
  for (double v : seq.values()) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError(std::string("parameter ") + name +
                        " must be finite and non-negative, got " + std::to_string(v));
    }
  }
}

}  // namespace

std::size_t RickerSystem::period() const {
  std::size_t p = 1;
  for (const auto* s : {&alpha, &beta, &sigma1, &sigma2, &c1, &c2}) p = lcm_period(p, s->period());
  return p;
}

void RickerSystem::validate() const {
  require_admissible(alpha, "alpha");
  require_admissible(beta, "beta");
  require_admissible(sigma1, "sigma1");
  require_admissible(sigma2, "sigma2");
  require_admissible(c1, "c1");
  require_admissible(c2, "c2");
  if (beta.max() <= 0.0) throw DomainError("beta must be positive on at least one slot");
  if (sigma1.max() <= 0.0) throw DomainError("sigma1 must be positive on at least one slot");
}

FoldedParams fold_second_order(const RickerSystem& sys) {
  const std::size_t p =
      lcm_period(lcm_period(sys.alpha.period(), sys.beta.period()), sys.sigma1.period());
  auto a = PeriodicSeq::tabulate(p, [&](std::int64_t n) {
    const double prod = sys.beta(n) * sys.sigma1(n + 1);
    if (!(prod > 0.0)) {
      throw DomainError("fold needs beta_n * sigma1_{n+1} > 0; fails at slot " +
                        std::to_string(n));
    }
    return sys.alpha(n) + std::log(prod);
  });
  return FoldedParams{std::move(a), sys.c1, sys.c2, sys.sigma1};
}

bool check_matching(const RickerSystem& sys, double tol) {
  const std::size_t p = lcm_period(lcm_period(sys.c1.period(), sys.c2.period()),
                                   sys.sigma1.period());
  for (std::size_t k = 0; k < p; ++k) {
    const auto n = static_cast<std::int64_t>(k);
    if (!matches(sys.c2(n), sys.sigma1(n), sys.c1(n), tol)) return false;
  }
  return true;
}

bool check_matching(const FoldedParams& fp, double tol) {
  RickerSystem view;
  view.c1 = fp.c1;
  view.c2 = fp.c2;
  view.sigma1 = fp.sigma1;
  return check_matching(view, tol);
}

ReducedParams reduce(const FoldedParams& params, double tol) {
  if (params.c1.min() <= 0.0) throw DomainError("reduction needs c1_n > 0 on every slot");
  if (!check_matching(params, tol)) {
    throw DomainError("matching condition c2_n = sigma1_n c1_n does not hold");
  }
  const std::size_t p = lcm_period(params.a.period(), params.c1.period());
  auto d = PeriodicSeq::tabulate(p, [&](std::int64_t n) {
    const double ahead = params.c1(n + 1);
    const double behind = params.c1(n - 1);
    // Equal neighbours (constant or period-2 c1) must give d_n == a_n exactly.
    if (ahead == behind) return params.a(n);
    return params.a(n) + std::log(ahead / behind);
  });
  return ReducedParams{std::move(d)};
}

}  // namespace ricker
