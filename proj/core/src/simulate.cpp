#include "ricker/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ricker {
namespace {

void require_state(double v, const char* what, std::int64_t n) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError(std::string(what) + " must be finite and non-negative at index " +
                      std::to_string(n));
  }
}

// r_{n+1} = r_{n-1} exp(exponent), with the zero branch short-circuited.
double second_order_update(double prev, double exponent, std::int64_t n, double cap) {
  if (prev == 0.0) return 0.0;
  return prev * checked_exp(exponent, n, cap);
}

}  // namespace

Rates rates_at(const RickerSystem& sys, std::int64_t n) {
  return Rates{sys.alpha(n), sys.beta(n), sys.sigma1(n), sys.sigma2(n), sys.c1(n), sys.c2(n)};
}

PlanarState step_planar(PlanarState s, const Rates& r, std::int64_t n, double cap) {
  require_state(s.x, "x", n);
  require_state(s.y, "y", n);
  PlanarState next;
  next.x = r.sigma1 * s.y + r.sigma2 * s.x;
  if (s.x == 0.0 || r.beta == 0.0) {
    next.y = 0.0;
  } else {
    next.y = r.beta * s.x * checked_exp(r.alpha - r.c1 * s.x - r.c2 * s.y, n, cap);
  }
  return next;
}

PlanarState step_planar(PlanarState s, const RickerSystem& sys, std::int64_t n, double cap) {
  return step_planar(s, rates_at(sys, n), n, cap);
}

PlanarOrbit iterate_planar(double x0, double y0, const RickerSystem& sys, std::size_t n_steps,
                           double cap) {
  return iterate_planar(
      x0, y0, [&sys](std::int64_t n) { return rates_at(sys, n); }, n_steps, cap);
}

PlanarOrbit iterate_planar(double x0, double y0, const RateGenerator& gen, std::size_t n_steps,
                           double cap) {
  require_state(x0, "x0", 0);
  require_state(y0, "y0", 0);
  PlanarOrbit orbit;
  orbit.states.reserve(n_steps + 1);
  orbit.states.push_back({x0, y0});
  for (std::size_t k = 0; k < n_steps; ++k) {
    const auto n = static_cast<std::int64_t>(k);
    orbit.states.push_back(step_planar(orbit.states.back(), gen(n), n, cap));
  }
  return orbit;
}

ScalarOrbit iterate_second_order(double x_m1, double x_0, const FoldedParams& fp,
                                 std::size_t n_steps, double cap) {
  require_state(x_m1, "x_{-1}", -1);
  require_state(x_0, "x_0", 0);
  ScalarOrbit orbit;
  orbit.start_index = -1;
  orbit.states.reserve(n_steps + 2);
  orbit.states.push_back(x_m1);
  orbit.states.push_back(x_0);
  for (std::size_t k = 0; k < n_steps; ++k) {
    const auto n = static_cast<std::int64_t>(k);
    const double sigma1 = fp.sigma1(n);
    if (sigma1 == 0.0) {
      throw DomainError("second-order fold needs sigma1_n > 0; zero at index " +
                        std::to_string(n));
    }
    const double prev = orbit.states[k];
    const double cur = orbit.states[k + 1];
    const double exponent = fp.a(n) - fp.c1(n) * prev - (fp.c2(n) / sigma1) * cur;
    orbit.states.push_back(second_order_update(prev, exponent, n + 1, cap));
  }
  return orbit;
}

ScalarOrbit iterate_reduced(double r_m1, double r_0, const ReducedParams& rp,
                            std::size_t n_steps, double cap) {
  require_state(r_m1, "r_{-1}", -1);
  require_state(r_0, "r_0", 0);
  ScalarOrbit orbit;
  orbit.start_index = -1;
  orbit.states.reserve(n_steps + 2);
  orbit.states.push_back(r_m1);
  orbit.states.push_back(r_0);
  for (std::size_t k = 0; k < n_steps; ++k) {
    const auto n = static_cast<std::int64_t>(k);
    const double prev = orbit.states[k];
    const double cur = orbit.states[k + 1];
    orbit.states.push_back(second_order_update(prev, rp.d(n) - prev - cur, n + 1, cap));
  }
  return orbit;
}

ScalarOrbit iterate_scaled(double a, double b, double r_m1, double r_0, std::size_t n_steps,
                           double cap) {
  require_state(r_m1, "r_{-1}", -1);
  require_state(r_0, "r_0", 0);
  ScalarOrbit orbit;
  orbit.start_index = -1;
  orbit.states.reserve(n_steps + 2);
  orbit.states.push_back(r_m1);
  orbit.states.push_back(r_0);
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double prev = orbit.states[k];
    const double cur = orbit.states[k + 1];
    orbit.states.push_back(
        second_order_update(prev, a - prev - b * cur, static_cast<std::int64_t>(k) + 1, cap));
  }
  return orbit;
}

double linear_comparison_bound(double alpha, double beta, double x0, double eps) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("comparison bound needs 0 < beta < 1");
  if (!(alpha > 0.0)) throw DomainError("comparison bound needs alpha > 0");
  if (!(eps > 0.0)) throw DomainError("comparison bound needs eps > 0");
  if (!(x0 >= 0.0)) throw DomainError("comparison bound needs x0 >= 0");
  return alpha / (1.0 - beta) + eps;
}

std::size_t comparison_settling_index(double alpha, double beta, double x0, double eps) {
  const double bound = linear_comparison_bound(alpha, beta, x0, eps);
  // u_n approaches alpha / (1 - beta) geometrically, so the walk terminates.
  double u = x0;
  std::size_t n = 0;
  while (u > bound) {
    u = alpha + beta * u;
    ++n;
  }
  return n;
}

namespace {

BoundReport bound_from_suprema(double sigma_bar, double m1, double m2, double m_ratio,
                               bool beta_dominated, bool windowed) {
  BoundReport rep;
  rep.sigma_bar = sigma_bar;
  rep.m1 = m1;
  rep.m2 = m2;
  rep.windowed = windowed;
  if (!(m_ratio > 0.0)) {
    rep.reason = "m_ratio must be positive";
    return rep;
  }
  if (!(sigma_bar < 1.0)) {
    rep.reason = "sup of sigma2 is not below 1";
    return rep;
  }
  if (!beta_dominated) {
    rep.reason = "beta_n <= m_ratio * c1_n fails on some slot";
    return rep;
  }
  rep.m0 = m_ratio * std::exp(m2 - 1.0);
  rep.bound = (rep.m0 * rep.m1 + sigma_bar) / (1.0 - sigma_bar);
  rep.applicable = true;
  return rep;
}

}  // namespace

BoundReport uniform_bound(const RickerSystem& sys, double m_ratio) {
  const std::size_t p = lcm_period(sys.beta.period(), sys.c1.period());
  bool dominated = true;
  for (std::size_t k = 0; k < p; ++k) {
    const auto n = static_cast<std::int64_t>(k);
    if (sys.beta(n) > m_ratio * sys.c1(n)) dominated = false;
  }
  return bound_from_suprema(sys.sigma2.max(), sys.sigma1.max(), sys.alpha.max(), m_ratio,
                            dominated, false);
}

BoundReport uniform_bound(const RateGenerator& gen, double m_ratio, std::int64_t window_start,
                          std::size_t window_len) {
  if (window_len == 0) throw DomainError("window must contain at least one index");
  double sigma_bar = 0.0;
  double m1 = 0.0;
  double m2 = -std::numeric_limits<double>::infinity();
  bool dominated = true;
  for (std::size_t k = 0; k < window_len; ++k) {
    const Rates r = gen(window_start + static_cast<std::int64_t>(k));
    sigma_bar = std::max(sigma_bar, r.sigma2);
    m1 = std::max(m1, r.sigma1);
    m2 = std::max(m2, r.alpha);
    if (r.beta > m_ratio * r.c1) dominated = false;
  }
  return bound_from_suprema(sigma_bar, m1, m2, m_ratio, dominated, true);
}

C0Report c0_report(const RickerSystem& sys) {
  const std::size_t p = lcm_period(
      lcm_period(lcm_period(sys.sigma1.period(), sys.beta.period()), sys.alpha.period()),
      sys.sigma2.period());
  C0Report rep;
  rep.limsup = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < p; ++k) {
    const auto n = static_cast<std::int64_t>(k);
    rep.limsup = std::max(rep.limsup,
                          sys.sigma1(n) * sys.beta(n) * std::exp(sys.alpha(n)) + sys.sigma2(n));
  }
  rep.holds = rep.limsup < 1.0;
  return rep;
}

C0Report c0_report(const RateGenerator& gen, std::int64_t window_start, std::size_t window_len) {
  if (window_len == 0) throw DomainError("window must contain at least one index");
  C0Report rep;
  rep.windowed = true;
  rep.limsup = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < window_len; ++k) {
    const Rates r = gen(window_start + static_cast<std::int64_t>(k));
    rep.limsup = std::max(rep.limsup, r.sigma1 * r.beta * std::exp(r.alpha) + r.sigma2);
  }
  rep.holds = rep.limsup < 1.0;
  return rep;
}

bool check_c0(const RickerSystem& sys) { return c0_report(sys).holds; }

}  // namespace ricker
