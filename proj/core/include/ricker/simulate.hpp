#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ricker/numeric.hpp"
#include "ricker/system.hpp"

namespace ricker {

/// Stage densities: x is stage 1 (juvenile), y is stage 2 (adult).
struct PlanarState {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PlanarState&, const PlanarState&) = default;
};

/// A time-ordered run; states[k] holds the value at time start_index + k.
template <class State>
struct Orbit {
  std::vector<State> states;
  std::int64_t start_index = 0;

  [[nodiscard]] std::size_t size() const noexcept { return states.size(); }
  [[nodiscard]] const State& at_time(std::int64_t n) const {
    return states.at(static_cast<std::size_t>(n - start_index));
  }
  [[nodiscard]] const State& back() const { return states.back(); }
};

using PlanarOrbit = Orbit<PlanarState>;
using ScalarOrbit = Orbit<double>;

/// Parameter values in force at one time step.
struct Rates {
  double alpha = 0.0;
  double beta = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

[[nodiscard]] Rates rates_at(const RickerSystem& sys, std::int64_t n);

/// Hook for parameter streams that are not periodic.
using RateGenerator = std::function<Rates(std::int64_t)>;

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

[[nodiscard]] PlanarState step_planar(PlanarState s, const Rates& r, std::int64_t n,
                                      double cap = kExponentCap);
[[nodiscard]] PlanarState step_planar(PlanarState s, const RickerSystem& sys, std::int64_t n,
                                      double cap = kExponentCap);

/// states[k + 1] = step_planar(states[k], sys, k); n_steps + 1 states.
[[nodiscard]] PlanarOrbit iterate_planar(double x0, double y0, const RickerSystem& sys,
                                         std::size_t n_steps, double cap = kExponentCap);
[[nodiscard]] PlanarOrbit iterate_planar(double x0, double y0, const RateGenerator& gen,
                                         std::size_t n_steps, double cap = kExponentCap);

/// Second-order fold from seeds (x_{-1}, x_0); returns x_{-1} .. x_{n_steps}.
/// With x_{-1} = x_0 and x_0 = x_1 of a planar run (sigma2 = 0) the two agree.
[[nodiscard]] ScalarOrbit iterate_second_order(double x_m1, double x_0, const FoldedParams& fp,
                                               std::size_t n_steps, double cap = kExponentCap);

/// r_{n+1} = r_{n-1} exp(d_n - r_{n-1} - r_n) from (r_{-1}, r_0); returns r_{-1} .. r_{n_steps}.
[[nodiscard]] ScalarOrbit iterate_reduced(double r_m1, double r_0, const ReducedParams& rp,
                                          std::size_t n_steps, double cap = kExponentCap);

/// Scaled autonomous fold r_{n+1} = r_{n-1} exp(a - r_{n-1} - b r_n); returns r_{-1} .. r_{n_steps}.
[[nodiscard]] ScalarOrbit iterate_scaled(double a, double b, double r_m1, double r_0,
                                         std::size_t n_steps, double cap = kExponentCap);

// ---------------------------------------------------------------------------
// Bounds and extinction
// ---------------------------------------------------------------------------

/// alpha / (1 - beta) + eps: the eventual cap for any x_{n+1} <= alpha + beta x_n.
[[nodiscard]] double linear_comparison_bound(double alpha, double beta, double x0, double eps);

/// First n at which the comparison orbit u_{n+1} = alpha + beta u_n, u_0 = x0,
/// is at or below linear_comparison_bound(alpha, beta, x0, eps).
[[nodiscard]] std::size_t comparison_settling_index(double alpha, double beta, double x0,
                                                    double eps);

struct BoundReport {
  double bound = 0.0;
  double sigma_bar = 0.0;  ///< sup of sigma2
  double m0 = 0.0;         ///< m_ratio * exp(m2 - 1), caps the stage-2 density
  double m1 = 0.0;         ///< sup of sigma1
  double m2 = 0.0;         ///< sup of alpha
  bool applicable = false;
  bool windowed = false;   ///< suprema taken over a finite window of a generator
  std::string reason;
};

/// Asymptotic cap (m0 m1 + sigma_bar) / (1 - sigma_bar) on x, when
/// sigma2 < 1 and beta_n <= m_ratio c1_n on every slot.
[[nodiscard]] BoundReport uniform_bound(const RickerSystem& sys, double m_ratio);
[[nodiscard]] BoundReport uniform_bound(const RateGenerator& gen, double m_ratio,
                                        std::int64_t window_start, std::size_t window_len);

/// max over one period of sigma1 beta e^alpha + sigma2 is below 1.
[[nodiscard]] bool check_c0(const RickerSystem& sys);

struct C0Report {
  double limsup = 0.0;
  bool holds = false;
  bool windowed = false;
};

[[nodiscard]] C0Report c0_report(const RickerSystem& sys);
/// Windowed estimate for non-periodic parameters; `windowed` is always set.
[[nodiscard]] C0Report c0_report(const RateGenerator& gen, std::int64_t window_start,
                                 std::size_t window_len);

}  // namespace ricker
