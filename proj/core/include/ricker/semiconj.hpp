#pragma once

// Semiconjugate factorization of the autonomous reduced equation
//
//   r_{n+1} = r_{n-1} exp(d - r_{n-1} - r_n)
//
// into t_{n+1} = e^d / t_n and r_{n+1} = t_{n+1} r_n e^{-r_n}. With
// t0 = r_0 / (r_{-1} e^{-r_{-1}}) and t1 = e^d / t0, the odd terms are iterates of
// f_{t0}(r) = r exp(d - r - t0 r e^{-r}) from r_{-1} and the even terms are iterates
// of f_{t1} from r_0; g_t(r) = t r e^{-r} carries one family onto the other.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ricker/numeric.hpp"
#include "ricker/simulate.hpp"

namespace ricker {

// ---------------------------------------------------------------------------
// Invariant and the map family
// ---------------------------------------------------------------------------

/// r_0 / (r_{-1} e^{-r_{-1}}). Throws DomainError unless both seeds are positive.
[[nodiscard]] double compute_t0(double r_m1, double r_0);

struct FactorState {
  double d = 0.0;
  double t0 = 0.0;
  double t1 = 0.0;  ///< e^d / t0

  [[nodiscard]] static FactorState from_seeds(double d, double r_m1, double r_0);
  [[nodiscard]] static FactorState from_t0(double d, double t0);

  /// t0 equals e^{d/2} within `rel_tol`: the seeds lie on the invariant curve
  /// r_0 = r_{-1} e^{d/2 - r_{-1}} and both curve maps coincide.
  [[nodiscard]] bool on_invariant_curve(double rel_tol = 1e-12) const;
};

/// f_t(r) = r exp(d - r - t r e^{-r}).
struct MapConfig {
  double d = 0.0;
  double t = 1.0;
};

[[nodiscard]] double f_map(double r, const MapConfig& cfg, double cap = kExponentCap);
/// e^{eta(r)} (1 - r)(1 - t r e^{-r}) with eta(r) = d - r - t r e^{-r}.
[[nodiscard]] double f_derivative(double r, const MapConfig& cfg);
[[nodiscard]] double g_map(double r, double t);
[[nodiscard]] double g_derivative(double r, double t);
/// eta(x) = d - x - gamma x e^{-x}; its positive zeros are the fixed points of f_gamma.
[[nodiscard]] double eta(double x, double d, double gamma);

/// Invariant-curve map g(r) = r e^{d/2 - r}.
[[nodiscard]] double curve_map(double r, double d);

// ---------------------------------------------------------------------------
// Factorization check
// ---------------------------------------------------------------------------

struct FactorizationReport {
  FactorState state;
  std::size_t steps = 0;
  double t_product_residual = 0.0;   ///< max rel |t_{n+1} t_n - e^d|
  double composition_residual = 0.0; ///< max rel |g1(g0(r)) - f0(r)|, |g0(g1(r)) - f1(r)| on orbit points
  double step_residual = 0.0;        ///< max rel |r_{n+1} - t_{n+1} r_n e^{-r_n}| along the direct orbit
  double odd_chain_residual = 0.0;   ///< odd terms vs iterates of f0 from r_{-1}
  double even_chain_residual = 0.0;  ///< even terms vs iterates of f1 from r_0
  double orbit_residual = 0.0;       ///< factorized pair iterated on its own vs direct iteration
  bool on_curve = false;
  double curve_residual = 0.0;       ///< max |r_{n+1} - g(r_n)|, only when on_curve
};

[[nodiscard]] FactorizationReport verify_factorization(double r_m1, double r_0, double d,
                                                       std::size_t n_steps);

// ---------------------------------------------------------------------------
// Cycles
// ---------------------------------------------------------------------------

struct CycleOptions {
  std::size_t transient = 2000;
  std::size_t max_period = 64;
  double tol = 1e-8;
};

struct CycleResult {
  std::vector<double> points;  ///< one period in iteration order, or the trailing window
  std::size_t period = 0;      ///< minimal period; 0 when not converged
  double multiplier = 0.0;     ///< product of f' over the cycle
  bool converged = false;
  double residual = 0.0;       ///< max |f(points[k]) - points[k+1 mod period]|

  [[nodiscard]] bool stable() const { return converged && std::abs(multiplier) < 1.0; }
};

/// Smallest q <= max_period with |x[i+q] - x[i]| <= tol max(1, |x[i]|) for every
/// i with i + q inside the window. Needs at least 2q samples to accept q.
[[nodiscard]] std::optional<std::size_t> minimal_period(std::span<const double> window,
                                                        std::size_t max_period, double tol);

/// Iterates f_t from `seed`, discards `transient` steps, then accepts the smallest
/// period that repeats over two full cycles. "Not converged" means no period up to
/// max_period was found, not that the orbit is chaotic.
[[nodiscard]] CycleResult detect_cycle(const MapConfig& cfg, double seed,
                                       const CycleOptions& opt = {});

/// Same detection for an arbitrary interval map; multiplier left at 0.
[[nodiscard]] CycleResult detect_cycle(const std::function<double(double)>& map, double seed,
                                       const CycleOptions& opt = {});

struct ShadowResult {
  CycleResult cycle;            ///< image under g_{t0}, checked against f_{t1}
  double t1 = 0.0;
  bool degenerate = false;      ///< some s_k within 1e-6 of 1, where g_{t0}' vanishes
  std::string warning;
  double multiplier_gap = 0.0;  ///< relative gap between the two multipliers
};

/// Carries a cycle of f_{t0} to the matching cycle of f_{t1} through g_{t0}.
/// A non-converged input is mapped point-wise and rescanned for periodicity.
[[nodiscard]] ShadowResult shadow_cycle(const CycleResult& cr, double d, double t0,
                                        const CycleOptions& opt = {});

struct LiftedCycle {
  std::vector<double> points;      ///< s_1, g0(s_1), ..., s_q, g0(s_q)
  std::size_t minimal_period = 0;  ///< 2q off the invariant curve
  double invariance_residual = 0.0;
};

/// Interleaves a q-cycle of f_{t0} with its g_{t0} image and checks it against the
/// second-order recurrence.
[[nodiscard]] LiftedCycle lift_cycle(const CycleResult& cr, double d, double t0);

/// Smallest sup-distance between `tail` and `cycle` over all phase alignments.
[[nodiscard]] double cycle_distance(std::span<const double> tail, std::span<const double> cycle);

// ---------------------------------------------------------------------------
// Fixed points and two-cycles
// ---------------------------------------------------------------------------

struct FixedPointReport {
  std::vector<double> roots;  ///< positive zeros of eta, ascending
  std::vector<double> residuals;
  bool uniqueness_proven = false;  ///< only for 0 < d <= 2
};

/// Unique positive fixed point of f_gamma for 0 < d <= 2 (bracketed on (1e-12, d)).
/// Throws DomainError outside that range; use fixed_points_dr there.
[[nodiscard]] double fixed_point_dr(double d, double gamma);

/// All positive fixed points found by a sign-change scan of eta on (0, d).
/// For d > 2 the result carries uniqueness_proven = false.
[[nodiscard]] FixedPointReport fixed_points_dr(double d, double gamma, std::size_t grid = 4000);

struct TwoCycle {
  double rho1 = 0.0;  ///< limit of the odd terms r_{2k-1}
  double rho2 = 0.0;  ///< limit of the even terms r_{2k}
  double M = 0.0;     ///< fixed point of f_{t0}
  double m = 0.0;     ///< fixed point of f_{t1}
  bool degenerate = false;  ///< seeds on the invariant curve: both limits d/2
  double sum_residual = 0.0;  ///< |rho1 + rho2 - d|
  bool converged = false;     ///< simulated odd/even terms reached (rho1, rho2)
  std::size_t steps = 0;      ///< steps of the simulation until convergence
  double odd_error = 0.0;
  double even_error = 0.0;
  bool pairing_as_expected = true;  ///< odd terms approached M (rather than m)
};

struct TwoCycleOptions {
  std::size_t max_steps = 100000;
  double tol = 1e-6;
};

/// Two-cycle {rho1, rho2} with rho1 + rho2 = d that every non-constant positive
/// solution approaches when 0 < d <= 2.
[[nodiscard]] TwoCycle two_cycle_rmsa(double d, double r_m1, double r_0,
                                      const TwoCycleOptions& opt = {});

// ---------------------------------------------------------------------------
// Period three, odd periods, embedding
// ---------------------------------------------------------------------------

struct Period3Witness {
  bool found = false;
  double lo = 0.0;  ///< bracket where map^3(r) - r changes sign
  double hi = 0.0;
  double point = 0.0;     ///< refined zero of map^3(r) - r
  double residual = 0.0;  ///< |map^3(point) - point|
  double fixed_gap = 0.0; ///< |map(point) - point|, bounded away from 0
};

/// Sign-change search of g^3(r) - r on the open interval (1, d/2) with `grid` points,
/// for the invariant-curve map g(r) = r e^{d/2 - r}.
[[nodiscard]] Period3Witness period3_witness(double d, std::size_t grid = 10000);

/// The same search for any map on (lo, hi); brackets whose refined zero is a fixed
/// point of the map are skipped.
[[nodiscard]] Period3Witness period3_witness(const std::function<double(double)>& map, double lo,
                                             double hi, std::size_t grid = 10000);

struct OddPeriodReport {
  std::optional<std::size_t> period;
  bool on_curve = false;
  bool exclusion_applies = false;  ///< seeds off the invariant curve
  bool consistent = true;          ///< no odd period where exclusion applies
};

[[nodiscard]] OddPeriodReport odd_period_exclusion(double d, double r_m1, double r_0,
                                                   std::size_t max_period = 64,
                                                   std::size_t transient = 2000,
                                                   double tol = 1e-8);

struct EmbedReport {
  double d = 0.0;
  double t0 = 0.0;
  bool on_curve = false;
  std::vector<double> first_order;  ///< u_0 .. u_{n_steps + 1}
  ScalarOrbit second_order;         ///< r_{-1} .. r_{n_steps}
  double max_residual = 0.0;        ///< max rel |r_{n-1} - u_n|
};

/// Runs u_{n+1} = u_n exp(c_n - u_n) with c_n alternating c0, c1 and the reduced
/// equation with d = c0 + c1 from r_{-1} = u_0, r_0 = u_1, and compares them.
[[nodiscard]] EmbedReport embed_first_order(double c0, double c1, double u0,
                                            std::size_t n_steps);

// ---------------------------------------------------------------------------
// Linearization
// ---------------------------------------------------------------------------

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Jacobian of (u, r) -> (r, u exp(d - u - r)).
[[nodiscard]] Matrix2 reduced_state_jacobian(double d, double u, double r);

/// Jacobian of (u, x) -> (x, u exp(a - c1 u - k x)), k = c2 / sigma1.
[[nodiscard]] Matrix2 fold_state_jacobian(double a, double c1, double k, double u, double x);

/// Eigenvalues of a 2x2 matrix, real part ascending.
[[nodiscard]] std::array<std::complex<double>, 2> eigenvalues(const Matrix2& m);

}  // namespace ricker
