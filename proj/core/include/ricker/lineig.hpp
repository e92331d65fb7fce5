#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ricker/periodic.hpp"
#include "ricker/simulate.hpp"
#include "ricker/system.hpp"

namespace ricker {

/// Coefficients of u_{n+1} = a_n u_n + b_n u_{n-1} with periodic a, b >= 0.
///
/// Coefficients are numbered from 1: a_1 is stored in slot 0 of `a`, so
/// a_n = a(n - 1) for every n (a_0 wraps to the last slot).
struct LinearCoeffs {
  PeriodicSeq a;
  PeriodicSeq b;

  /// Throws DomainError on negative or non-finite entries.
  LinearCoeffs(PeriodicSeq a_seq, PeriodicSeq b_seq);

  [[nodiscard]] std::size_t period() const { return lcm_period(a.period(), b.period()); }
  [[nodiscard]] double a_at(std::int64_t n) const { return a(n - 1); }
  [[nodiscard]] double b_at(std::int64_t n) const { return b(n - 1); }
};

/// delta_p r^2 + (theta_p - delta_{p+1}) r - theta_{p+1}.
struct Quadratic {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

struct EigenData {
  std::size_t period = 0;
  std::vector<double> delta;  ///< delta_0 .. delta_{p+1}
  std::vector<double> theta;  ///< theta_0 .. theta_{p+1}
  Quadratic quad;
  double r1 = 0.0;
  std::vector<double> r;       ///< r_1 .. r_p (empty until eigensequence())
  double r_next = 0.0;         ///< r_{p+1}, equal to r_1 up to `periodicity_residual`
  double periodicity_residual = 0.0;
  double product = 0.0;        ///< delta_p r_1 + theta_p
  double product_direct = 0.0; ///< r_1 r_2 ... r_p
};

/// Fills delta and theta from delta_0 = 0, delta_1 = 1, theta_0 = 1, theta_1 = 0 and
/// delta_{k+1} = a_k delta_k + b_k delta_{k-1} (same for theta), k = 1..p.
[[nodiscard]] EigenData delta_theta(const LinearCoeffs& lc);

/// Throws DomainError when the quadratic is improper (all three coefficients zero).
[[nodiscard]] Quadratic characteristic_quadratic(const EigenData& ed);

/// Larger real root of the characteristic quadratic; falls back to the linear root when
/// delta_p = 0. Throws DomainError when no nonzero real root exists.
[[nodiscard]] double positive_branch_root(const Quadratic& q);

inline constexpr double kPeriodicityTol = 1e-9;

/// Full eigensequence r_1..r_p with r_1 = positive_branch_root and
/// r_{n+1} = a_n + b_n / r_n. Verifies r_{p+1} = r_1 and the two product
/// routes against each other within `tol` (relative).
/// Throws DomainError (improper quadratic, complex roots, zero term) or
/// NumericalError (self-check failure).
[[nodiscard]] EigenData eigensequence(const LinearCoeffs& lc, double tol = kPeriodicityTol);

/// Closed form 0.5 (delta_{p+1} + theta_p + sqrt((delta_{p+1} - theta_p)^2 + 4 delta_p theta_{p+1}))
/// of the eigensequence product; valid when every b_i > 0.
[[nodiscard]] double product_closed_form(const EigenData& ed);

/// Direct iteration of the linear equation; returns u_0 .. u_{n_steps}.
[[nodiscard]] std::vector<double> iterate_linear(const LinearCoeffs& lc, double u0, double u1,
                                                 std::size_t n_steps);

struct FactorizedSolution {
  EigenData eigen;
  ScalarOrbit orbit;         ///< u_0 .. u_{n_steps} via the factorized pair
  std::vector<double> t;     ///< t_1 .. t_{n_steps}
  double direct_residual = 0.0;      ///< max deviation from direct iteration, scaled by running max |u|
  double closed_form_residual = 0.0; ///< deviation of the closed form at n_steps, same scale
};

/// Solves the linear equation through t_{n+1} = -(b_n / r_n) t_n, t_1 = u_1 - r_1 u_0 and
/// u_{n+1} = r_{n+1} u_n + t_{n+1}. Throws NumericalError if the result drifts from direct
/// iteration or from the closed form by more than `tol`.
[[nodiscard]] FactorizedSolution semiconj_solution(const LinearCoeffs& lc, double u0, double u1,
                                                   std::size_t n_steps, double tol = 1e-9);

struct AlbVerdict {
  double lhs = 0.0;  ///< delta_p theta_{p+1}
  double rhs = 0.0;  ///< (1 - delta_{p+1}) (1 - theta_p)
  bool inequality = false;
  bool delta_guard = false;  ///< delta_{p+1} < 1
  bool theta_guard = false;  ///< theta_p < 1
  bool holds = false;
};

[[nodiscard]] AlbVerdict evaluate_alb(const EigenData& ed);
[[nodiscard]] bool criterion_alb(const EigenData& ed);

/// a1 a2 < (1 - b1)(1 - b2), with b1, b2 < 1.
[[nodiscard]] bool criterion_p2(double a1, double a2, double b1, double b2);

struct BextVerdict {
  bool extinct = false;
  bool b_below_one = false;
  AlbVerdict alb;
  LinearCoeffs coeffs{PeriodicSeq(0.0), PeriodicSeq(0.0)};
  std::optional<EigenData> eigen;
  std::string note;  ///< why the eigensequence is absent, if it is
  double mean_sigma2 = 0.0;
};

/// Comparison coefficients for the planar system: slot k holds
/// a = sigma2_{k+1} and b = sigma1_{k+1} beta_k e^{alpha_k}, so that
/// x_{n+1} <= a_n x_n + b_n x_{n-1} in the 1-based numbering of LinearCoeffs.
[[nodiscard]] LinearCoeffs comparison_coeffs(const RickerSystem& sys);

/// Periodic-environment extinction test: every composite b_i < 1 and the
/// (guarded) delta/theta inequality holds.
[[nodiscard]] BextVerdict check_bext(const RickerSystem& sys);

}  // namespace ricker
