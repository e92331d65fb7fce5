#include "ricker/lineig.hpp"

#include <algorithm>
#include <cmath>

#include "ricker/errors.hpp"
#include "ricker/numeric.hpp"

namespace ricker {
namespace {

void require_nonnegative(const PeriodicSeq& s, const char* name) {
  for (double v : s.values()) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError(std::string("linear coefficient ") + name +
                        " must be finite and non-negative");
    }
  }
}

}  // namespace

LinearCoeffs::LinearCoeffs(PeriodicSeq a_seq, PeriodicSeq b_seq)
    : a(std::move(a_seq)), b(std::move(b_seq)) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
}

EigenData delta_theta(const LinearCoeffs& lc) {
  EigenData ed;
  ed.period = lc.period();
  const std::size_t p = ed.period;
  ed.delta.assign(p + 2, 0.0);
  ed.theta.assign(p + 2, 0.0);
  ed.delta[0] = 0.0;
  ed.delta[1] = 1.0;
  ed.theta[0] = 1.0;
  ed.theta[1] = 0.0;
  for (std::size_t k = 1; k <= p; ++k) {
    const auto n = static_cast<std::int64_t>(k);
    const double ak = lc.a_at(n);
    const double bk = lc.b_at(n);
    ed.delta[k + 1] = ak * ed.delta[k] + bk * ed.delta[k - 1];
    ed.theta[k + 1] = ak * ed.theta[k] + bk * ed.theta[k - 1];
  }
  return ed;
}

Quadratic characteristic_quadratic(const EigenData& ed) {
  const std::size_t p = ed.period;
  if (ed.delta.size() != p + 2 || ed.theta.size() != p + 2 || p == 0) {
    throw DomainError("delta/theta arrays are not filled");
  }
  Quadratic q{ed.delta[p], ed.theta[p] - ed.delta[p + 1], -ed.theta[p + 1]};
  if (q.A == 0.0 && q.B == 0.0 && q.C == 0.0) {
    throw DomainError("characteristic quadratic is improper (0 = 0)");
  }
  return q;
}

double positive_branch_root(const Quadratic& q) {
  if (q.A == 0.0) {
    if (q.B == 0.0) throw DomainError("characteristic equation has no root");
    const double root = -q.C / q.B;
    if (root == 0.0) throw DomainError("characteristic root is zero");
    return root;
  }
  const double disc = q.B * q.B - 4.0 * q.A * q.C;
  if (disc < 0.0) throw DomainError("no real eigensequence: negative discriminant");
  const double s = std::sqrt(disc);
  // Cancellation-free pair of roots.
  const double w = -0.5 * (q.B + std::copysign(s, q.B));
  double lo;
  double hi;
  if (w == 0.0) {
    lo = hi = 0.0;
  } else {
    lo = w / q.A;
    hi = q.C / w;
    if (lo > hi) std::swap(lo, hi);
  }
  if (hi == 0.0) throw DomainError("characteristic root is zero");
  return hi;
}

EigenData eigensequence(const LinearCoeffs& lc, double tol) {
  EigenData ed = delta_theta(lc);
  ed.quad = characteristic_quadratic(ed);
  ed.r1 = positive_branch_root(ed.quad);

  const std::size_t p = ed.period;
  ed.r.resize(p);
  ed.r[0] = ed.r1;
  for (std::size_t k = 1; k <= p; ++k) {
    const double rk = ed.r[k - 1];
    if (rk == 0.0) throw DomainError("eigensequence hit zero at r_" + std::to_string(k));
    const auto n = static_cast<std::int64_t>(k);
    const double next = lc.a_at(n) + lc.b_at(n) / rk;
    if (k < p) {
      ed.r[k] = next;
    } else {
      ed.r_next = next;
    }
  }
  ed.periodicity_residual = strict_rel_diff(ed.r_next, ed.r1);
  if (ed.periodicity_residual > tol) {
    throw NumericalError("eigensequence does not close after one period (residual " +
                         std::to_string(ed.periodicity_residual) + ")");
  }

  ed.product = ed.delta[p] * ed.r1 + ed.theta[p];
  ed.product_direct = 1.0;
  for (double v : ed.r) ed.product_direct *= v;
  if (strict_rel_diff(ed.product, ed.product_direct) > tol) {
    throw NumericalError("eigensequence product routes disagree");
  }
  return ed;
}

double product_closed_form(const EigenData& ed) {
  const std::size_t p = ed.period;
  const double dp1 = ed.delta[p + 1];
  const double tp = ed.theta[p];
  const double gap = dp1 - tp;
  return 0.5 * (dp1 + tp + std::sqrt(gap * gap + 4.0 * ed.delta[p] * ed.theta[p + 1]));
}

std::vector<double> iterate_linear(const LinearCoeffs& lc, double u0, double u1,
                                   std::size_t n_steps) {
  std::vector<double> u;
  u.reserve(n_steps + 1);
  u.push_back(u0);
  if (n_steps == 0) return u;
  u.push_back(u1);
  for (std::size_t k = 1; k < n_steps; ++k) {
    const auto n = static_cast<std::int64_t>(k);
    u.push_back(lc.a_at(n) * u[k] + lc.b_at(n) * u[k - 1]);
  }
  return u;
}

FactorizedSolution semiconj_solution(const LinearCoeffs& lc, double u0, double u1,
                                     std::size_t n_steps, double tol) {
  FactorizedSolution sol;
  sol.eigen = eigensequence(lc);
  const EigenData& ed = sol.eigen;
  const std::size_t p = ed.period;
  auto r_at = [&](std::int64_t n) { return ed.r[static_cast<std::size_t>((n - 1) % static_cast<std::int64_t>(p))]; };

  auto& u = sol.orbit.states;
  u.reserve(n_steps + 1);
  u.push_back(u0);
  if (n_steps >= 1) {
    double t = u1 - ed.r1 * u0;
    sol.t.push_back(t);
    u.push_back(ed.r1 * u0 + t);
    for (std::size_t k = 1; k < n_steps; ++k) {
      const auto n = static_cast<std::int64_t>(k);
      t = -(lc.b_at(n) / r_at(n)) * t;
      sol.t.push_back(t);
      u.push_back(r_at(n + 1) * u[k] + t);
    }
  }

  const std::vector<double> direct = iterate_linear(lc, u0, u1, n_steps);
  double scale = 0.0;
  for (std::size_t k = 0; k < direct.size(); ++k) {
    scale = std::max({scale, std::abs(direct[k]), std::abs(u[k])});
    if (scale > 0.0) {
      sol.direct_residual = std::max(sol.direct_residual, std::abs(direct[k] - u[k]) / scale);
    }
  }

  // Closed forms: t_n = t_1 (-1)^{n-1} (b_1..b_{n-1}) / (r_1..r_{n-1}) and
  // u_n = (r_n..r_1) u_0 + sum_{i<n} (r_n..r_{i+1}) t_i + t_n.
  if (n_steps >= 1) {
    const auto n = static_cast<std::int64_t>(n_steps);
    std::vector<double> t_closed(n_steps + 1, 0.0);
    t_closed[1] = sol.t.front();
    for (std::int64_t i = 2; i <= n; ++i) {
      t_closed[static_cast<std::size_t>(i)] =
          -t_closed[static_cast<std::size_t>(i - 1)] * lc.b_at(i - 1) / r_at(i - 1);
    }
    double tail = 0.0;
    double prod = 1.0;  // r_n .. r_{i+1}
    for (std::int64_t i = n - 1; i >= 1; --i) {
      prod *= r_at(i + 1);
      tail += prod * t_closed[static_cast<std::size_t>(i)];
    }
    double full = prod * r_at(1);  // r_n .. r_1 (prod is r_n..r_2 here, or 1 when n = 1)
    const double closed = full * u0 + tail + t_closed[static_cast<std::size_t>(n)];
    if (scale > 0.0) sol.closed_form_residual = std::abs(closed - u.back()) / scale;
  }

  if (sol.direct_residual > tol) {
    throw NumericalError("factorized solution departs from direct iteration (residual " +
                         std::to_string(sol.direct_residual) + ")");
  }
  if (sol.closed_form_residual > tol) {
    throw NumericalError("closed-form solution disagrees with the factorized pair");
  }
  return sol;
}

AlbVerdict evaluate_alb(const EigenData& ed) {
  const std::size_t p = ed.period;
  AlbVerdict v;
  v.lhs = ed.delta[p] * ed.theta[p + 1];
  v.rhs = (1.0 - ed.delta[p + 1]) * (1.0 - ed.theta[p]);
  v.inequality = v.lhs < v.rhs;
  v.delta_guard = ed.delta[p + 1] < 1.0;
  v.theta_guard = ed.theta[p] < 1.0;
  v.holds = v.inequality && v.delta_guard && v.theta_guard;
  return v;
}

bool criterion_alb(const EigenData& ed) { return evaluate_alb(ed).holds; }

bool criterion_p2(double a1, double a2, double b1, double b2) {
  if (!(b1 < 1.0 && b2 < 1.0)) return false;
  return a1 * a2 < (1.0 - b1) * (1.0 - b2);
}

LinearCoeffs comparison_coeffs(const RickerSystem& sys) {
  const std::size_t p = sys.period();
  auto a = PeriodicSeq::tabulate(p, [&](std::int64_t k) { return sys.sigma2(k + 1); });
  auto b = PeriodicSeq::tabulate(p, [&](std::int64_t k) {
    return sys.sigma1(k + 1) * sys.beta(k) * std::exp(sys.alpha(k));
  });
  return LinearCoeffs(std::move(a), std::move(b));
}

BextVerdict check_bext(const RickerSystem& sys) {
  BextVerdict v;
  v.coeffs = comparison_coeffs(sys);
  v.mean_sigma2 = sys.sigma2.mean();
  const auto bs = v.coeffs.b.values();
  v.b_below_one = std::all_of(bs.begin(), bs.end(), [](double b) { return b < 1.0; });

  const EigenData ed = delta_theta(v.coeffs);
  v.alb = evaluate_alb(ed);
  v.extinct = v.b_below_one && v.alb.holds;

  const auto as = v.coeffs.a.values();
  if (std::any_of(as.begin(), as.end(), [](double a) { return a == 0.0; })) {
    v.note = "some a_i = sigma2 is zero; eigensequence not constructed";
    return v;
  }
  try {
    v.eigen = eigensequence(v.coeffs);
  } catch (const Error& e) {
    v.note = std::string("eigensequence unavailable: ") + e.what();
  }
  return v;
}

}  // namespace ricker
