#include "ricker/semiconj.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ricker/errors.hpp"
#include "ricker/roots.hpp"

namespace ricker {
namespace {

constexpr double kDegenerateBand = 1e-6;  // |s_k - 1| below this kills g0'(s_k)
constexpr double kRootTol = 1e-12;
constexpr double kBracketFloor = 1e-12;

double max_rel(double current, double a, double b) { return std::max(current, strict_rel_diff(a, b)); }

bool close_enough(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
}

// Smallest divisor m of the cyclic list length with list[i + m] == list[i].
std::size_t cyclic_minimal_period(std::span<const double> pts, double tol) {
  const std::size_t n = pts.size();
  for (std::size_t m = 1; m < n; ++m) {
    if (n % m != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = close_enough(pts[(i + m) % n], pts[i], tol);
    if (ok) return m;
  }
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------

double compute_t0(double r_m1, double r_0) {
  if (!(r_m1 > 0.0) || !(r_0 > 0.0) || !std::isfinite(r_m1) || !std::isfinite(r_0)) {
    throw DomainError("t0 needs positive, finite seeds");
  }
  return r_0 / (r_m1 * std::exp(-r_m1));
}

FactorState FactorState::from_seeds(double d, double r_m1, double r_0) {
  return from_t0(d, compute_t0(r_m1, r_0));
}

FactorState FactorState::from_t0(double d, double t0) {
  if (!(t0 > 0.0)) throw DomainError("t0 must be positive");
  return FactorState{d, t0, std::exp(d) / t0};
}

bool FactorState::on_invariant_curve(double rel_tol) const {
  return strict_rel_diff(t0, std::exp(0.5 * d)) <= rel_tol;
}

double f_map(double r, const MapConfig& cfg, double cap) {
  if (r == 0.0) return 0.0;
  if (!(r > 0.0)) throw DomainError("f_t is defined for r >= 0");
  return r * checked_exp(cfg.d - r - cfg.t * r * std::exp(-r), 0, cap);
}

double f_derivative(double r, const MapConfig& cfg) {
  const double tre = cfg.t * r * std::exp(-r);
  return std::exp(cfg.d - r - tre) * (1.0 - r) * (1.0 - tre);
}

double g_map(double r, double t) { return t * r * std::exp(-r); }

double g_derivative(double r, double t) { return t * (1.0 - r) * std::exp(-r); }

double eta(double x, double d, double gamma) { return d - x - gamma * x * std::exp(-x); }

double curve_map(double r, double d) { return r * std::exp(0.5 * d - r); }

// ---------------------------------------------------------------------------

FactorizationReport verify_factorization(double r_m1, double r_0, double d,
                                         std::size_t n_steps) {
  FactorizationReport rep;
  rep.state = FactorState::from_seeds(d, r_m1, r_0);
  rep.steps = n_steps;
  rep.on_curve = rep.state.on_invariant_curve();
  const double ed = std::exp(d);
  const double t0 = rep.state.t0;
  const double t1 = rep.state.t1;

  const ScalarOrbit direct = iterate_reduced(r_m1, r_0, ReducedParams{PeriodicSeq(d)}, n_steps);
  const auto& r = direct.states;  // r[k] = r_{k-1}

  // t_n read off the direct orbit, n = 0..n_steps.
  std::vector<double> t_obs(n_steps + 1);
  for (std::size_t n = 0; n <= n_steps; ++n) t_obs[n] = r[n + 1] / (r[n] * std::exp(-r[n]));
  for (std::size_t n = 0; n < n_steps; ++n) {
    rep.t_product_residual = max_rel(rep.t_product_residual, t_obs[n + 1] * t_obs[n], ed);
  }

  const MapConfig f0{d, t0};
  const MapConfig f1{d, t1};
  for (double x : r) {
    rep.composition_residual =
        max_rel(rep.composition_residual, g_map(g_map(x, t0), t1), f_map(x, f0));
    rep.composition_residual =
        max_rel(rep.composition_residual, g_map(g_map(x, t1), t0), f_map(x, f1));
  }

  // One factorized step applied to each direct state: t_{n+1} is t1 for odd n+1.
  for (std::size_t n = 0; n < n_steps; ++n) {
    const double t_next = ((n + 1) % 2 == 1) ? t1 : t0;
    rep.step_residual = max_rel(rep.step_residual, r[n + 2], g_map(r[n + 1], t_next));
  }

  // The factorized pair on its own.
  double cur = r_0;
  double t = t0;
  for (std::size_t n = 0; n < n_steps; ++n) {
    t = ed / t;
    cur = t * cur * std::exp(-cur);
    rep.orbit_residual = max_rel(rep.orbit_residual, cur, r[n + 2]);
  }

  // Odd terms r_{2k+1} = f0^{k+1}(r_{-1}); even terms r_{2k} = f1^k(r_0).
  double odd = r_m1;
  for (std::size_t idx = 2; idx < r.size(); idx += 2) {
    odd = f_map(odd, f0);
    rep.odd_chain_residual = max_rel(rep.odd_chain_residual, odd, r[idx]);
  }
  double even = r_0;
  for (std::size_t idx = 3; idx < r.size(); idx += 2) {
    even = f_map(even, f1);
    rep.even_chain_residual = max_rel(rep.even_chain_residual, even, r[idx]);
  }

  if (rep.on_curve) {
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
      rep.curve_residual = std::max(rep.curve_residual, std::abs(r[k + 1] - curve_map(r[k], d)));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> minimal_period(std::span<const double> window, std::size_t max_period,
                                          double tol) {
  for (std::size_t q = 1; q <= max_period; ++q) {
    if (window.size() < 2 * q) break;
    bool ok = true;
    for (std::size_t i = 0; i + q < window.size() && ok; ++i) {
      ok = close_enough(window[i + q], window[i], tol);
    }
    if (ok) return q;
  }
  return std::nullopt;
}

CycleResult detect_cycle(const std::function<double(double)>& map, double seed,
                         const CycleOptions& opt) {
  if (!(seed > 0.0)) throw DomainError("cycle detection needs a positive seed");
  if (opt.max_period == 0) throw DomainError("max_period must be positive");
  double x = seed;
  for (std::size_t k = 0; k < opt.transient; ++k) x = map(x);

  std::vector<double> window(3 * opt.max_period);
  for (double& w : window) {
    w = x;
    x = map(x);
  }

  CycleResult res;
  const auto q = minimal_period(window, opt.max_period, opt.tol);
  if (!q) {
    res.points.assign(window.end() - static_cast<std::ptrdiff_t>(opt.max_period), window.end());
    return res;
  }
  res.converged = true;
  res.period = *q;
  res.points.assign(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(*q));
  for (std::size_t k = 0; k < res.period; ++k) {
    res.residual = std::max(res.residual,
                            std::abs(map(res.points[k]) - res.points[(k + 1) % res.period]));
  }
  return res;
}

CycleResult detect_cycle(const MapConfig& cfg, double seed, const CycleOptions& opt) {
  CycleResult res = detect_cycle([&cfg](double r) { return f_map(r, cfg); }, seed, opt);
  if (res.converged) {
    res.multiplier = 1.0;
    for (double s : res.points) res.multiplier *= f_derivative(s, cfg);
  }
  return res;
}

ShadowResult shadow_cycle(const CycleResult& cr, double d, double t0, const CycleOptions& opt) {
  ShadowResult out;
  const FactorState fs = FactorState::from_t0(d, t0);
  out.t1 = fs.t1;
  const MapConfig f1{d, fs.t1};

  std::vector<double> mapped;
  mapped.reserve(cr.points.size());
  for (double s : cr.points) {
    mapped.push_back(g_map(s, t0));
    if (std::abs(s - 1.0) < kDegenerateBand) out.degenerate = true;
  }
  if (out.degenerate) {
    out.warning = "a cycle point lies within 1e-6 of r = 1 where g0' vanishes; "
                  "multiplier transfer does not apply";
  }

  CycleResult& sh = out.cycle;
  sh.points = mapped;
  if (!cr.converged) {
    const auto q = minimal_period(mapped, opt.max_period, opt.tol);
    sh.converged = q.has_value();
    sh.period = q.value_or(0);
    return out;
  }

  sh.converged = true;
  sh.period = cyclic_minimal_period(mapped, opt.tol);
  const std::size_t n = mapped.size();
  sh.multiplier = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    sh.residual = std::max(sh.residual, std::abs(f_map(mapped[k], f1) - mapped[(k + 1) % n]));
    sh.multiplier *= f_derivative(mapped[k], f1);
  }
  out.multiplier_gap = strict_rel_diff(sh.multiplier, cr.multiplier);
  return out;
}

LiftedCycle lift_cycle(const CycleResult& cr, double d, double t0) {
  if (!cr.converged || cr.points.empty()) throw DomainError("lift needs a converged cycle");
  LiftedCycle out;
  out.points.reserve(2 * cr.points.size());
  for (double s : cr.points) {
    out.points.push_back(s);
    out.points.push_back(g_map(s, t0));
  }
  const std::size_t n = out.points.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double prev = out.points[(k + n - 1) % n];
    const double cur = out.points[k];
    const double next = prev * std::exp(d - prev - cur);
    out.invariance_residual =
        std::max(out.invariance_residual, strict_rel_diff(next, out.points[(k + 1) % n]));
  }
  out.minimal_period = cyclic_minimal_period(out.points, 1e-8);
  return out;
}

double cycle_distance(std::span<const double> tail, std::span<const double> cycle) {
  if (cycle.empty()) throw DomainError("empty cycle");
  double best = std::numeric_limits<double>::infinity();
  const std::size_t len = cycle.size();
  for (std::size_t shift = 0; shift < len; ++shift) {
    double worst = 0.0;
    for (std::size_t i = 0; i < tail.size(); ++i) {
      worst = std::max(worst, std::abs(tail[i] - cycle[(i + shift) % len]));
    }
    best = std::min(best, worst);
  }
  return best;
}

// ---------------------------------------------------------------------------

double fixed_point_dr(double d, double gamma) {
  if (!(d > 0.0 && d <= 2.0)) {
    throw DomainError("unique fixed point is established only for 0 < d <= 2; "
                      "use fixed_points_dr for a multi-root scan");
  }
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  const auto res = bracketed_root([&](double x) { return eta(x, d, gamma); }, kBracketFloor, d,
                                  kRootTol);
  return res.root;
}

FixedPointReport fixed_points_dr(double d, double gamma, std::size_t grid) {
  if (!(d > 0.0)) throw DomainError("positive fixed points need d > 0");
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (grid < 2) throw DomainError("grid needs at least two points");
  FixedPointReport rep;
  rep.uniqueness_proven = d <= 2.0;
  auto h = [&](double x) { return eta(x, d, gamma); };
  const double lo = kBracketFloor;
  double x_prev = lo;
  double h_prev = h(lo);
  for (std::size_t i = 1; i <= grid; ++i) {
    const double x = lo + (d - lo) * static_cast<double>(i) / static_cast<double>(grid);
    const double hx = h(x);
    if (hx == 0.0) {
      rep.roots.push_back(x);
      rep.residuals.push_back(0.0);
    } else if (h_prev != 0.0 && (hx < 0.0) != (h_prev < 0.0)) {
      const auto res = bracketed_root(h, x_prev, x, kRootTol);
      rep.roots.push_back(res.root);
      rep.residuals.push_back(res.residual);
    }
    x_prev = x;
    h_prev = hx;
  }
  return rep;
}

TwoCycle two_cycle_rmsa(double d, double r_m1, double r_0, const TwoCycleOptions& opt) {
  if (!(d > 0.0 && d <= 2.0)) throw DomainError("two-cycle limits need 0 < d <= 2");
  const FactorState fs = FactorState::from_seeds(d, r_m1, r_0);
  TwoCycle tc;
  if (fs.on_invariant_curve()) {
    tc.degenerate = true;
    tc.M = tc.m = 0.5 * d;
  } else {
    tc.M = fixed_point_dr(d, fs.t0);
    tc.m = fixed_point_dr(d, fs.t1);
  }

  // Odd terms follow f_{t0} from r_{-1}, so they should settle at M; the pairing is
  // confirmed against the simulated orbit rather than assumed.
  double prev = r_m1;
  double cur = r_0;
  double last_odd = r_m1;
  double last_even = r_0;
  bool expected = false;
  bool swapped = false;
  std::size_t k = 0;
  for (; k < opt.max_steps; ++k) {
    const double next = prev * checked_exp(d - prev - cur, static_cast<std::int64_t>(k) + 1);
    prev = cur;
    cur = next;
    if ((k + 1) % 2 == 1) {
      last_odd = next;
    } else {
      last_even = next;
    }
    if (k >= 1) {
      expected = std::abs(last_odd - tc.M) < opt.tol && std::abs(last_even - tc.m) < opt.tol;
      swapped = std::abs(last_odd - tc.m) < opt.tol && std::abs(last_even - tc.M) < opt.tol;
      if (expected || swapped) {
        ++k;
        break;
      }
    }
  }
  tc.steps = k;
  tc.converged = expected || swapped;
  tc.pairing_as_expected = expected || !swapped;
  tc.rho1 = tc.pairing_as_expected ? tc.M : tc.m;
  tc.rho2 = tc.pairing_as_expected ? tc.m : tc.M;
  tc.odd_error = std::abs(last_odd - tc.rho1);
  tc.even_error = std::abs(last_even - tc.rho2);
  tc.sum_residual = std::abs(tc.rho1 + tc.rho2 - d);
  return tc;
}

// ---------------------------------------------------------------------------

Period3Witness period3_witness(const std::function<double(double)>& map, double lo, double hi,
                               std::size_t grid) {
  Period3Witness w;
  if (!(hi > lo) || grid < 2) return w;
  auto h = [&](double x) { return map(map(map(x))) - x; };
  auto node = [&](std::size_t i) {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid);
  };

  double x_prev = node(1);
  double h_prev = h(x_prev);
  for (std::size_t i = 2; i < grid; ++i) {
    const double x = node(i);
    const double hx = h(x);
    if ((hx < 0.0) != (h_prev < 0.0) || hx == 0.0) {
      const auto res = bracketed_root(h, x_prev, x, 1e-13);
      const double p = res.root;
      const double gap = std::abs(map(p) - p);
      if (gap > 1e-7 * std::max(1.0, std::abs(p))) {
        w.found = true;
        w.lo = x_prev;
        w.hi = x;
        w.point = p;
        w.residual = std::abs(h(p));
        w.fixed_gap = gap;
        return w;
      }
    }
    x_prev = x;
    h_prev = hx;
  }
  return w;
}

Period3Witness period3_witness(double d, std::size_t grid) {
  if (!(d > 0.0)) throw DomainError("period-three search needs d > 0");
  return period3_witness([d](double r) { return curve_map(r, d); }, 1.0, 0.5 * d, grid);
}

OddPeriodReport odd_period_exclusion(double d, double r_m1, double r_0, std::size_t max_period,
                                     std::size_t transient, double tol) {
  OddPeriodReport rep;
  const FactorState fs = FactorState::from_seeds(d, r_m1, r_0);
  rep.on_curve = fs.on_invariant_curve();
  rep.exclusion_applies = !rep.on_curve;

  const ScalarOrbit orbit =
      iterate_reduced(r_m1, r_0, ReducedParams{PeriodicSeq(d)}, transient + 3 * max_period);
  const std::span<const double> all(orbit.states);
  rep.period = minimal_period(all.last(3 * max_period), max_period, tol);
  rep.consistent = !(rep.exclusion_applies && rep.period && (*rep.period % 2 == 1));
  return rep;
}

EmbedReport embed_first_order(double c0, double c1, double u0, std::size_t n_steps) {
  if (!(u0 > 0.0)) throw DomainError("embedding needs u0 > 0");
  EmbedReport rep;
  rep.d = c0 + c1;
  rep.first_order.reserve(n_steps + 2);
  rep.first_order.push_back(u0);
  for (std::size_t n = 0; n <= n_steps; ++n) {
    const double c = (n % 2 == 0) ? c0 : c1;
    const double u = rep.first_order.back();
    rep.first_order.push_back(u * checked_exp(c - u, static_cast<std::int64_t>(n) + 1));
  }
  const double r_m1 = rep.first_order[0];
  const double r_0 = rep.first_order[1];
  const FactorState fs = FactorState::from_seeds(rep.d, r_m1, r_0);
  rep.t0 = fs.t0;
  rep.on_curve = fs.on_invariant_curve(1e-10);
  rep.second_order = iterate_reduced(r_m1, r_0, ReducedParams{PeriodicSeq(rep.d)}, n_steps);
  for (std::size_t k = 0; k < rep.second_order.states.size(); ++k) {
    rep.max_residual =
        std::max(rep.max_residual, strict_rel_diff(rep.second_order.states[k], rep.first_order[k]));
  }
  return rep;
}

// ---------------------------------------------------------------------------

Matrix2 reduced_state_jacobian(double d, double u, double r) {
  const double e = std::exp(d - u - r);
  return Matrix2{{{0.0, 1.0}, {(1.0 - u) * e, -u * e}}};
}

Matrix2 fold_state_jacobian(double a, double c1, double k, double u, double x) {
  const double e = std::exp(a - c1 * u - k * x);
  return Matrix2{{{0.0, 1.0}, {(1.0 - c1 * u) * e, -k * u * e}}};
}

std::array<std::complex<double>, 2> eigenvalues(const Matrix2& m) {
  const double tr = m[0][0] + m[1][1];
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const std::complex<double> disc = std::sqrt(std::complex<double>(0.25 * tr * tr - det, 0.0));
  std::array<std::complex<double>, 2> ev{0.5 * tr - disc, 0.5 * tr + disc};
  if (ev[1].real() < ev[0].real()) std::swap(ev[0], ev[1]);
  return ev;
}

}  // namespace ricker
