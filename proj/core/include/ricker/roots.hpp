#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "ricker/errors.hpp"

namespace ricker {

struct RootResult {
  double root = 0.0;
  double residual = 0.0;  ///< |f(root)|
  std::size_t iterations = 0;
};

/// Bracketed root of a continuous f on [lo, hi] with f(lo), f(hi) of opposite sign.
///
/// Illinois-modified regula falsi; any step that fails to halve the bracket is
/// followed by a plain bisection step, so the bracket shrinks at least
/// geometrically. Stops when |f| <= f_tol or the bracket is below x_tol.
template <class Fn>
RootResult bracketed_root(Fn&& f, double lo, double hi, double f_tol = 1e-12,
                          double x_tol = 0.0, std::size_t max_iter = 500) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if ((flo < 0.0) == (fhi < 0.0)) throw DomainError("root is not bracketed");

  RootResult best{lo, std::abs(flo), 0};
  if (std::abs(fhi) < best.residual) best = {hi, std::abs(fhi), 0};

  int side = 0;  // which end was retained last step: -1 lo, +1 hi
  for (std::size_t it = 1; it <= max_iter; ++it) {
    const double width = hi - lo;
    double x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    double fx = f(x);
    if (std::abs(fx) < best.residual) best = {x, std::abs(fx), it};
    if (fx == 0.0 || std::abs(fx) <= f_tol) return {x, std::abs(fx), it};

    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == +1) flo *= 0.5;
      side = +1;
    }

    if (hi - lo > 0.5 * width) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if (std::abs(fm) < best.residual) best = {mid, std::abs(fm), it};
      if (fm == 0.0 || std::abs(fm) <= f_tol) return {mid, std::abs(fm), it};
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
        fhi = fm;
      }
      side = 0;
    }
    if (hi - lo <= x_tol) break;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi)) break;
    best.iterations = it;
  }
  return best;
}

}  // namespace ricker
