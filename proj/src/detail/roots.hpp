#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace rivlin::detail {

/// Safeguarded Newton iteration on a bracket [lo, hi] over which f changes
/// sign. `sign_lo` is the sign of f at (or just inside) lo; the endpoints are
/// never evaluated, so either may be an open boundary of f's domain.
/// `fdf(x)` returns {f(x), f'(x)}.
template <class FDF>
double solve_bracketed(FDF&& fdf, double lo, double hi, int sign_lo) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Orient so that g(lo) < 0 < g(hi).
  const double orient = sign_lo < 0 ? 1.0 : -1.0;
  double x = 0.5 * (lo + hi);
  double dx_old = hi - lo;
  double dx = dx_old;
  auto [f, df] = fdf(x);
  f *= orient;
  df *= orient;
  for (int iter = 0; iter < 400; ++iter) {
    if (f == 0.0) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const bool newton_leaves = ((x - hi) * df - f) * ((x - lo) * df - f) > 0.0;
    const bool newton_slow = std::abs(2.0 * f) > std::abs(dx_old * df);
    dx_old = dx;
    if (newton_leaves || newton_slow || !std::isfinite(f / df)) {
      dx = 0.5 * (hi - lo);
      x = lo + dx;
    } else {
      dx = f / df;
      x -= dx;
    }
    if (std::abs(dx) <= 2.0 * eps * std::abs(x) || hi - lo <= 2.0 * eps * std::abs(x)) return x;
    std::tie(f, df) = fdf(x);
    f *= orient;
    df *= orient;
  }
  return x;
}

inline int sign_with_tol(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

}  // namespace rivlin::detail
