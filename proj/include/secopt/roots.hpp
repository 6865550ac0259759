#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace secopt {

struct RootOptions {
  double ftol = 0.0;  ///< stop once |f(x)| <= ftol
  int max_iter = 200;
};

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  double lo = 0.0;  ///< final bracket
  double hi = 0.0;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

inline bool bracket_collapsed(double lo, double hi) {
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
  return hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace detail

/// Root of f on the open bracket (lo, hi), where f is known to be positive
/// just right of lo and negative just left of hi when `positive_left`, and
/// the other way round otherwise. The endpoints themselves are never
/// evaluated (derivatives may be singular there).
///
/// `fdf(x)` returns {f(x), f'(x)}. A Newton step is taken only when it lands
/// strictly inside the current bracket; otherwise the bracket is bisected.
template <typename Fdf>
RootResult safeguarded_newton(Fdf&& fdf, double lo, double hi, double x0, bool positive_left,
                              const RootOptions& opts = {}) {
  RootResult res;
  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  double best_x = x;
  double best_f = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= opts.max_iter; ++it) {
    res.iterations = it;
    const auto [f, df] = fdf(x);
    if (std::abs(f) < std::abs(best_f)) {
      best_f = f;
      best_x = x;
    }
    if (std::abs(f) <= opts.ftol || f == 0.0) {
      res.converged = true;
      break;
    }
    const bool left_of_root = positive_left ? (f > 0.0) : (f < 0.0);
    if (left_of_root) {
      lo = x;
    } else {
      hi = x;
    }
    if (detail::bracket_collapsed(lo, hi)) {
      res.converged = true;
      break;
    }
    double next = x - f / df;
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (next == x) {
      res.converged = true;
      break;
    }
    x = next;
  }
  res.x = best_x;
  res.fx = best_f;
  res.lo = lo;
  res.hi = hi;
  return res;
}

/// Plain bisection with the same bracket conventions as safeguarded_newton.
template <typename F>
RootResult bisect(F&& f, double lo, double hi, bool positive_left, int max_iter = 400) {
  RootResult res;
  double x = 0.5 * (lo + hi);
  for (int it = 1; it <= max_iter; ++it) {
    res.iterations = it;
    x = 0.5 * (lo + hi);
    const double fx = f(x);
    res.fx = fx;
    if (fx == 0.0) {
      res.converged = true;
      break;
    }
    const bool left_of_root = positive_left ? (fx > 0.0) : (fx < 0.0);
    (left_of_root ? lo : hi) = x;
    if (detail::bracket_collapsed(lo, hi)) {
      res.converged = true;
      break;
    }
  }
  res.x = x;
  res.lo = lo;
  res.hi = hi;
  return res;
}

}  // namespace secopt
