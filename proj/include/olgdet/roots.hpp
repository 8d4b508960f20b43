#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "olgdet/errors.hpp"

namespace olgdet::roots {

/// Bracketed root of f on [lo, hi] by TOMS 748 (Brent-class: bisection safeguarded
/// inverse cubic interpolation). f(lo) and f(hi) must have opposite signs or one must vanish.
template <typename F>
double bracketed_root(F&& f, double lo, double hi, double rel_tol = 1e-14,
                      double abs_tol = 0.0, std::uintmax_t max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw SolverError("bracketed_root: no sign change on [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  auto tol = [rel_tol, abs_tol](double a, double b) {
    const double gap = std::abs(a - b);
    return gap <= rel_tol * std::max(std::abs(a), std::abs(b)) || gap <= abs_tol;
  };
  std::uintmax_t iters = max_iter;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  // Callers check residuals; at the iteration limit the bracket is still the best estimate.
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

/// Plain bisection down to adjacent doubles (or max_iter halvings). Requires a sign change.
template <typename F>
double bisect(F&& f, double lo, double hi, int max_iter = 400) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw SolverError("bisect: no sign change on [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

}  // namespace olgdet::roots
