#include "olgdet/savings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "olgdet/errors.hpp"

namespace olgdet {

SavingsResult savings_derivatives(const Utility& u, const Utility& v, double beta, double w,
                                  double R, double s) {
  const double z = R * s;
  const double upp = u.d2(w - s);
  const double vp = v.d1(z);
  const double vpp = v.d2(z);
  const double denom = upp + beta * R * R * vpp;
  SavingsResult out;
  out.s = s;
  out.s_w = upp / denom;
  // v'(z) + z v''(z) = v'(z)(1 - gamma_v(z)) vanishes identically for log v.
  const double numer = v.is_log() ? 0.0 : beta * vp + beta * z * vpp;
  out.s_R = -numer / denom;
  out.residual = -u.d1(w - s) + beta * R * vp;
  return out;
}

SavingsResult solve_savings(const Utility& u, const Utility& v, double beta, double w, double R,
                            const SavingsOptions& opts) {
  if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("savings: wage must be > 0, got " + std::to_string(w));
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("savings: return must be > 0, got " + std::to_string(R));
  if (!(beta > 0.0)) throw DomainError("savings: beta must be > 0");

  if (u.is_log() && v.is_log()) {
    // -a/(w-s) + beta b/s = 0  =>  s = beta b w / (a + beta b)
    const double a = u.scale();
    const double b = v.scale();
    return savings_derivatives(u, v, beta, w, R, beta * b * w / (a + beta * b));
  }

  auto residual = [&](double s) { return -u.d1(w - s) + beta * R * v.d1(R * s); };
  auto slope = [&](double s) { return u.d2(w - s) + beta * R * R * v.d2(R * s); };

  double lo = opts.bracket_margin * w;
  double hi = w - opts.bracket_margin * w;
  const double rlo = residual(lo);
  const double rhi = residual(hi);
  if (!(rlo > 0.0) || !(rhi < 0.0)) {
    throw SolverError("savings: FOC residual does not change sign on (0, w); "
                      "utility violates monotonicity or Inada conditions");
  }

  double s = 0.5 * (lo + hi);
  int stalled = 0;
  for (int it = 0; it < opts.max_iter; ++it) {
    const double r = residual(s);
    const double scale = std::max(1.0, u.d1(w - s));
    if (std::abs(r) <= opts.tol * scale) break;
    const double width = hi - lo;
    if (r > 0.0) lo = s; else hi = s;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) break;

    double next = s - r / slope(s);
    stalled = (hi - lo > 0.5 * width) ? stalled + 1 : 0;
    if (!(next > lo && next < hi) || stalled >= 3) {
      next = 0.5 * (lo + hi);
      stalled = 0;
    }
    s = next;
  }
  return savings_derivatives(u, v, beta, w, R, s);
}

}  // namespace olgdet
