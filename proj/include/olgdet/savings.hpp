#pragma once

#include "olgdet/utility.hpp"

namespace olgdet {

/// Optimal saving of the young and its partial derivatives at (w, R).
struct SavingsResult {
  double s = 0.0;
  double s_w = 0.0;  ///< ds/dw, always in (0,1)
  double s_R = 0.0;  ///< ds/dR; zero when v is log
  double residual = 0.0;  ///< -u'(w-s) + beta R v'(R s) at the returned s
};

struct SavingsOptions {
  double tol = 1e-12;            ///< FOC residual, relative to max(1, u'(w-s))
  double bracket_margin = 1e-12;  ///< search on (margin*w, w - margin*w)
  int max_iter = 400;
};

/// Maximizes u(w - s) + beta v(R s). The FOC residual is strictly decreasing in s,
/// so the root is bracketed on (0, w); solved by bisection-safeguarded Newton.
SavingsResult solve_savings(const Utility& u, const Utility& v, double beta, double w, double R,
                            const SavingsOptions& opts = {});

/// s_w and s_R at a known s, by the implicit function theorem.
SavingsResult savings_derivatives(const Utility& u, const Utility& v, double beta, double w,
                                  double R, double s);

}  // namespace olgdet
