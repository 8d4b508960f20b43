#pragma once

// Reference implementations used to cross-check the library. They avoid the
// library's log-space formulas and root finders on purpose: plain pow() and
// plain bisection, slow but easy to audit.

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

struct Ces {
  double A, alpha, rho, delta;

  double g(double k) const {
    if (rho == 1.0) return std::pow(k, alpha);
    return std::pow(alpha * std::pow(k, 1.0 - rho) + 1.0 - alpha, 1.0 / (1.0 - rho));
  }
  double f(double k) const { return A * g(k) + (1.0 - delta) * k; }
  double fprime(double k) const {
    return A * alpha * std::pow(g(k) / k, rho) + 1.0 - delta;
  }
  double fdoubleprime(double k, double h = 1e-5) const {
    return (fprime(k * (1 + h)) - fprime(k * (1 - h))) / (2 * h * k);
  }
  double wage(double k) const { return A * (1.0 - alpha) * std::pow(g(k), rho); }
};

inline double bisect(const std::function<double(double)>& fn, double lo, double hi) {
  double flo = fn(lo);
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// All roots of fn on a log grid over [lo, hi] (sign changes only).
inline std::vector<double> scan_roots(const std::function<double(double)>& fn, double lo, double hi,
                                      int n = 20000) {
  std::vector<double> roots;
  double x0 = lo;
  double f0 = fn(x0);
  const double r = std::pow(hi / lo, 1.0 / n);
  for (int i = 1; i <= n; ++i) {
    const double x1 = lo * std::pow(r, i);
    const double f1 = fn(x1);
    if (f0 == 0.0) roots.push_back(x0);
    else if ((f0 < 0) != (f1 < 0)) roots.push_back(bisect(fn, x0, x1));
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

// Cobb-Douglas utility (s = beta w) economy with CES production.
struct CdCes {
  double beta;
  Ces prod;

  std::vector<double> nmss() const {
    return scan_roots([&](double k) { return beta * prod.wage(k) - k; }, 1e-12, 1e12, 40000);
  }
  // f'(k) = 1 and P = beta w(k) - k > 0.
  std::optional<std::pair<double, double>> mss() const {
    auto roots = scan_roots([&](double k) { return prod.fprime(k) - 1.0; }, 1e-8, 1e8, 4000);
    if (roots.empty()) return std::nullopt;
    const double k = roots.front();
    const double P = beta * prod.wage(k) - k;
    if (!(P > 0)) return std::nullopt;
    return std::make_pair(k, P);
  }
  // Forward map: k' = beta w(k) - P, P' = P f'(k').
  std::pair<double, double> step(double k, double P) const {
    const double kn = beta * prod.wage(k) - P;
    return {kn, P * prod.fprime(kn)};
  }
};

// Eigenvalues of [[a, b], [c, d]] via the characteristic polynomial (real case).
inline std::pair<double, double> real_eigs(double a, double b, double c, double d) {
  const double t = a + d;
  const double D = a * d - b * c;
  const double disc = std::sqrt(t * t / 4 - D);
  return {t / 2 - disc, t / 2 + disc};
}

inline double log_uniform(std::mt19937_64& g, double lo, double hi) {
  return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(g));
}
inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace oracle
