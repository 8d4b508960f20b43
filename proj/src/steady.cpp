#include "olgdet/steady.hpp"

#include <algorithm>
#include <cmath>

#include "olgdet/errors.hpp"
#include "olgdet/roots.hpp"

namespace olgdet {

std::string_view to_string(SteadyKind kind) {
  return kind == SteadyKind::Monetary ? "monetary" : "non_monetary";
}

std::vector<double> find_nmss_capital(const ModelParams& model, const SteadySearchOptions& opts) {
  if (!(opts.k_min > 0.0 && opts.k_max > opts.k_min) || opts.grid_points < 2) {
    throw DomainError("steady-state search window is empty");
  }
  // log s(w(k), f'(k)) - log k, evaluated in log capital.
  auto gap = [&model](double L) {
    const double k = std::exp(L);
    const FactorPrices fp = model.production.factor_prices(k);
    return std::log(model.savings(fp.w, fp.R).s) - L;
  };

  const double lo = std::log(opts.k_min);
  const double hi = std::log(opts.k_max);
  const double step = (hi - lo) / (opts.grid_points - 1);
  std::vector<double> out;
  double prev_L = lo;
  double prev = gap(lo);
  if (prev == 0.0) out.push_back(std::exp(lo));
  for (int i = 1; i < opts.grid_points; ++i) {
    const double L = lo + step * i;
    const double cur = gap(L);
    if (cur == 0.0) {
      out.push_back(std::exp(L));
    } else if (prev != 0.0 && (cur > 0.0) != (prev > 0.0)) {
      out.push_back(std::exp(roots::bracketed_root(gap, prev_L, L, 0.0, 1e-15)));
    }
    prev_L = L;
    prev = cur;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }),
            out.end());
  return out;
}

std::optional<State> find_mss(const ModelParams& model, const SteadySearchOptions& opts) {
  auto excess_return = [&model](double L) {
    return model.production.eval(std::exp(L)).fprime - 1.0;
  };
  const double lo = std::log(opts.k_min);
  const double hi = std::log(opts.k_max);
  const double at_lo = excess_return(lo);
  const double at_hi = excess_return(hi);
  // f is concave, so f' - 1 is nonincreasing: a root needs f'(k_min) >= 1 >= f'(k_max).
  if (!(at_lo >= 0.0 && at_hi <= 0.0) || (at_lo == 0.0 && at_hi == 0.0)) return std::nullopt;

  const double k = std::exp(roots::bracketed_root(excess_return, lo, hi, 0.0, 1e-15));
  const FactorPrices fp = model.production.factor_prices(k);
  const double P = model.savings(fp.w, fp.R).s - k;
  if (!(P > 0.0)) return std::nullopt;
  return State{k, P};
}

SteadyState describe_steady_state(const ModelParams& model, State ss, double tol_margin) {
  SteadyState out;
  out.kind = ss.P > 0.0 ? SteadyKind::Monetary : SteadyKind::NonMonetary;
  out.state = ss;
  try {
    out.jacobian = jacobian_at(model, ss);
  } catch (const SolverError&) {
    out.classification.kind = StabilityKind::Borderline;
    return out;
  }
  out.classification = classify(*out.jacobian, tol_margin);
  if (out.kind == SteadyKind::NonMonetary) {
    out.lambda1 = out.jacobian->a11;
    out.lambda2 = out.jacobian->a22;
  } else {
    const auto& ev = out.classification.eigenvalues;
    out.lambda1 = out.classification.complex_pair ? std::abs(ev[0]) : ev[0].real();
    out.lambda2 = out.classification.complex_pair ? std::abs(ev[1]) : ev[1].real();
    out.certificate = mss_saddle_certificate(model, ss);
  }
  return out;
}

std::vector<SteadyState> find_steady_states(const ModelParams& model,
                                            const SteadySearchOptions& opts) {
  std::vector<SteadyState> out;
  for (double k : find_nmss_capital(model, opts)) {
    out.push_back(describe_steady_state(model, {k, 0.0}, opts.tol_margin));
  }
  if (auto mss = find_mss(model, opts)) {
    out.push_back(describe_steady_state(model, *mss, opts.tol_margin));
  }
  return out;
}

}  // namespace olgdet
