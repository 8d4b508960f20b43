#include "olgdet/cdces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "olgdet/errors.hpp"
#include "olgdet/roots.hpp"

namespace olgdet::cdces {

namespace {

bool cobb_douglas_branch(double rho) { return std::abs(rho - 1.0) < kCobbDouglasRhoBand; }

/// Fixed-point map in log capital: H(L) = log(beta w(e^L)) - L. Its slope is lambda1 - 1.
double log_fixed_point_gap(const Theta& t, double log_k) {
  const double base = std::log(t.beta * t.A * (1.0 - t.alpha));
  if (cobb_douglas_branch(t.rho)) return base + (t.alpha - 1.0) * log_k;
  return base + t.rho * ces_log_g(t.alpha, t.rho, log_k) - log_k;
}

/// Walks from `start` in `direction` (+1/-1) with doubling steps until H changes sign
/// relative to its value at `start`; returns the far end of the bracket.
double expand_bracket(const Theta& t, double start, double direction) {
  const bool start_positive = log_fixed_point_gap(t, start) > 0.0;
  double step = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double x = start + direction * step;
    if ((log_fixed_point_gap(t, x) > 0.0) != start_positive) return x;
    step *= 2.0;
  }
  throw SolverError("cdces: failed to bracket a non-monetary steady state");
}

constexpr double kLogRootTol = 1e-15;
constexpr double kTangencyMerge = 1e-8;

}  // namespace

void validate(const Theta& t) {
  if (!(t.beta > 0.0 && t.beta < 1.0)) {
    throw DomainError("beta must lie in (0,1), got " + std::to_string(t.beta));
  }
  // The remaining bounds are enforced by the CES constructor.
  Production(ces_params(t));
}

CesParams ces_params(const Theta& t) { return CesParams{t.A, t.alpha, t.rho, t.delta}; }

ModelParams to_model(const Theta& t) {
  validate(t);
  return cobb_douglas_model(Production(ces_params(t)), t.beta);
}

PsiValue psi_eval(double alpha, double rho, double x) {
  if (!(x > 0.0)) throw DomainError("psi: x must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("psi: alpha must lie in (0,1)");
  if (!(rho > 0.0)) throw DomainError("psi: rho must be > 0");
  const double base = x + 1.0 - alpha;
  PsiValue out;
  out.psi = std::pow(base, rho) / x;
  out.psi_prime = std::pow(base, rho - 1.0) / (x * x) * ((rho - 1.0) * x - (1.0 - alpha));
  return out;
}

double psi_minimum_point(double alpha, double rho) {
  if (!(rho > 1.0)) throw DomainError("psi has an interior minimum only for rho > 1");
  return (1.0 - alpha) / (rho - 1.0);
}

double c_constant(const Theta& t) {
  return std::exp(-std::log(t.alpha) / t.rho + (1.0 - t.rho) / t.rho * std::log(t.delta / t.A));
}

double mss_condition(const Theta& t) {
  const double log_c = -std::log(t.alpha) / t.rho + (1.0 - t.rho) / t.rho * std::log(t.delta / t.A);
  return t.beta * t.delta * std::expm1(log_c) - 1.0;
}

double nmss_existence_index(const Theta& t) {
  return std::exp(t.rho * std::log(t.rho) + std::log(t.alpha) +
                  (1.0 - t.rho) * std::log(t.beta * t.A * (t.rho - 1.0)));
}

std::optional<MonetarySteadyState> mss_closed_form(const Theta& t) {
  validate(t);
  if (!(mss_condition(t) > 0.0)) return std::nullopt;

  double log_k = 0.0;
  if (cobb_douglas_branch(t.rho)) {
    log_k = std::log(t.A * t.alpha / t.delta) / (1.0 - t.alpha);
  } else {
    // f'(k) = 1  <=>  k^(rho-1) = (c-1)/(1/alpha-1), written so rho -> 1 stays accurate.
    const double L = (1.0 - t.rho) / t.rho * std::log(t.delta / (t.A * t.alpha));
    log_k = std::log1p(std::expm1(L) / (1.0 - t.alpha)) / (t.rho - 1.0);
  }
  const double k = std::exp(log_k);
  const Production prod(ces_params(t));
  const double w = prod.factor_prices(k).w;
  return MonetarySteadyState{k, t.beta * w - k};
}

double nmss_fixed_point_residual(const Theta& t, double k) {
  const Production prod(ces_params(t));
  return k - t.beta * prod.factor_prices(k).w;
}

std::vector<double> nmss_closed_form_log(const Theta& t) {
  validate(t);
  std::vector<double> out;
  if (cobb_douglas_branch(t.rho)) {
    out.push_back(std::log(t.beta * t.A * (1.0 - t.alpha)) / (1.0 - t.alpha));
    return out;
  }
  auto gap = [&t](double L) { return log_fixed_point_gap(t, L); };

  if (t.rho < 1.0) {
    // H is strictly decreasing: unique root.
    const double start = std::log(t.beta * t.A * (1.0 - t.alpha));
    const double far = expand_bracket(t, start, gap(start) > 0.0 ? 1.0 : -1.0);
    out.push_back(roots::bracketed_root(gap, std::min(start, far), std::max(start, far), 0.0, kLogRootTol));
    return out;
  }

  // rho > 1: H peaks where lambda1 = 1, i.e. at x = m.
  const double m = psi_minimum_point(t.alpha, t.rho);
  const double L_peak = (std::log(m) - std::log(t.alpha)) / (1.0 - t.rho);
  const double peak = gap(L_peak);
  const double scale = 1.0 + std::abs(L_peak) + std::abs(std::log(t.beta * t.A * (1.0 - t.alpha)));
  if (std::abs(peak) <= 1e-14 * scale) {
    out.push_back(L_peak);
    return out;
  }
  if (peak < 0.0) return out;

  const double left = expand_bracket(t, L_peak, -1.0);
  const double right = expand_bracket(t, L_peak, 1.0);
  const double L_small = roots::bracketed_root(gap, left, L_peak, 0.0, kLogRootTol);
  const double L_large = roots::bracketed_root(gap, L_peak, right, 0.0, kLogRootTol);
  if (L_large - L_small <= kTangencyMerge) {
    out.push_back(L_peak);
  } else {
    out.push_back(L_small);
    out.push_back(L_large);
  }
  return out;
}

std::vector<double> nmss_closed_form(const Theta& t) {
  std::vector<double> out;
  for (double L : nmss_closed_form_log(t)) out.push_back(std::exp(L));
  return out;
}

namespace {

NmssEigenvalues eigenvalues_at(const Theta& t, double log_k) {
  const double rho = cobb_douglas_branch(t.rho) ? 1.0 : t.rho;
  const double z = (1.0 - rho) * log_k;
  const double k_pow = std::exp(z);  // k^(1-rho); may overflow, making lambda2 infinite
  NmssEigenvalues out;
  // rho x / (x + 1 - alpha) with x = alpha k^(1-rho), written to survive x -> inf.
  out.lambda1 = rho / (1.0 + (1.0 - t.alpha) / t.alpha * std::exp(-z));
  out.lambda2 = t.alpha / (t.beta * (1.0 - t.alpha)) * k_pow + 1.0 - t.delta;
  return out;
}

}  // namespace

NmssEigenvalues nmss_eigenvalues(const Theta& t, double k) {
  validate(t);
  if (!(k > 0.0)) throw DomainError("nmss_eigenvalues: k must be > 0");
  const double residual = nmss_fixed_point_residual(t, k);
  if (std::abs(residual) > 1e-8 * std::max(1.0, k)) {
    throw DomainError("nmss_eigenvalues: k=" + std::to_string(k) +
                      " is not a non-monetary steady state (residual " +
                      std::to_string(residual) + ")");
  }
  return eigenvalues_at(t, std::log(k));
}

NmssEigenvalues nmss_eigenvalues_log(const Theta& t, double log_k) {
  validate(t);
  if (!std::isfinite(log_k)) throw DomainError("nmss_eigenvalues: log k must be finite");
  // Relative residual of k = beta w(k).
  const double gap = log_fixed_point_gap(t, log_k);
  if (!(std::abs(gap) <= 1e-8)) {
    throw DomainError("nmss_eigenvalues: log k=" + std::to_string(log_k) +
                      " is not a non-monetary steady state (log gap " + std::to_string(gap) + ")");
  }
  return eigenvalues_at(t, log_k);
}

double lambda1_from_lambda2(const Theta& t, double lambda2) {
  const double b = t.beta * (lambda2 - 1.0 + t.delta);
  return t.rho * b / (b + 1.0);
}

CdCesAnalysis analyze(const Theta& t) {
  validate(t);
  CdCesAnalysis out;
  out.theta = t;
  out.c_const = c_constant(t);
  if (t.rho > 1.0 && !cobb_douglas_branch(t.rho)) out.psi_min_point = psi_minimum_point(t.alpha, t.rho);
  for (double L : nmss_closed_form_log(t)) {
    const NmssEigenvalues ev = nmss_eigenvalues_log(t, L);
    out.nmss.push_back({std::exp(L), L, ev.lambda1, ev.lambda2});
  }
  out.mss = mss_closed_form(t);
  return out;
}

}  // namespace olgdet::cdces
