#pragma once

#include <optional>
#include <vector>

#include "olgdet/model.hpp"

/// Closed forms for Cobb-Douglas utility (1-beta) log y + beta log z with CES production.
namespace olgdet::cdces {

/// theta = (beta, A, alpha, rho, delta).
struct Theta {
  double beta = 0.5;
  double A = 1.0;
  double alpha = 0.3;
  double rho = 1.0;
  double delta = 1.0;
};

/// Throws DomainError unless beta in (0,1), A > 0, alpha in (0,1), rho > 0, delta in (0,1].
void validate(const Theta& theta);

CesParams ces_params(const Theta& theta);
ModelParams to_model(const Theta& theta);

struct PsiValue {
  double psi = 0.0;
  double psi_prime = 0.0;
};

/// psi(x) = (x + 1 - alpha)^rho / x and its derivative.
PsiValue psi_eval(double alpha, double rho, double x);

/// Minimizer m = (1-alpha)/(rho-1) of psi; only defined for rho > 1.
double psi_minimum_point(double alpha, double rho);

/// c = alpha^(-1/rho) (delta/A)^((1-rho)/rho); equals 1/alpha at rho = 1.
double c_constant(const Theta& theta);

/// beta delta (c - 1) - 1; the monetary steady state exists iff this is positive.
double mss_condition(const Theta& theta);

/// rho^rho alpha [beta A (rho-1)]^(1-rho); for rho > 1 the number of
/// non-monetary steady states is 2, 1, 0 as this is <1, =1, >1.
double nmss_existence_index(const Theta& theta);

struct MonetarySteadyState {
  double k = 0.0;
  double P = 0.0;
};

std::optional<MonetarySteadyState> mss_closed_form(const Theta& theta);

/// k - beta A (1-alpha) g(k)^rho, i.e. k - beta w(k).
double nmss_fixed_point_residual(const Theta& theta, double k);

/// Non-monetary steady-state capital stocks, ascending. Empty when none exist.
/// For rho just above 1 the smaller root can underflow to 0; see nmss_closed_form_log.
std::vector<double> nmss_closed_form(const Theta& theta);

/// The same roots as log k, which stays representable when k itself does not.
std::vector<double> nmss_closed_form_log(const Theta& theta);

struct NmssEigenvalues {
  double lambda1 = 0.0;  ///< -beta k f''(k)
  double lambda2 = 0.0;  ///< f'(k)
};

/// Throws DomainError when k is not a non-monetary steady state of theta.
NmssEigenvalues nmss_eigenvalues(const Theta& theta, double k);

/// As nmss_eigenvalues, at k = exp(log_k).
NmssEigenvalues nmss_eigenvalues_log(const Theta& theta, double log_k);

/// lambda1 implied by lambda2 at a non-monetary steady state:
/// rho beta (lambda2 - 1 + delta) / (beta (lambda2 - 1 + delta) + 1).
double lambda1_from_lambda2(const Theta& theta, double lambda2);

struct NmssRecord {
  double k = 0.0;
  double log_k = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct CdCesAnalysis {
  Theta theta;
  double c_const = 0.0;
  std::optional<double> psi_min_point;
  std::vector<NmssRecord> nmss;
  std::optional<MonetarySteadyState> mss;
};

CdCesAnalysis analyze(const Theta& theta);

}  // namespace olgdet::cdces
