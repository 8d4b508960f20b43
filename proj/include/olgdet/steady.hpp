#pragma once

#include <optional>
#include <string>
#include <vector>

#include "olgdet/determinacy.hpp"
#include "olgdet/model.hpp"

namespace olgdet {

enum class SteadyKind { NonMonetary, Monetary };

std::string_view to_string(SteadyKind kind);

struct SteadyState {
  SteadyKind kind = SteadyKind::NonMonetary;
  State state;
  std::optional<Jacobian2x2> jacobian;  ///< empty when D_eta Phi is singular
  Classification classification;
  /// NMSS: the diagonal entries (a11, a22). MSS: the eigenvalues in ascending modulus
  /// (moduli when complex).
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::optional<SaddleCertificate> certificate;
};

/// Search window for the generic (model-agnostic) steady-state solver.
struct SteadySearchOptions {
  double k_min = 1e-8;
  double k_max = 1e8;
  int grid_points = 4000;  ///< log-spaced scan for sign changes
  double tol_margin = kDefaultTolMargin;
};

/// Roots of k = s(w(k), f'(k)), ascending. Roots closer than one grid cell that
/// do not change sign (tangencies) are not detected.
std::vector<double> find_nmss_capital(const ModelParams& model, const SteadySearchOptions& opts = {});

/// Solves f'(k) = 1 and keeps it if P = s(w(k), 1) - k > 0.
std::optional<State> find_mss(const ModelParams& model, const SteadySearchOptions& opts = {});

/// Jacobian, classification, and (for P > 0) the saddle certificate at a known steady state.
SteadyState describe_steady_state(const ModelParams& model, State ss,
                                  double tol_margin = kDefaultTolMargin);

/// All steady states found in the search window: NMSS ascending in k, then the MSS.
std::vector<SteadyState> find_steady_states(const ModelParams& model,
                                            const SteadySearchOptions& opts = {});

}  // namespace olgdet
