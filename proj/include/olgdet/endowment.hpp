#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "olgdet/utility.hpp"

namespace olgdet::endowment {

/// Pure-exchange economy: endowments (a, b) for young and old, one unit of fiat asset.
struct EndowmentModel {
  double a = 1.0;
  double b = 0.0;
  double beta = 1.0;
  Utility u = Utility::log();
  Utility v = Utility::log();
};

void validate(const EndowmentModel& em);

/// -u'(a - P) + beta v'(b + P); strictly decreasing in P.
double mss_gap(const EndowmentModel& em, double P);

/// Monetary steady-state price in (0, a), if any.
std::optional<double> endow_mss(const EndowmentModel& em);

/// Slope of the price map P_{t+1} = phi(P_t) at a steady state P:
/// (u'(a-P) - u''(a-P) P) / (beta (v'(b+P) + v''(b+P) P)).
/// Throws DomainError when the denominator vanishes or v'(b+P) is unbounded.
double endow_phi_prime(const EndowmentModel& em, double P);

enum class Verdict { LocallyDeterminate, LocallyIndeterminate, Borderline };

std::string_view to_string(Verdict v);

/// |phi'| > 1 is determinate, |phi'| < 1 indeterminate, within tol_margin of 1 borderline.
Verdict verdict_from_slope(double phi_prime, double tol_margin);

struct EndowmentReport {
  std::optional<double> mss_price;
  std::optional<Verdict> nmss_class;  ///< b > 0 only
  std::optional<Verdict> mss_class;
  std::optional<double> phi_prime_at_zero;
  std::optional<double> phi_prime_at_mss;
  /// gamma_v(b+P) < 1 + b/P at the MSS: sufficient for determinacy.
  std::optional<bool> mss_rra_condition;
  std::optional<double> gamma_v_at_mss;
  std::optional<bool> scheinkman_holds;  ///< b = 0 only
  std::optional<double> scheinkman_grid_min;
};

struct ClassifyOptions {
  double tol_margin = 1e-7;
  int scheinkman_grid = 200;
  double scheinkman_z_min = 1e-12;
  /// Grid minimum of z v'(z) must exceed this fraction of its value at z = 1.
  double scheinkman_floor = 1e-3;
};

EndowmentReport endow_classify(const EndowmentModel& em, const ClassifyOptions& opts = {});

/// -u'(a - P) P + beta v'(b + P') P'.
double equilibrium_residual(const EndowmentModel& em, double P, double P_next);

struct PricePath {
  std::vector<double> prices;
  std::vector<double> residuals;  ///< residuals[t] for the step into prices[t]; [0] is zero
  bool terminated_early = false;
  std::string reason;
};

/// Forward price path from P0 in [0, a). Stops early on infeasibility (P >= a),
/// a missing successor, or a non-monotone successor map.
PricePath endow_simulate(const EndowmentModel& em, double P0, int T);

}  // namespace olgdet::endowment
