#pragma once

#include "olgdet/cdces.hpp"
#include "olgdet/model.hpp"

namespace olgdet::reverse {

/// Desired non-monetary steady state for arbitrary preferences.
struct GeneralTarget {
  Utility u = Utility::log();
  Utility v = Utility::log();
  double kstar = 1.0;
  double R = 1.0;
  double w = 2.0;  ///< must exceed kstar
  double c = 0.0;  ///< f''(kstar), <= 0
};

struct GeneralModel {
  double beta = 0.0;
  LocalQuadraticParams production;
  bool beta_exceeds_one = false;
  ModelParams model;
};

/// Picks beta so that s(w, R) = kstar, and a local-quadratic technology with
/// f(kstar) = w + R kstar, f'(kstar) = R, f''(kstar) = c. Then (kstar, 0) is a
/// non-monetary steady state.
GeneralModel reverse_nmss_general(const GeneralTarget& target);

/// Window half-width used by the construction: 0.5 min(R/|c|, w/(2R)) for c < 0,
/// always capped at kstar/2.
double construction_epsilon(double kstar, double R, double w, double c);

/// Desired non-monetary steady state and eigenvalues for the Cobb-Douglas-CES economy.
struct CdcesTarget {
  double beta = 0.5;
  double delta = 1.0;
  double k = 1.0;
  double lambda1 = 1.0;  ///< > 0
  double lambda2 = 1.0;  ///< > 1 - delta
};

/// Unique (A, alpha, rho) with NMSS capital k and eigenvalues (lambda1, lambda2).
cdces::Theta reverse_cdces(const CdcesTarget& target);

/// lambda2 as a function of alpha for fixed (beta, delta, k, rho):
/// alpha/(beta(1-alpha)) k^(1-rho) + 1 - delta. Strictly increasing on (0,1).
double lambda2_of_alpha(double beta, double delta, double k, double rho, double alpha);

}  // namespace olgdet::reverse
