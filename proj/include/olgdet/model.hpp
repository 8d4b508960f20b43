#pragma once

#include "olgdet/production.hpp"
#include "olgdet/savings.hpp"
#include "olgdet/utility.hpp"

namespace olgdet {

/// One production economy: technology, preferences U(y,z) = u(y) + beta v(z).
struct ModelParams {
  Production production;
  Utility u;
  Utility v;
  double beta;

  ModelParams(Production prod, Utility young, Utility old, double discount);

  /// Savings of the young facing wage w and next-period return R.
  SavingsResult savings(double w, double R, const SavingsOptions& opts = {}) const;

  /// u = (1-beta) log, v = log: the preferences under which s(w,R) = beta w.
  bool has_cobb_douglas_utility() const;
};

/// Cobb-Douglas lifetime utility (1-beta) log y + beta log z.
ModelParams cobb_douglas_model(Production prod, double beta);

}  // namespace olgdet
