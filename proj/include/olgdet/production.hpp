#pragma once

#include <variant>

namespace olgdet {

/// CES technology per unit of labor:
///   f(k) = A (alpha k^(1-rho) + 1 - alpha)^(1/(1-rho)) + (1-delta) k,   rho != 1
///   f(k) = A k^alpha + (1-delta) k,                                     rho == 1
struct CesParams {
  double A = 1.0;
  double alpha = 0.3;
  double rho = 1.0;
  double delta = 1.0;
};

/// Quadratic around kstar with linear extrapolation outside [kstar - epsilon, kstar + epsilon]:
///   f(k) = w + R k + (c/2)(k - kstar)^2   on the window.
/// So f(kstar) = w + R kstar, f'(kstar) = R, f''(kstar) = c.
struct LocalQuadraticParams {
  double w = 1.0;
  double R = 1.0;
  double c = 0.0;
  double kstar = 1.0;
  double epsilon = 0.0;
};

/// Default window half-width for a local quadratic: min(kstar, w/(2|c|+1))/4,
/// shrunk further when c < 0 so that f' >= R/2 on the window.
double default_local_quadratic_epsilon(double w, double R, double c, double kstar);

struct ProductionValues {
  double f = 0.0;
  double fprime = 0.0;
  double fdoubleprime = 0.0;
};

struct FactorPrices {
  double R = 0.0;
  double w = 0.0;
};

/// Rho within this distance of 1 is evaluated with the Cobb-Douglas formula.
inline constexpr double kCobbDouglasRhoBand = 1e-9;

class Production {
 public:
  /// Validates the parameters; throws DomainError on out-of-range input.
  explicit Production(CesParams p);
  explicit Production(LocalQuadraticParams p);

  ProductionValues eval(double k) const;
  FactorPrices factor_prices(double k) const;

  bool is_ces() const { return std::holds_alternative<CesParams>(params_); }
  const CesParams& ces() const { return std::get<CesParams>(params_); }
  const LocalQuadraticParams& local_quadratic() const {
    return std::get<LocalQuadraticParams>(params_);
  }

 private:
  std::variant<CesParams, LocalQuadraticParams> params_;
};

/// log g(k) with g(k) = (alpha k^(1-rho) + 1 - alpha)^(1/(1-rho)), accurate for rho near 1
/// (tends to alpha log k).
double ces_log_g(double alpha, double rho, double log_k);

ProductionValues production_eval(const Production& prod, double k);
FactorPrices factor_prices(const Production& prod, double k);

}  // namespace olgdet
