#include "olgdet/production.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "olgdet/errors.hpp"

namespace olgdet {

namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

void validate(const CesParams& p) {
  if (!finite_positive(p.A)) throw DomainError("CES: A must be > 0, got " + std::to_string(p.A));
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) {
    throw DomainError("CES: alpha must lie in (0,1), got " + std::to_string(p.alpha));
  }
  if (!finite_positive(p.rho)) throw DomainError("CES: rho must be > 0, got " + std::to_string(p.rho));
  if (!(p.delta > 0.0 && p.delta <= 1.0)) {
    throw DomainError("CES: delta must lie in (0,1], got " + std::to_string(p.delta));
  }
}

void validate(LocalQuadraticParams& p) {
  if (!finite_positive(p.w)) throw DomainError("local quadratic: w must be > 0");
  if (!finite_positive(p.R)) throw DomainError("local quadratic: R must be > 0");
  if (!(p.c <= 0.0) || !std::isfinite(p.c)) throw DomainError("local quadratic: c must be <= 0");
  if (!finite_positive(p.kstar)) throw DomainError("local quadratic: kstar must be > 0");
  if (p.epsilon == 0.0) p.epsilon = default_local_quadratic_epsilon(p.w, p.R, p.c, p.kstar);
  if (!finite_positive(p.epsilon)) throw DomainError("local quadratic: epsilon must be > 0");
  if (p.epsilon >= p.kstar) throw DomainError("local quadratic: epsilon must be < kstar");
  if (!(p.R + p.c * p.epsilon > 0.0)) {
    throw DomainError("local quadratic: f' turns nonpositive inside the window (R + c*epsilon <= 0)");
  }
}

ProductionValues eval_ces(const CesParams& p, double k) {
  ProductionValues out;
  const double depreciation = 1.0 - p.delta;
  if (std::abs(p.rho - 1.0) < kCobbDouglasRhoBand) {
    const double ka = std::pow(k, p.alpha);
    out.f = p.A * ka + depreciation * k;
    out.fprime = p.A * p.alpha * ka / k + depreciation;
    out.fdoubleprime = p.A * p.alpha * (p.alpha - 1.0) * ka / (k * k);
    return out;
  }
  const double log_k = std::log(k);
  const double log_g = ces_log_g(p.alpha, p.rho, log_k);
  out.f = p.A * std::exp(log_g) + depreciation * k;
  out.fprime = p.A * p.alpha * std::exp(p.rho * (log_g - log_k)) + depreciation;
  out.fdoubleprime = -p.A * p.rho * p.alpha * (1.0 - p.alpha) *
                     std::exp((2.0 * p.rho - 1.0) * log_g - (p.rho + 1.0) * log_k);
  return out;
}

ProductionValues eval_local_quadratic(const LocalQuadraticParams& p, double k) {
  auto quad = [&p](double x) {
    const double d = x - p.kstar;
    return ProductionValues{p.w + p.R * x + 0.5 * p.c * d * d, p.R + p.c * d, p.c};
  };
  const double lo = p.kstar - p.epsilon;
  const double hi = p.kstar + p.epsilon;
  if (k >= lo && k <= hi) return quad(k);
  const double edge = k < lo ? lo : hi;
  const ProductionValues e = quad(edge);
  return {e.f + e.fprime * (k - edge), e.fprime, 0.0};
}

}  // namespace

double default_local_quadratic_epsilon(double w, double R, double c, double kstar) {
  const double ac = std::abs(c);
  double eps = std::min(kstar, w / (2.0 * ac + 1.0)) / 4.0;
  if (ac > 0.0) eps = std::min(eps, R / (2.0 * ac));
  return eps;
}

double ces_log_g(double alpha, double rho, double log_k) {
  const double e = 1.0 - rho;
  if (e == 0.0) return alpha * log_k;
  const double z = e * log_k;
  // ln(alpha e^z + 1 - alpha); factor out e^z when it could overflow.
  if (z > 0.0) return (z + std::log(alpha) + std::log1p((1.0 - alpha) / alpha * std::exp(-z))) / e;
  return std::log1p(alpha * std::expm1(z)) / e;
}

Production::Production(CesParams p) : params_(p) { validate(std::get<CesParams>(params_)); }

Production::Production(LocalQuadraticParams p) : params_(p) {
  validate(std::get<LocalQuadraticParams>(params_));
}

ProductionValues Production::eval(double k) const {
  if (!finite_positive(k)) throw DomainError("production: capital must be > 0, got " + std::to_string(k));
  if (const auto* ces = std::get_if<CesParams>(&params_)) return eval_ces(*ces, k);
  return eval_local_quadratic(std::get<LocalQuadraticParams>(params_), k);
}

FactorPrices Production::factor_prices(double k) const {
  const ProductionValues v = eval(k);
  FactorPrices out{v.fprime, v.f - k * v.fprime};
  if (const auto* ces = std::get_if<CesParams>(&params_)) {
    // w = A (1 - alpha) g^rho, free of the cancellation in f - k f'.
    const double log_k = std::log(k);
    const double log_g = std::abs(ces->rho - 1.0) < kCobbDouglasRhoBand
                             ? ces->alpha * log_k
                             : ces_log_g(ces->alpha, ces->rho, log_k);
    const double rho = std::abs(ces->rho - 1.0) < kCobbDouglasRhoBand ? 1.0 : ces->rho;
    out.w = ces->A * (1.0 - ces->alpha) * std::exp(rho * log_g);
  }
  if (!(out.w > 0.0)) {
    throw DomainError("degenerate economy: nonpositive wage " + std::to_string(out.w) +
                      " at k=" + std::to_string(k));
  }
  return out;
}

ProductionValues production_eval(const Production& prod, double k) { return prod.eval(k); }

FactorPrices factor_prices(const Production& prod, double k) { return prod.factor_prices(k); }

}  // namespace olgdet
