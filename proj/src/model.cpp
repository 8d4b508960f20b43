#include "olgdet/model.hpp"

#include <cmath>
#include <string>

#include "olgdet/errors.hpp"

namespace olgdet {

ModelParams::ModelParams(Production prod, Utility young, Utility old, double discount)
    : production(std::move(prod)), u(std::move(young)), v(std::move(old)), beta(discount) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("beta must be > 0, got " + std::to_string(beta));
  }
}

SavingsResult ModelParams::savings(double w, double R, const SavingsOptions& opts) const {
  return solve_savings(u, v, beta, w, R, opts);
}

bool ModelParams::has_cobb_douglas_utility() const {
  if (!u.is_log() || !v.is_log()) return false;
  return std::abs(u.scale() - (1.0 - beta)) <= 1e-14 && std::abs(v.scale() - 1.0) <= 1e-14;
}

ModelParams cobb_douglas_model(Production prod, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw DomainError("Cobb-Douglas utility needs beta in (0,1), got " + std::to_string(beta));
  }
  return ModelParams(std::move(prod), Utility::log(1.0 - beta), Utility::log(1.0), beta);
}

}  // namespace olgdet
