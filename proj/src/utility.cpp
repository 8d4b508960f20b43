#include "olgdet/utility.hpp"

#include <cmath>

#include "olgdet/errors.hpp"

namespace olgdet {

Utility Utility::log(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("utility scale must be positive, got " + std::to_string(scale));
  }
  Utility u;
  u.family_ = UtilityFamily::Log;
  u.gamma_ = 1.0;
  u.scale_ = scale;
  u.name_ = "log";
  return u;
}

Utility Utility::crra(double gamma, double scale) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("crra gamma must be positive, got " + std::to_string(gamma));
  }
  if (gamma == 1.0) return log(scale);
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("utility scale must be positive, got " + std::to_string(scale));
  }
  Utility u;
  u.family_ = UtilityFamily::Crra;
  u.gamma_ = gamma;
  u.scale_ = scale;
  u.name_ = "crra";
  return u;
}

Utility Utility::custom(Derivative d1, Derivative d2, std::string name) {
  if (!d1 || !d2) throw DomainError("custom utility needs both derivative evaluators");
  Utility u;
  u.family_ = UtilityFamily::Custom;
  u.gamma_ = 0.0;
  u.custom_d1_ = std::move(d1);
  u.custom_d2_ = std::move(d2);
  u.name_ = std::move(name);
  return u;
}

double Utility::d1(double x) const {
  switch (family_) {
    case UtilityFamily::Log:
      return scale_ / x;
    case UtilityFamily::Crra:
      return scale_ * std::pow(x, -gamma_);
    case UtilityFamily::Custom:
      return custom_d1_(x);
  }
  return 0.0;
}

double Utility::d2(double x) const {
  switch (family_) {
    case UtilityFamily::Log:
      return -scale_ / (x * x);
    case UtilityFamily::Crra:
      return -gamma_ * scale_ * std::pow(x, -gamma_ - 1.0);
    case UtilityFamily::Custom:
      return custom_d2_(x);
  }
  return 0.0;
}

double Utility::rra(double x) const {
  switch (family_) {
    case UtilityFamily::Log:
      return 1.0;
    case UtilityFamily::Crra:
      return gamma_;
    case UtilityFamily::Custom:
      return -x * d2(x) / d1(x);
  }
  return 0.0;
}

bool Utility::is_log() const { return family_ == UtilityFamily::Log; }

}  // namespace olgdet
