#pragma once

#include <functional>
#include <string>

namespace olgdet {

enum class UtilityFamily { Log, Crra, Custom };

/// Period utility described by its first and second derivatives.
///
/// Log and CRRA carry a positive scale, so `Utility::log(1 - beta)` is the
/// young-age term of Cobb-Douglas lifetime utility. Custom utilities take
/// arbitrary derivative evaluators; the caller is responsible for u' > 0,
/// u'' < 0 and the Inada condition.
class Utility {
 public:
  using Derivative = std::function<double(double)>;

  static Utility log(double scale = 1.0);
  static Utility crra(double gamma, double scale = 1.0);
  static Utility custom(Derivative d1, Derivative d2, std::string name = "custom");

  double d1(double x) const;
  double d2(double x) const;

  /// Relative risk aversion -x u''(x) / u'(x).
  double rra(double x) const;

  UtilityFamily family() const { return family_; }
  double gamma() const { return gamma_; }
  double scale() const { return scale_; }
  const std::string& name() const { return name_; }

  /// True for log and CRRA with gamma == 1.
  bool is_log() const;

 private:
  Utility() = default;

  UtilityFamily family_ = UtilityFamily::Log;
  double gamma_ = 1.0;
  double scale_ = 1.0;
  Derivative custom_d1_;
  Derivative custom_d2_;
  std::string name_;
};

}  // namespace olgdet
