#include "olgdet/reverse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "olgdet/errors.hpp"

namespace olgdet::reverse {

double construction_epsilon(double kstar, double R, double w, double c) {
  double eps = 0.5 * kstar;
  if (c < 0.0) eps = std::min(eps, 0.5 * std::min(R / std::abs(c), w / (2.0 * R)));
  return eps;
}

GeneralModel reverse_nmss_general(const GeneralTarget& t) {
  if (!(t.kstar > 0.0)) throw DomainError("reverse: kstar must be > 0");
  if (!(t.R > 0.0)) throw DomainError("reverse: R must be > 0");
  if (!(t.w > t.kstar)) throw DomainError("reverse: w must exceed kstar");
  if (!(t.c <= 0.0)) throw DomainError("reverse: c must be <= 0");

  // u'(w - s) = beta R v'(R s) at s = kstar.
  const double beta = t.u.d1(t.w - t.kstar) / (t.R * t.v.d1(t.R * t.kstar));
  LocalQuadraticParams lq{t.w, t.R, t.c, t.kstar, construction_epsilon(t.kstar, t.R, t.w, t.c)};
  return GeneralModel{beta, lq, beta > 1.0, ModelParams(Production(lq), t.u, t.v, beta)};
}

double lambda2_of_alpha(double beta, double delta, double k, double rho, double alpha) {
  return alpha / (beta * (1.0 - alpha)) * std::pow(k, 1.0 - rho) + 1.0 - delta;
}

cdces::Theta reverse_cdces(const CdcesTarget& t) {
  if (!(t.beta > 0.0 && t.beta < 1.0)) throw DomainError("reverse: beta must lie in (0,1)");
  if (!(t.delta > 0.0 && t.delta <= 1.0)) throw DomainError("reverse: delta must lie in (0,1]");
  if (!(t.k > 0.0)) throw DomainError("reverse: k must be > 0");
  if (!(t.lambda1 > 0.0)) throw DomainError("reverse: lambda1 must be > 0");
  if (!(t.lambda2 > 1.0 - t.delta)) throw DomainError("reverse: lambda2 must exceed 1 - delta");

  const double b = t.beta * (t.lambda2 - 1.0 + t.delta);
  double rho = t.lambda1 * (b + 1.0) / b;
  if (std::abs(rho - 1.0) < kCobbDouglasRhoBand) rho = 1.0;

  // lambda2 - 1 + delta = alpha/(beta(1-alpha)) k^(1-rho) gives the log-odds of alpha directly.
  const double log_k = std::log(t.k);
  const double logit = std::log(b) + (rho - 1.0) * log_k;
  const double alpha = 1.0 / (1.0 + std::exp(-logit));
  const double one_minus_alpha = 1.0 / (1.0 + std::exp(logit));
  if (!(alpha > 0.0 && alpha < 1.0) || !(one_minus_alpha > 0.0)) {
    throw DomainError("reverse: target implies alpha outside the representable range (logit " +
                      std::to_string(logit) + ")");
  }

  // k = beta A (1-alpha) g(k)^rho, using the rounded alpha so that k is a fixed point of the
  // returned parameters. Near alpha = 1 this costs accuracy in lambda2 instead.
  const double log_g = ces_log_g(alpha, rho, log_k);
  const double A = std::exp(log_k - rho * log_g - std::log(t.beta) - std::log1p(-alpha));
  cdces::Theta theta{t.beta, A, alpha, rho, t.delta};
  cdces::validate(theta);
  return theta;
}

}  // namespace olgdet::reverse
