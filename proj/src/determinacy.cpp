#include "olgdet/determinacy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "olgdet/errors.hpp"

namespace olgdet {

namespace {

struct LocalTerms {
  ProductionValues prod;
  FactorPrices prices;
  SavingsResult sav;
};

LocalTerms local_terms(const ModelParams& model, State ss, const JacobianOptions& opts) {
  if (!(ss.k > 0.0) || !std::isfinite(ss.k)) throw DomainError("steady state needs k > 0");
  if (!(ss.P >= 0.0) || !std::isfinite(ss.P)) throw DomainError("steady state needs P >= 0");
  LocalTerms out;
  out.prod = model.production.eval(ss.k);
  out.prices = model.production.factor_prices(ss.k);
  out.sav = model.savings(out.prices.w, out.prices.R);

  const double market = ss.k + ss.P - out.sav.s;
  if (std::abs(market) > opts.steady_tol * std::max(1.0, ss.k)) {
    throw DomainError("(k=" + std::to_string(ss.k) + ", P=" + std::to_string(ss.P) +
                      ") is not a steady state: k + P - s = " + std::to_string(market));
  }
  if (ss.P > 0.0 && std::abs(out.prices.R - 1.0) > opts.steady_tol) {
    throw DomainError("monetary steady state needs f'(k) = 1, got " + std::to_string(out.prices.R));
  }
  return out;
}

}  // namespace

std::string_view to_string(StabilityKind kind) {
  switch (kind) {
    case StabilityKind::LocallyIndeterminateSink:
      return "locally_indeterminate_sink";
    case StabilityKind::LocallyDeterminateSaddle:
      return "locally_determinate_saddle";
    case StabilityKind::UnstableSource:
      return "unstable_source";
    case StabilityKind::Borderline:
      return "borderline";
  }
  return "borderline";
}

Jacobian2x2 jacobian_at(const ModelParams& model, State ss, const JacobianOptions& opts) {
  const LocalTerms lt = local_terms(model, ss, opts);
  const double fp = lt.prod.fprime;
  const double fpp = lt.prod.fdoubleprime;
  const double denom = 1.0 - lt.sav.s_R * fpp;
  if (std::abs(denom) < opts.singular_tol) {
    throw SolverError("D_eta Phi is singular at the steady state (1 - s_R f'' = " +
                      std::to_string(denom) + ")");
  }
  const double swk = lt.sav.s_w * ss.k;
  Jacobian2x2 J;
  J.a11 = -swk * fpp / denom;
  J.a12 = -1.0 / denom;
  J.a21 = -swk * ss.P * fpp * fpp / denom;
  J.a22 = (denom * fp - ss.P * fpp) / denom;
  return J;
}

std::array<std::complex<double>, 2> eigenvalues_from_trace_det(double t, double d) {
  const double disc = t * t - 4.0 * d;
  std::array<std::complex<double>, 2> ev;
  if (disc >= 0.0) {
    const double q = 0.5 * (t + std::copysign(std::sqrt(disc), t));
    if (q == 0.0) {
      ev = {0.0, 0.0};
    } else {
      ev = {q, d / q};
    }
  } else {
    const double im = 0.5 * std::sqrt(-disc);
    ev = {std::complex<double>(0.5 * t, -im), std::complex<double>(0.5 * t, im)};
  }
  if (std::abs(ev[1]) < std::abs(ev[0]) ||
      (std::abs(ev[1]) == std::abs(ev[0]) && ev[1].real() < ev[0].real())) {
    std::swap(ev[0], ev[1]);
  }
  return ev;
}

Classification classify(const Jacobian2x2& J, double tol_margin) {
  Classification out;
  out.eigenvalues = eigenvalues_from_trace_det(J.trace(), J.det());
  out.complex_pair = out.eigenvalues[0].imag() != 0.0;
  const double small = out.modulus(0);
  const double large = out.modulus(1);
  if (std::abs(small - 1.0) < tol_margin || std::abs(large - 1.0) < tol_margin) {
    out.kind = StabilityKind::Borderline;
  } else if (large < 1.0) {
    out.kind = StabilityKind::LocallyIndeterminateSink;
  } else if (small > 1.0) {
    out.kind = StabilityKind::UnstableSource;
  } else {
    out.kind = StabilityKind::LocallyDeterminateSaddle;
  }
  return out;
}

SaddleCertificate mss_saddle_certificate(const ModelParams& model, State ss,
                                         const JacobianOptions& opts) {
  if (!(ss.P > 0.0)) throw DomainError("saddle certificate needs a monetary steady state (P > 0)");
  const LocalTerms lt = local_terms(model, ss, opts);
  const double c = lt.prod.fdoubleprime;
  SaddleCertificate cert;
  cert.fdoubleprime = c;
  cert.one_minus_sR_c = 1.0 - lt.sav.s_R * c;
  cert.trace = 1.0 - (lt.sav.s_w * ss.k + ss.P) * c / cert.one_minus_sR_c;
  cert.det = -lt.sav.s_w * ss.k * c / cert.one_minus_sR_c;
  cert.p_at_one = ss.P * c / cert.one_minus_sR_c;
  cert.gamma_v = model.v.rra(lt.prices.R * lt.sav.s);
  cert.d_positive = cert.det > 0.0;
  cert.p1_negative = cert.p_at_one < 0.0;
  cert.hypothesis_1_minus_sRc_positive = c < 0.0 && cert.one_minus_sR_c > 0.0;
  cert.gamma_v_at_most_one = cert.gamma_v <= 1.0;
  cert.certified = cert.d_positive && cert.p1_negative && cert.hypothesis_1_minus_sRc_positive;
  return cert;
}

}  // namespace olgdet
