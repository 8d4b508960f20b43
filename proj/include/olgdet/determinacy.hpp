#pragma once

#include <array>
#include <complex>
#include <string_view>

#include "olgdet/model.hpp"

namespace olgdet {

/// (capital, asset price).
struct State {
  double k = 0.0;
  double P = 0.0;
};

/// Derivative of next-period (k, P) with respect to current (k, P).
struct Jacobian2x2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }
  Jacobian2x2 transposed() const { return {a11, a21, a12, a22}; }
};

enum class StabilityKind {
  LocallyIndeterminateSink,
  LocallyDeterminateSaddle,
  UnstableSource,
  Borderline,
};

std::string_view to_string(StabilityKind kind);

struct Classification {
  StabilityKind kind = StabilityKind::Borderline;
  /// Roots of x^2 - t x + d, ordered by modulus (ascending).
  std::array<std::complex<double>, 2> eigenvalues{};
  bool complex_pair = false;

  double modulus(int i) const { return std::abs(eigenvalues[i]); }
};

inline constexpr double kDefaultTolMargin = 1e-7;

struct JacobianOptions {
  double steady_tol = 1e-8;      ///< relative steady-state residual accepted
  double singular_tol = 1e-12;   ///< |1 - s_R f''| below this is singular
};

/// Linearization of the equilibrium map at a steady state (k, P).
/// Throws DomainError for non-steady input, SolverError when D_eta Phi is singular.
Jacobian2x2 jacobian_at(const ModelParams& model, State ss, const JacobianOptions& opts = {});

/// Eigenvalues of J via its trace and determinant, then sink / saddle / source / borderline.
Classification classify(const Jacobian2x2& J, double tol_margin = kDefaultTolMargin);

/// Eigenvalues of [[a, b], [c, d]] given only t = trace, d = det.
std::array<std::complex<double>, 2> eigenvalues_from_trace_det(double trace, double det);

struct SaddleCertificate {
  double trace = 0.0;
  double det = 0.0;
  double p_at_one = 0.0;       ///< 1 - t + d
  double one_minus_sR_c = 0.0;  ///< 1 - s_R f''(k)
  double fdoubleprime = 0.0;
  double gamma_v = 0.0;        ///< relative risk aversion of v at z = R s
  bool d_positive = false;
  bool p1_negative = false;
  bool hypothesis_1_minus_sRc_positive = false;  ///< f'' < 0 and 1 - s_R f'' > 0
  bool gamma_v_at_most_one = false;
  bool certified = false;
};

/// Checks the trace/determinant inequalities that force 0 < lambda_min < 1 < lambda_max
/// at a monetary steady state. Throws DomainError if ss is not monetary.
SaddleCertificate mss_saddle_certificate(const ModelParams& model, State ss,
                                         const JacobianOptions& opts = {});

}  // namespace olgdet
