#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "olgdet/determinacy.hpp"
#include "olgdet/errors.hpp"
#include "olgdet/model.hpp"

namespace olgdet {

/// Raised by `step` when no admissible successor is found.
class StepError : public SolverError {
 public:
  enum class Reason { NewtonDivergence, Collapse };

  StepError(Reason reason, State last_iterate, const std::string& what)
      : SolverError(what), reason_(reason), last_(last_iterate) {}

  Reason reason() const { return reason_; }
  State last_iterate() const { return last_; }

 private:
  Reason reason_;
  State last_;
};

struct StepOptions {
  double tol = 1e-13;  ///< |Phi_1| relative to max(1, k_next)
  int max_newton = 60;
  double k_max_factor = 1e3;  ///< bisection fallback searches (0, k_max_factor * max(k, 1)]
};

/// Solves Phi(xi, eta) = 0 for eta:
///   eta_k + xi_P = s(w(xi_k), f'(eta_k)),   eta_P = xi_P f'(eta_k).
/// The second equation is substituted into the first, leaving a scalar Newton solve in eta_k.
State step(const ModelParams& model, State xi, const StepOptions& opts = {});

struct StepResiduals {
  double market = 0.0;         ///< |k' + P - s(w(k), f'(k'))|
  double no_arbitrage = 0.0;   ///< |P' - P f'(k')|
};

StepResiduals step_residuals(const ModelParams& model, State from, State to);

double distance(State a, State b);

enum class PathEnd { Completed, Converged, Diverged, Collapsed, SolverFailure };

std::string_view to_string(PathEnd end);

struct Path {
  std::vector<State> states;
  std::vector<StepResiduals> residuals;  ///< residuals[t] belongs to the step into states[t]; [0] is zero
  PathEnd end = PathEnd::Completed;
  std::string reason;
  std::optional<int> converged_at;      ///< first t with distance to target below tolerance
  std::optional<double> final_distance;  ///< to the target, when one was supplied
};

struct SimulateOptions {
  std::optional<State> target;
  double converge_tol = 1e-10;
  double diverge_distance = 10.0;
  bool stop_on_convergence = false;
  StepOptions step;
};

/// Iterates `step` up to T times. Failures truncate the path and set `end`/`reason`.
Path simulate(const ModelParams& model, State xi0, int T, const SimulateOptions& opts = {});

/// CSV with header t,k,P,residual1,residual2.
void write_path_csv(std::ostream& os, const Path& path);

struct ShootOptions {
  double radius = 0.0;  ///< 0 picks max(|k0 - k*|, 1e-3); paths exit at distance 2*radius
  int horizon = 400;
  std::optional<std::pair<double, double>> bracket;  ///< default (max(0, P*-2r), P*+2r)
  double terminal_tol = 1e-6;
  int max_bisections = 200;
};

struct ShootResult {
  double P0 = 0.0;
  double min_distance = 0.0;  ///< closest approach to the steady state along the verified path
  int steps_to_min = 0;
  int bisections = 0;
};

/// Finds the initial asset price on the stable manifold of a saddle steady state by
/// bisecting on the direction in which trial paths leave the window.
/// Throws DomainError if ss is not a saddle and SolverError if the bracket shows no
/// sign change; returns nullopt if the bisection result fails to approach ss within
/// terminal_tol.
std::optional<ShootResult> shoot(const ModelParams& model, State ss, double k0,
                                 const ShootOptions& opts = {});

/// 64-bit LCG (Knuth MMIX constants): x <- 6364136223846793005 x + 1442695040888963407.
class Lcg64 {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = kMultiplier * state_ + kIncrement;
    return state_;
  }

  /// Top 53 bits mapped to [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Independent stream for sample i: seed + (i+1) * 0x9E3779B97F4A7C15, four draws discarded.
  static Lcg64 for_sample(std::uint64_t seed, std::uint64_t i);

 private:
  std::uint64_t state_;
};

struct ProbeSample {
  State initial;
  bool converged = false;
  int steps = 0;
};

struct ProbeOptions {
  double radius = 1e-3;
  int n_samples = 500;
  int horizon = 400;
  std::uint64_t seed = 1;
  unsigned threads = 0;  ///< 0 = hardware concurrency; results do not depend on it
};

struct ProbeResult {
  double fraction_converged = 0.0;
  int n_converged = 0;
  std::vector<ProbeSample> samples;
};

/// Monte-Carlo estimate of the local basin of ss: initial states uniform on the disk of
/// the given radius intersected with P >= 0 (reflected in P), each simulated for `horizon` steps.
ProbeResult basin_probe(const ModelParams& model, State ss, const ProbeOptions& opts = {});

}  // namespace olgdet
