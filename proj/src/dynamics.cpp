#include "olgdet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "olgdet/roots.hpp"

namespace olgdet {

namespace {

std::string fmt_state(State s) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(k=%.17g, P=%.17g)", s.k, s.P);
  return buf;
}

}  // namespace

State step(const ModelParams& model, State xi, const StepOptions& opts) {
  if (!(xi.k > 0.0) || !std::isfinite(xi.k) || !std::isfinite(xi.P)) {
    throw StepError(StepError::Reason::Collapse, xi, "step: inadmissible state " + fmt_state(xi));
  }
  const double w = model.production.factor_prices(xi.k).w;

  auto gap = [&](double eta) {
    return eta + xi.P - model.savings(w, model.production.eval(eta).fprime).s;
  };
  auto converged = [&](double eta, double g) { return std::abs(g) <= opts.tol * std::max(1.0, eta); };

  double eta = xi.k;
  bool solved = false;
  for (int it = 0; it < opts.max_newton; ++it) {
    const ProductionValues pv = model.production.eval(eta);
    const SavingsResult sav = model.savings(w, pv.fprime);
    const double g = eta + xi.P - sav.s;
    if (converged(eta, g)) {
      solved = true;
      break;
    }
    const double slope = 1.0 - sav.s_R * pv.fdoubleprime;
    const double next = eta - g / slope;
    const double k_max = opts.k_max_factor * std::max(xi.k, 1.0);
    if (!std::isfinite(next) || next <= 0.0 || next > k_max) break;
    if (std::abs(next - eta) <= 1e-15 * eta) {
      eta = next;
      solved = converged(eta, gap(eta));
      break;
    }
    eta = next;
  }

  if (!solved) {
    // Bisection fallback on (lo, hi]; gap(eta) >= eta + P - w, so hi is above any root.
    const double lo = 1e-14 * std::max(xi.k, 1.0);
    const double hi = std::max(opts.k_max_factor * std::max(xi.k, 1.0), 2.0 * (w + std::abs(xi.P)));
    const double g_lo = gap(lo);
    if (g_lo >= 0.0) {
      throw StepError(StepError::Reason::Collapse, {lo, xi.P},
                      "step: savings cannot cover the asset at " + fmt_state(xi) +
                          "; capital would be nonpositive");
    }
    if (gap(hi) <= 0.0) {
      throw StepError(StepError::Reason::NewtonDivergence, {hi, xi.P},
                      "step: no successor below k=" + std::to_string(hi));
    }
    eta = roots::bisect(gap, lo, hi);
    if (!converged(eta, gap(eta))) {
      throw StepError(StepError::Reason::NewtonDivergence, {eta, xi.P},
                      "step: residual " + std::to_string(gap(eta)) + " above tolerance from " +
                          fmt_state(xi));
    }
  }
  return State{eta, xi.P * model.production.eval(eta).fprime};
}

StepResiduals step_residuals(const ModelParams& model, State from, State to) {
  const double w = model.production.factor_prices(from.k).w;
  const double R_next = model.production.eval(to.k).fprime;
  StepResiduals r;
  r.market = std::abs(to.k + from.P - model.savings(w, R_next).s);
  r.no_arbitrage = std::abs(to.P - from.P * R_next);
  return r;
}

double distance(State a, State b) { return std::hypot(a.k - b.k, a.P - b.P); }

std::string_view to_string(PathEnd end) {
  switch (end) {
    case PathEnd::Completed:
      return "completed";
    case PathEnd::Converged:
      return "converged";
    case PathEnd::Diverged:
      return "diverged";
    case PathEnd::Collapsed:
      return "collapsed";
    case PathEnd::SolverFailure:
      return "solver_failure";
  }
  return "completed";
}

Path simulate(const ModelParams& model, State xi0, int T, const SimulateOptions& opts) {
  if (T < 1) throw DomainError("simulate: T must be >= 1");
  if (!(xi0.k > 0.0)) throw DomainError("simulate: k0 must be > 0");
  if (!(xi0.P >= 0.0)) throw DomainError("simulate: P0 must be >= 0");

  Path path;
  path.states.reserve(static_cast<std::size_t>(T) + 1);
  path.states.push_back(xi0);
  path.residuals.push_back({});

  auto check_target = [&](int t) {
    if (!opts.target) return false;
    const double d = distance(path.states.back(), *opts.target);
    path.final_distance = d;
    if (d < opts.converge_tol && !path.converged_at) path.converged_at = t;
    if (d > opts.diverge_distance) {
      path.end = PathEnd::Diverged;
      path.reason = "left the distance-" + std::to_string(opts.diverge_distance) + " ball";
      return true;
    }
    return opts.stop_on_convergence && path.converged_at.has_value();
  };

  if (check_target(0)) {
    if (path.end != PathEnd::Diverged) path.end = PathEnd::Converged;
    return path;
  }
  for (int t = 1; t <= T; ++t) {
    State next;
    try {
      next = step(model, path.states.back(), opts.step);
    } catch (const StepError& e) {
      path.end = e.reason() == StepError::Reason::Collapse ? PathEnd::Collapsed
                                                             : PathEnd::SolverFailure;
      path.reason = e.what();
      return path;
    } catch (const std::exception& e) {
      path.end = PathEnd::SolverFailure;
      path.reason = e.what();
      return path;
    }
    path.residuals.push_back(step_residuals(model, path.states.back(), next));
    path.states.push_back(next);
    if (check_target(t)) break;
  }
  if (path.end == PathEnd::Completed && opts.target && path.final_distance &&
      *path.final_distance < opts.converge_tol) {
    path.end = PathEnd::Converged;
  } else if (path.end == PathEnd::Completed && opts.stop_on_convergence && path.converged_at) {
    path.end = PathEnd::Converged;
  }
  return path;
}

void write_path_csv(std::ostream& os, const Path& path) {
  os << "t,k,P,residual1,residual2\n";
  char buf[160];
  for (std::size_t t = 0; t < path.states.size(); ++t) {
    const State& s = path.states[t];
    const StepResiduals& r = path.residuals[t];
    std::snprintf(buf, sizeof buf, "%zu,%.16e,%.16e,%.16e,%.16e\n", t, s.k, s.P, r.market,
                  r.no_arbitrage);
    os << buf;
  }
}

namespace {

struct TrialOutcome {
  int direction = 0;  ///< +1 exits above, -1 below, 0 stayed in the window for the horizon
  double min_distance = 0.0;
  int steps_to_min = 0;
};

TrialOutcome shoot_trial(const ModelParams& model, State ss, State start, double window, int horizon) {
  TrialOutcome out;
  State cur = start;
  out.min_distance = distance(cur, ss);
  auto side = [&ss](State s) { return s.P >= ss.P ? 1 : -1; };
  if (out.min_distance > window) {
    out.direction = side(cur);
    return out;
  }
  for (int t = 1; t <= horizon; ++t) {
    try {
      cur = step(model, cur);
    } catch (const StepError& e) {
      out.direction = side(e.last_iterate());
      return out;
    }
    const double d = distance(cur, ss);
    if (d < out.min_distance) {
      out.min_distance = d;
      out.steps_to_min = t;
    }
    if (d > window) {
      out.direction = side(cur);
      return out;
    }
  }
  return out;
}

}  // namespace

std::optional<ShootResult> shoot(const ModelParams& model, State ss, double k0,
                                 const ShootOptions& opts) {
  const Classification cls = classify(jacobian_at(model, ss));
  if (cls.kind != StabilityKind::LocallyDeterminateSaddle) {
    throw DomainError("shoot: steady state is " + std::string(to_string(cls.kind)) + ", not a saddle");
  }
  if (!(k0 > 0.0)) throw DomainError("shoot: k0 must be > 0");
  const double radius = opts.radius > 0.0 ? opts.radius : std::max(std::abs(k0 - ss.k), 1e-3);
  if (std::abs(k0 - ss.k) > radius) throw DomainError("shoot: k0 lies outside the local window");
  const double window = 2.0 * radius;

  double lo = opts.bracket ? opts.bracket->first : std::max(0.0, ss.P - window);
  double hi = opts.bracket ? opts.bracket->second : ss.P + window;
  if (!(lo < hi)) throw DomainError("shoot: bracket must satisfy P_lo < P_hi");

  auto trial = [&](double P0) { return shoot_trial(model, ss, {k0, P0}, window, opts.horizon); };
  auto finish = [&](double P0, int bisections) -> std::optional<ShootResult> {
    const TrialOutcome check = trial(P0);
    if (check.min_distance > opts.terminal_tol) return std::nullopt;
    return ShootResult{P0, check.min_distance, check.steps_to_min, bisections};
  };

  const TrialOutcome at_lo = trial(lo);
  if (at_lo.direction == 0) return finish(lo, 0);
  const TrialOutcome at_hi = trial(hi);
  if (at_hi.direction == 0) return finish(hi, 0);
  if (at_lo.direction == at_hi.direction) {
    throw SolverError("shoot: paths leave the window on the same side at both bracket ends");
  }

  int it = 0;
  double mid = 0.5 * (lo + hi);
  for (; it < opts.max_bisections; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const int dir = trial(mid).direction;
    if (dir == 0) break;
    if (dir == at_lo.direction) lo = mid; else hi = mid;
  }
  return finish(mid, it);
}

Lcg64 Lcg64::for_sample(std::uint64_t seed, std::uint64_t i) {
  Lcg64 g(seed + (i + 1) * 0x9E3779B97F4A7C15ULL);
  for (int d = 0; d < 4; ++d) g.next();
  return g;
}

ProbeResult basin_probe(const ModelParams& model, State ss, const ProbeOptions& opts) {
  if (!(opts.radius > 0.0)) throw DomainError("basin_probe: radius must be > 0");
  if (opts.n_samples < 0) throw DomainError("basin_probe: n_samples must be >= 0");
  if (!(ss.k > opts.radius)) throw DomainError("basin_probe: radius exceeds the steady-state capital");

  ProbeResult out;
  out.samples.resize(static_cast<std::size_t>(opts.n_samples));

  auto run_sample = [&](std::size_t i) {
    Lcg64 rng = Lcg64::for_sample(opts.seed, i);
    double dx = 0.0;
    double dy = 0.0;
    do {
      dx = 2.0 * rng.uniform() - 1.0;
      dy = 2.0 * rng.uniform() - 1.0;
    } while (dx * dx + dy * dy > 1.0);
    State start{ss.k + opts.radius * dx, ss.P + opts.radius * dy};
    if (start.P < 0.0) start.P = ss.P - opts.radius * dy;

    SimulateOptions sim;
    sim.target = ss;
    sim.stop_on_convergence = true;
    const Path path = simulate(model, start, opts.horizon, sim);
    ProbeSample& s = out.samples[i];
    s.initial = start;
    s.converged = path.end == PathEnd::Converged;
    s.steps = static_cast<int>(path.states.size()) - 1;
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max(1, opts.n_samples));
  if (threads <= 1) {
    for (std::size_t i = 0; i < out.samples.size(); ++i) run_sample(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned tid = 0; tid < threads; ++tid) {
      pool.emplace_back([&, tid] {
        for (std::size_t i = tid; i < out.samples.size(); i += threads) run_sample(i);
      });
    }
  }

  for (const ProbeSample& s : out.samples) out.n_converged += s.converged ? 1 : 0;
  out.fraction_converged =
      opts.n_samples > 0 ? static_cast<double>(out.n_converged) / opts.n_samples : 0.0;
  return out;
}

}  // namespace olgdet
