#include "olgdet/endowment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "olgdet/errors.hpp"
#include "olgdet/roots.hpp"

namespace olgdet::endowment {

void validate(const EndowmentModel& em) {
  if (!(em.a > 0.0) || !std::isfinite(em.a)) throw DomainError("endowment: a must be > 0");
  if (!(em.b >= 0.0) || !std::isfinite(em.b)) throw DomainError("endowment: b must be >= 0");
  if (!(em.beta > 0.0) || !std::isfinite(em.beta)) throw DomainError("endowment: beta must be > 0");
}

double mss_gap(const EndowmentModel& em, double P) {
  return -em.u.d1(em.a - P) + em.beta * em.v.d1(em.b + P);
}

std::optional<double> endow_mss(const EndowmentModel& em) {
  validate(em);
  if (em.b > 0.0 && !(em.u.d1(em.a) < em.beta * em.v.d1(em.b))) return std::nullopt;
  const double lo = 1e-14 * em.a;
  const double hi = em.a * (1.0 - 1e-14);
  auto gap = [&em](double P) { return mss_gap(em, P); };
  if (!(gap(lo) > 0.0) || !(gap(hi) < 0.0)) return std::nullopt;
  return roots::bisect(gap, lo, hi);
}

double endow_phi_prime(const EndowmentModel& em, double P) {
  validate(em);
  if (!(P >= 0.0 && P < em.a)) throw DomainError("phi': price must lie in [0, a)");
  const double z = em.b + P;
  if (!(z > 0.0)) throw DomainError("phi': v'(b + P) is unbounded at b + P = 0");
  const double y = em.a - P;
  const double numer = em.u.d1(y) - em.u.d2(y) * P;
  const double denom = em.beta * (em.v.d1(z) + em.v.d2(z) * P);
  if (std::abs(denom) <= 1e-300 || !std::isfinite(numer / denom)) {
    throw DomainError("phi': Phi_eta vanishes at P=" + std::to_string(P) + " (borderline)");
  }
  return numer / denom;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::LocallyDeterminate:
      return "locally_determinate";
    case Verdict::LocallyIndeterminate:
      return "locally_indeterminate";
    case Verdict::Borderline:
      return "borderline";
  }
  return "borderline";
}

Verdict verdict_from_slope(double phi_prime, double tol_margin) {
  const double m = std::abs(phi_prime);
  if (std::abs(m - 1.0) < tol_margin) return Verdict::Borderline;
  return m > 1.0 ? Verdict::LocallyDeterminate : Verdict::LocallyIndeterminate;
}

EndowmentReport endow_classify(const EndowmentModel& em, const ClassifyOptions& opts) {
  validate(em);
  EndowmentReport rep;
  rep.mss_price = endow_mss(em);

  if (em.b > 0.0) {
    rep.phi_prime_at_zero = endow_phi_prime(em, 0.0);
    rep.nmss_class = verdict_from_slope(*rep.phi_prime_at_zero, opts.tol_margin);
  } else {
    double grid_min = INFINITY;
    const double log_lo = std::log(opts.scheinkman_z_min);
    for (int i = 0; i < opts.scheinkman_grid; ++i) {
      const double z = std::exp(log_lo * (1.0 - static_cast<double>(i) / (opts.scheinkman_grid - 1)));
      grid_min = std::min(grid_min, z * em.v.d1(z));
    }
    rep.scheinkman_grid_min = grid_min;
    switch (em.v.family()) {
      case UtilityFamily::Log:
        rep.scheinkman_holds = true;
        break;
      case UtilityFamily::Crra:
        rep.scheinkman_holds = em.v.gamma() >= 1.0;
        break;
      case UtilityFamily::Custom:
        rep.scheinkman_holds = grid_min > opts.scheinkman_floor * em.v.d1(1.0);
        break;
    }
    if (*rep.scheinkman_holds) rep.nmss_class = Verdict::LocallyDeterminate;
  }

  if (rep.mss_price) {
    const double P = *rep.mss_price;
    try {
      rep.phi_prime_at_mss = endow_phi_prime(em, P);
      rep.mss_class = verdict_from_slope(*rep.phi_prime_at_mss, opts.tol_margin);
    } catch (const DomainError&) {
      rep.mss_class = Verdict::Borderline;
    }
    rep.gamma_v_at_mss = em.v.rra(em.b + P);
    rep.mss_rra_condition = *rep.gamma_v_at_mss < 1.0 + em.b / P;
  }
  return rep;
}

double equilibrium_residual(const EndowmentModel& em, double P, double P_next) {
  const double lhs = P > 0.0 ? em.u.d1(em.a - P) * P : 0.0;
  const double rhs = P_next > 0.0 ? em.beta * em.v.d1(em.b + P_next) * P_next : 0.0;
  return -lhs + rhs;
}

namespace {

/// Next price from beta v'(b + z) z = target, or an explanation of why there is none.
std::optional<double> successor(const EndowmentModel& em, double target, std::string& why) {
  auto offer = [&em](double z) { return em.beta * em.v.d1(em.b + z) * z; };
  auto offer_slope = [&em](double z) {
    return em.beta * (em.v.d1(em.b + z) + z * em.v.d2(em.b + z));
  };
  const double hi = em.a * (1.0 - 1e-14);
  double lo = 1e-14 * em.a;

  // Walk lo down until the offer curve is below target (prices shrinking toward zero).
  while (offer(lo) > target && lo > 1e-300 && offer_slope(lo) > 0.0) lo *= 1e-3;

  int sign = 0;
  const int n = 64;
  const double span = std::log(hi) - std::log(lo);
  for (int i = 0; i <= n; ++i) {
    const double z = std::exp(std::log(lo) + span * i / n);
    const double d = offer_slope(z);
    const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) {
      why = "successor map z -> beta v'(b+z) z is not monotone on (0, a); multivalued successor";
      return std::nullopt;
    }
    sign = s;
  }
  auto gap = [&](double z) { return offer(z) - target; };
  const double g_lo = gap(lo);
  const double g_hi = gap(hi);
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    why = "no successor price in (0, a): the young cannot afford the asset next period";
    return std::nullopt;
  }
  return roots::bisect(gap, lo, hi);
}

}  // namespace

PricePath endow_simulate(const EndowmentModel& em, double P0, int T) {
  validate(em);
  if (!(P0 >= 0.0 && P0 < em.a)) throw DomainError("endow_simulate: P0 must lie in [0, a)");
  if (T < 0) throw DomainError("endow_simulate: T must be >= 0");

  PricePath path;
  path.prices.reserve(static_cast<std::size_t>(T) + 1);
  path.prices.push_back(P0);
  path.residuals.push_back(0.0);

  // With b = 0 and log v, beta v'(z) z is the constant beta*scale: the condition pins P_t
  // itself, and P_{t+1} must be the same price.
  const bool flat_offer = em.b == 0.0 && em.v.is_log();
  std::optional<double> stationary;
  if (flat_offer && P0 > 0.0) stationary = endow_mss(em);

  for (int t = 1; t <= T; ++t) {
    const double P = path.prices.back();
    if (P == 0.0) {
      path.prices.push_back(0.0);
      path.residuals.push_back(0.0);
      continue;
    }
    if (!(P < em.a)) {
      path.terminated_early = true;
      path.reason = "infeasible: price reached the young endowment";
      break;
    }
    const double target = em.u.d1(em.a - P) * P;
    std::optional<double> next;
    std::string why;
    if (flat_offer) {
      const double level = em.beta * em.v.scale();
      if (stationary && std::abs(target - level) <= 1e-12 * std::max(1.0, level)) {
        next = *stationary;
      } else {
        why = "no monetary equilibrium through this price: u'(a-P)P differs from beta";
      }
    } else {
      next = successor(em, target, why);
    }
    if (!next) {
      path.terminated_early = true;
      path.reason = why;
      break;
    }
    path.residuals.push_back(equilibrium_residual(em, P, *next));
    path.prices.push_back(*next);
  }
  return path;
}

}  // namespace olgdet::endowment
