#include "olgdet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "olgdet/cdces.hpp"
#include "olgdet/dynamics.hpp"
#include "olgdet/endowment.hpp"
#include "olgdet/errors.hpp"
#include "olgdet/model_json.hpp"
#include "olgdet/reverse.hpp"
#include "olgdet/steady.hpp"
#include "olgdet/sweep.hpp"

namespace olgdet::cli {

namespace {

using nlohmann::json;

struct GlobalFlags {
  double tol = kDefaultTolMargin;
  std::uint64_t seed = 1;
  std::string out;
  std::string config;
};

json load_json_file(const std::string& path) {
  if (path.empty()) throw DomainError("--config is required for this subcommand");
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("malformed config JSON in " + path + ": " + e.what());
  }
}

ModelParams load_model(const GlobalFlags& g) { return io::model_from_json(load_json_file(g.config)); }

json eigen_json(const std::complex<double>& z) {
  if (z.imag() == 0.0) return z.real();
  return {{"re", z.real()}, {"im", z.imag()}, {"modulus", std::abs(z)}, {"argument", std::arg(z)}};
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// --- steady -----------------------------------------------------------------

json closed_form_json(const cdces::Theta& t, const std::vector<SteadyState>& found, double tol) {
  const cdces::CdCesAnalysis an = cdces::analyze(t);
  json cf;
  cf["c"] = an.c_const;
  cf["mss_condition"] = cdces::mss_condition(t);
  if (t.rho > 1.0) cf["nmss_index"] = cdces::nmss_existence_index(t);
  if (an.psi_min_point) cf["psi_min_point"] = *an.psi_min_point;
  cf["nmss"] = json::array();
  for (const cdces::NmssRecord& r : an.nmss) {
    const Classification cls = classify({r.lambda1, -1.0, 0.0, r.lambda2}, tol);
    cf["nmss"].push_back({{"kind", "non_monetary"},
                          {"k", r.k},
                          {"P", 0.0},
                          {"lambda1", r.lambda1},
                          {"lambda2", r.lambda2},
                          {"class", std::string(to_string(cls.kind))}});
  }
  cf["mss"] = an.mss ? json{{"k", an.mss->k}, {"P", an.mss->P}} : json(nullptr);

  std::vector<double> generic_nmss;
  std::optional<State> generic_mss;
  for (const SteadyState& s : found) {
    if (s.kind == SteadyKind::NonMonetary) generic_nmss.push_back(s.state.k);
    else generic_mss = s.state;
  }
  bool agree = generic_nmss.size() == an.nmss.size() && generic_mss.has_value() == an.mss.has_value();
  for (std::size_t i = 0; agree && i < an.nmss.size(); ++i) {
    agree = close_rel(generic_nmss[i], an.nmss[i].k, 1e-8);
  }
  if (agree && an.mss) agree = close_rel(generic_mss->k, an.mss->k, 1e-8) && close_rel(generic_mss->P, an.mss->P, 1e-8);
  cf["agrees_with_solver"] = agree;
  return cf;
}

int cmd_steady(const GlobalFlags& g, std::ostream& out) {
  const ModelParams model = load_model(g);
  SteadySearchOptions opts;
  opts.tol_margin = g.tol;
  const std::vector<SteadyState> found = find_steady_states(model, opts);
  json doc;
  doc["model"] = io::model_to_json(model);
  doc["steady_states"] = json::array();
  for (const SteadyState& s : found) doc["steady_states"].push_back(io::steady_state_record(s));
  if (auto theta = io::theta_of(model)) doc["closed_form"] = closed_form_json(*theta, found, g.tol);
  out << doc.dump(2) << '\n';
  return kExitOk;
}

// --- classify ---------------------------------------------------------------

void print_classification(const ModelParams& model, const SteadyState& s, double tol, std::ostream& out) {
  json rec;
  rec["kind"] = std::string(to_string(s.kind));
  rec["k"] = s.state.k;
  rec["P"] = s.state.P;
  std::ostringstream line;
  line << (s.kind == SteadyKind::Monetary ? "MSS" : "NMSS") << " k=" << s.state.k << " P=" << s.state.P
       << ": ";
  if (!s.jacobian) {
    line << "not classified (singular D_eta Phi)";
    rec["class"] = "borderline";
    rec["note"] = "singular D_eta Phi";
  } else {
    const Classification cls = classify(*s.jacobian, tol);
    rec["t"] = s.jacobian->trace();
    rec["d"] = s.jacobian->det();
    rec["jacobian"] = {{s.jacobian->a11, s.jacobian->a12}, {s.jacobian->a21, s.jacobian->a22}};
    rec["lambda"] = {eigen_json(cls.eigenvalues[0]), eigen_json(cls.eigenvalues[1])};
    rec["class"] = std::string(to_string(cls.kind));
    line << to_string(cls.kind) << " (|lambda| = " << cls.modulus(0) << ", " << cls.modulus(1) << ")";
  }
  if (s.state.P > 0.0) {
    const SaddleCertificate cert = mss_saddle_certificate(model, s.state);
    rec["certificate"] = io::certificate_to_json(cert);
    line << (cert.certified ? "; saddle certificate holds" : "; saddle certificate fails");
  }
  out << line.str() << '\n' << rec.dump() << '\n';
}

int cmd_classify(const GlobalFlags& g, std::optional<double> k, double P, std::ostream& out) {
  const ModelParams model = load_model(g);
  std::vector<SteadyState> targets;
  if (k) {
    targets.push_back(describe_steady_state(model, {*k, P}, g.tol));
  } else {
    SteadySearchOptions opts;
    opts.tol_margin = g.tol;
    targets = find_steady_states(model, opts);
  }
  for (const SteadyState& s : targets) print_classification(model, s, g.tol, out);
  return kExitOk;
}

// --- simulate / shoot / probe ------------------------------------------------

State pick_steady_state(const ModelParams& model, std::optional<double> ss_k, double ss_P,
                        std::optional<int> index, bool want_saddle, double tol) {
  if (ss_k) return {*ss_k, ss_P};
  SteadySearchOptions opts;
  opts.tol_margin = tol;
  const std::vector<SteadyState> all = find_steady_states(model, opts);
  if (index) {
    if (*index < 0 || static_cast<std::size_t>(*index) >= all.size()) {
      throw DomainError("--ss-index " + std::to_string(*index) + " out of range; model has " +
                        std::to_string(all.size()) + " steady states");
    }
    return all[static_cast<std::size_t>(*index)].state;
  }
  if (want_saddle) {
    std::vector<State> saddles;
    for (const SteadyState& s : all) {
      if (s.classification.kind == StabilityKind::LocallyDeterminateSaddle) saddles.push_back(s.state);
    }
    if (saddles.size() != 1) {
      throw DomainError("model has " + std::to_string(saddles.size()) +
                        " saddle steady states; pass --ss-k/--ss-P or --ss-index");
    }
    return saddles.front();
  }
  if (all.empty()) throw DomainError("model has no steady state in the search window");
  return all.front().state;
}

json state_json(State s) { return {{"k", s.k}, {"P", s.P}}; }

// --- endow ------------------------------------------------------------------

json verdict_json(const std::optional<endowment::Verdict>& v) {
  return v ? json(std::string(endowment::to_string(*v))) : json(nullptr);
}

template <typename T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

int cmd_endow(const endowment::EndowmentModel& em, const std::vector<double>& sim, double tol,
              std::ostream& out, std::ostream& err) {
  endowment::ClassifyOptions opts;
  opts.tol_margin = tol;
  const endowment::EndowmentReport rep = endowment::endow_classify(em, opts);
  json doc = {{"model",
               {{"a", em.a},
                {"b", em.b},
                {"beta", em.beta},
                {"u", io::utility_to_json(em.u)},
                {"v", io::utility_to_json(em.v)}}},
              {"mss_price", opt_json(rep.mss_price)},
              {"nmss_class", verdict_json(rep.nmss_class)},
              {"mss_class", verdict_json(rep.mss_class)},
              {"phi_prime_at_zero", opt_json(rep.phi_prime_at_zero)},
              {"phi_prime_at_mss", opt_json(rep.phi_prime_at_mss)},
              {"gamma_v_at_mss", opt_json(rep.gamma_v_at_mss)},
              {"mss_rra_condition", opt_json(rep.mss_rra_condition)},
              {"scheinkman_holds", opt_json(rep.scheinkman_holds)},
              {"scheinkman_grid_min", opt_json(rep.scheinkman_grid_min)}};
  out << doc.dump(2) << '\n';
  if (!sim.empty()) {
    if (sim.size() != 2 || sim[1] < 0 || sim[1] != std::floor(sim[1])) {
      throw DomainError("--simulate takes P0 and a nonnegative integer T");
    }
    const endowment::PricePath path = endowment::endow_simulate(em, sim[0], static_cast<int>(sim[1]));
    out << "t,P\n";
    char buf[64];
    for (std::size_t t = 0; t < path.prices.size(); ++t) {
      std::snprintf(buf, sizeof buf, "%zu,%.16e\n", t, path.prices[t]);
      out << buf;
    }
    if (path.terminated_early) {
      err << "price path terminated at t=" << path.prices.size() - 1 << ": " << path.reason << '\n';
      return kExitSolver;
    }
  }
  return kExitOk;
}

Utility utility_from_gamma(double gamma, double scale = 1.0) {
  return gamma == 1.0 ? Utility::log(scale) : Utility::crra(gamma, scale);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady states, local determinacy, and dynamics of OLG economies with money", "olgdet"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--tol", g.tol, "Margin around |lambda| = 1 treated as borderline")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized subcommands");
  app.add_option("--out", g.out, "Write results to this file instead of standard output");
  app.add_option("--config", g.config, "Model JSON file");

  auto* steady = app.add_subcommand("steady", "Find and classify all steady states");

  auto* classify_cmd = app.add_subcommand("classify", "Jacobian, eigenvalues and verdict at steady states");
  std::optional<double> cls_k;
  double cls_P = 0.0;
  classify_cmd->add_option("--k", cls_k, "Steady-state capital (default: every steady state found)");
  classify_cmd->add_option("--P", cls_P, "Steady-state asset price");

  auto* simulate_cmd = app.add_subcommand("simulate", "Forward path as CSV t,k,P,residual1,residual2");
  double sim_k0 = 0.0;
  double sim_p0 = 0.0;
  int sim_T = 100;
  std::optional<double> sim_target_k;
  double sim_target_P = 0.0;
  simulate_cmd->add_option("--k0", sim_k0, "Initial capital")->required();
  simulate_cmd->add_option("--p0", sim_p0, "Initial asset price");
  simulate_cmd->add_option("--T", sim_T, "Number of steps");
  simulate_cmd->add_option("--target-k", sim_target_k, "Steady state used for convergence detection");
  simulate_cmd->add_option("--target-P", sim_target_P, "Asset price of the target steady state");

  auto* shoot_cmd = app.add_subcommand("shoot", "Initial asset price on the stable manifold of a saddle");
  double shoot_k0 = 0.0;
  std::optional<double> shoot_ss_k;
  double shoot_ss_P = 0.0;
  std::optional<int> shoot_index;
  std::optional<double> shoot_lo;
  std::optional<double> shoot_hi;
  ShootOptions shoot_opts;
  shoot_cmd->add_option("--k0", shoot_k0, "Initial capital")->required();
  shoot_cmd->add_option("--ss-k", shoot_ss_k, "Saddle steady-state capital");
  shoot_cmd->add_option("--ss-P", shoot_ss_P, "Saddle steady-state asset price");
  shoot_cmd->add_option("--ss-index", shoot_index, "Index into the steady states reported by `steady`");
  shoot_cmd->add_option("--p-lo", shoot_lo, "Lower end of the P0 bracket");
  shoot_cmd->add_option("--p-hi", shoot_hi, "Upper end of the P0 bracket");
  shoot_cmd->add_option("--radius", shoot_opts.radius, "Local window radius (paths exit at 2x)");
  shoot_cmd->add_option("--horizon", shoot_opts.horizon, "Steps per trial path");

  auto* probe_cmd = app.add_subcommand("probe", "Monte-Carlo estimate of the local basin of attraction");
  ProbeOptions probe_opts;
  std::optional<std::uint64_t> probe_seed;
  std::optional<double> probe_ss_k;
  double probe_ss_P = 0.0;
  std::optional<int> probe_index;
  bool probe_samples = false;
  probe_cmd->add_option("--radius", probe_opts.radius, "Sampling radius");
  probe_cmd->add_option("--n", probe_opts.n_samples, "Number of samples");
  probe_cmd->add_option("--seed", probe_seed, "Seed (overrides the global --seed)");
  probe_cmd->add_option("--T", probe_opts.horizon, "Horizon per sample");
  probe_cmd->add_option("--ss-k", probe_ss_k, "Steady-state capital");
  probe_cmd->add_option("--ss-P", probe_ss_P, "Steady-state asset price");
  probe_cmd->add_option("--ss-index", probe_index, "Index into the steady states reported by `steady`");
  probe_cmd->add_flag("--samples", probe_samples, "Include every sample in the output");

  auto* reverse_cmd = app.add_subcommand("reverse", "Construct a model with a prescribed steady state");
  std::optional<double> rv_beta, rv_delta, rv_k, rv_l1, rv_l2;
  std::optional<double> rv_kstar, rv_R, rv_w;
  double rv_c = 0.0;
  double rv_gu = 1.0;
  double rv_gv = 1.0;
  reverse_cmd->add_option("--beta", rv_beta, "Discount factor (cdces mode)");
  reverse_cmd->add_option("--delta", rv_delta, "Depreciation (cdces mode)");
  reverse_cmd->add_option("--k", rv_k, "Steady-state capital (cdces mode)");
  reverse_cmd->add_option("--lambda1", rv_l1, "Target lambda1 (cdces mode)");
  reverse_cmd->add_option("--lambda2", rv_l2, "Target lambda2 (cdces mode)");
  reverse_cmd->add_option("--kstar", rv_kstar, "Steady-state capital (general mode)");
  reverse_cmd->add_option("--R", rv_R, "Rental rate (general mode)");
  reverse_cmd->add_option("--w", rv_w, "Wage (general mode)");
  reverse_cmd->add_option("--c", rv_c, "f''(kstar) <= 0 (general mode)");
  reverse_cmd->add_option("--gamma-u", rv_gu, "CRRA of u (1 = log)")->check(CLI::PositiveNumber);
  reverse_cmd->add_option("--gamma-v", rv_gv, "CRRA of v (1 = log)")->check(CLI::PositiveNumber);

  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter-grid atlas CSV for the Cobb-Douglas-CES economy");
  std::vector<std::string> sw_ranges;
  std::size_t sw_cap = 1'000'000;
  std::optional<double> sw_beta, sw_A, sw_alpha, sw_rho, sw_delta;
  sweep_cmd->add_option("--range", sw_ranges, "name:lo:hi:n[:log], repeatable");
  sweep_cmd->add_option("--cap", sw_cap, "Maximum number of grid cells");
  sweep_cmd->add_option("--beta", sw_beta, "Fixed beta");
  sweep_cmd->add_option("--A", sw_A, "Fixed A");
  sweep_cmd->add_option("--alpha", sw_alpha, "Fixed alpha");
  sweep_cmd->add_option("--rho", sw_rho, "Fixed rho");
  sweep_cmd->add_option("--delta", sw_delta, "Fixed delta");

  auto* endow_cmd = app.add_subcommand("endow", "Endowment economy: monetary steady state and determinacy");
  endowment::EndowmentModel em;
  double en_gu = 1.0;
  double en_gv = 1.0;
  std::vector<double> en_sim;
  endow_cmd->add_option("--a", em.a, "Young endowment")->required();
  endow_cmd->add_option("--b", em.b, "Old endowment")->required();
  endow_cmd->add_option("--beta", em.beta, "Discount factor")->required();
  endow_cmd->add_option("--gamma-u", en_gu, "CRRA of u (1 = log)")->check(CLI::PositiveNumber);
  endow_cmd->add_option("--gamma-v", en_gv, "CRRA of v (1 = log)")->check(CLI::PositiveNumber);
  endow_cmd->add_option("--simulate", en_sim, "P0 T: also print the price path as CSV t,P")->expected(2);

  std::ostringstream body;
  int status = kExitOk;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));

    if (steady->parsed()) {
      status = cmd_steady(g, body);
    } else if (classify_cmd->parsed()) {
      status = cmd_classify(g, cls_k, cls_P, body);
    } else if (simulate_cmd->parsed()) {
      const ModelParams model = load_model(g);
      SimulateOptions opts;
      if (sim_target_k) opts.target = State{*sim_target_k, sim_target_P};
      const Path path = simulate(model, {sim_k0, sim_p0}, sim_T, opts);
      write_path_csv(body, path);
      if (path.end == PathEnd::Collapsed || path.end == PathEnd::SolverFailure) {
        err << "path terminated at t=" << path.states.size() - 1 << ": " << path.reason << '\n';
        status = kExitSolver;
      }
    } else if (shoot_cmd->parsed()) {
      const ModelParams model = load_model(g);
      const State ss = pick_steady_state(model, shoot_ss_k, shoot_ss_P, shoot_index, true, g.tol);
      if (shoot_lo || shoot_hi) {
        if (!shoot_lo || !shoot_hi) throw DomainError("--p-lo and --p-hi must be given together");
        shoot_opts.bracket = std::make_pair(*shoot_lo, *shoot_hi);
      }
      const std::optional<ShootResult> res = shoot(model, ss, shoot_k0, shoot_opts);
      json doc = {{"steady_state", state_json(ss)}, {"k0", shoot_k0}};
      if (res) {
        doc["P0"] = res->P0;
        doc["min_distance"] = res->min_distance;
        doc["steps_to_min"] = res->steps_to_min;
        doc["bisections"] = res->bisections;
      } else {
        doc["P0"] = nullptr;
        err << "shoot: bisection result does not approach the steady state\n";
        status = kExitSolver;
      }
      body << doc.dump(2) << '\n';
    } else if (probe_cmd->parsed()) {
      const ModelParams model = load_model(g);
      const State ss = pick_steady_state(model, probe_ss_k, probe_ss_P, probe_index, false, g.tol);
      probe_opts.seed = probe_seed.value_or(g.seed);
      const ProbeResult res = basin_probe(model, ss, probe_opts);
      json doc = {{"steady_state", state_json(ss)},
                  {"radius", probe_opts.radius},
                  {"n", probe_opts.n_samples},
                  {"seed", probe_opts.seed},
                  {"horizon", probe_opts.horizon},
                  {"n_converged", res.n_converged},
                  {"fraction_converged", res.fraction_converged}};
      if (probe_samples) {
        doc["samples"] = json::array();
        for (const ProbeSample& s : res.samples) {
          doc["samples"].push_back({{"k0", s.initial.k}, {"P0", s.initial.P},
                                    {"converged", s.converged}, {"steps", s.steps}});
        }
      }
      body << doc.dump(2) << '\n';
    } else if (reverse_cmd->parsed()) {
      const bool cd_mode = rv_l1 || rv_l2 || rv_delta || rv_k;
      const bool general_mode = rv_kstar || rv_R || rv_w;
      if (cd_mode == general_mode) {
        throw DomainError("reverse: give either --beta --delta --k --lambda1 --lambda2 or "
                          "--kstar --R --w [--c --gamma-u --gamma-v]");
      }
      if (cd_mode) {
        if (!rv_beta || !rv_delta || !rv_k || !rv_l1 || !rv_l2) {
          throw DomainError("reverse (cdces): --beta --delta --k --lambda1 --lambda2 are all required");
        }
        const cdces::Theta t = reverse::reverse_cdces({*rv_beta, *rv_delta, *rv_k, *rv_l1, *rv_l2});
        body << io::model_to_json(cdces::to_model(t)).dump(2) << '\n';
      } else {
        if (!rv_kstar || !rv_R || !rv_w) throw DomainError("reverse (general): --kstar --R --w are required");
        reverse::GeneralTarget target{utility_from_gamma(rv_gu), utility_from_gamma(rv_gv), *rv_kstar,
                                      *rv_R, *rv_w, rv_c};
        const reverse::GeneralModel gm = reverse::reverse_nmss_general(target);
        if (gm.beta_exceeds_one) {
          err << "warning: constructed beta = " << gm.beta << " exceeds 1\n";
        }
        body << io::model_to_json(gm.model).dump(2) << '\n';
      }
    } else if (sweep_cmd->parsed()) {
      sweep::SweepSpec spec;
      if (!g.config.empty()) {
        const ModelParams base = load_model(g);
        const std::optional<cdces::Theta> t = io::theta_of(base);
        if (!t) throw DomainError("sweep needs CES production with Cobb-Douglas utility");
        spec.fixed = *t;
      }
      if (sw_beta) spec.fixed.beta = *sw_beta;
      if (sw_A) spec.fixed.A = *sw_A;
      if (sw_alpha) spec.fixed.alpha = *sw_alpha;
      if (sw_rho) spec.fixed.rho = *sw_rho;
      if (sw_delta) spec.fixed.delta = *sw_delta;
      spec.cap = sw_cap;
      for (const std::string& r : sw_ranges) spec.ranges.push_back(sweep::parse_range(r));
      sweep::run_sweep(spec, body);
    } else if (endow_cmd->parsed()) {
      em.u = utility_from_gamma(en_gu);
      em.v = utility_from_gamma(en_gv);
      status = cmd_endow(em, en_sim, g.tol, body, err);
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  if (!g.out.empty()) {
    std::ofstream file(g.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << g.out << '\n';
      return kExitDomain;
    }
    file << body.str();
  } else {
    out << body.str();
  }
  return status;
}

}  // namespace olgdet::cli
