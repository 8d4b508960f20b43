#include "olgdet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

#include "olgdet/determinacy.hpp"
#include "olgdet/errors.hpp"
#include "olgdet/steady.hpp"

namespace olgdet::sweep {

namespace {

double* field(cdces::Theta& t, const std::string& name) {
  if (name == "beta") return &t.beta;
  if (name == "A") return &t.A;
  if (name == "alpha") return &t.alpha;
  if (name == "rho") return &t.rho;
  if (name == "delta") return &t.delta;
  return nullptr;
}

bool in_domain(const std::string& name, double x) {
  if (name == "beta" || name == "alpha") return x > 0.0 && x < 1.0;
  if (name == "delta") return x > 0.0 && x <= 1.0;
  return x > 0.0 && std::isfinite(x);
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

const char* boolean(bool b) { return b ? "true" : "false"; }

std::string row_for(const cdces::Theta& t, double band) {
  std::ostringstream row;
  row << num(t.beta) << ',' << num(t.A) << ',' << num(t.alpha) << ',' << num(t.rho) << ','
      << num(t.delta) << ',';
  try {
    const double cond = cdces::mss_condition(t);
    const bool cond_exists = cond > 0.0;
    const ModelParams model = cdces::to_model(t);
    const std::optional<State> mss = find_mss(model);
    const bool agree = (cond_exists == mss.has_value()) || std::abs(cond) <= band;
    row << num(cond) << ',' << boolean(cond_exists) << ',' << boolean(mss.has_value()) << ','
        << boolean(agree) << ',';
    if (mss) {
      const SteadyState d = describe_steady_state(model, *mss);
      row << num(mss->k) << ',' << num(mss->P) << ',' << num(d.lambda1) << ',' << num(d.lambda2)
          << ',' << to_string(d.classification.kind) << ',';
    } else {
      row << ",,,,,";
    }
    const std::vector<double> nmss = cdces::nmss_closed_form_log(t);
    row << nmss.size() << ',' << (t.rho > 1.0 ? num(cdces::nmss_existence_index(t)) : "") << ',';
    for (std::size_t i = 0; i < 2; ++i) {
      if (i < nmss.size()) {
        const cdces::NmssEigenvalues ev = cdces::nmss_eigenvalues_log(t, nmss[i]);
        const Classification cls = classify({ev.lambda1, -1.0, 0.0, ev.lambda2});
        row << num(std::exp(nmss[i])) << ',' << num(ev.lambda1) << ',' << num(ev.lambda2) << ','
            << to_string(cls.kind) << ',';
      } else {
        row << ",,,,";
      }
    }
    row << "ok";
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), ',', ';');
    // Pad to the header width so the CSV stays rectangular.
    row.str("");
    row << num(t.beta) << ',' << num(t.A) << ',' << num(t.alpha) << ',' << num(t.rho) << ','
        << num(t.delta) << std::string(20, ',') << "error: " << msg;
  }
  return row.str();
}

}  // namespace

std::string csv_header() {
  return "beta,A,alpha,rho,delta,mss_condition,mss_exists_condition,mss_exists_solver,mss_agree,"
         "mss_k,mss_P,mss_lambda1,mss_lambda2,mss_class,n_nmss,nmss_index,"
         "nmss1_k,nmss1_lambda1,nmss1_lambda2,nmss1_class,"
         "nmss2_k,nmss2_lambda1,nmss2_lambda2,nmss2_class,status";
}

Range parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ':')) parts.push_back(cur);
  if (parts.size() != 4 && parts.size() != 5) {
    throw DomainError("range \"" + text + "\" must look like name:lo:hi:n[:log|linear]");
  }
  Range r;
  r.name = parts[0];
  try {
    r.lo = std::stod(parts[1]);
    r.hi = std::stod(parts[2]);
    const long long n = std::stoll(parts[3]);
    if (n < 0) throw DomainError("range \"" + text + "\": n must be >= 0");
    r.n_points = static_cast<std::size_t>(n);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const DomainError*>(&e)) throw;
    throw DomainError("range \"" + text + "\": malformed number");
  }
  if (parts.size() == 5) {
    if (parts[4] == "log") r.scale = Scale::Log;
    else if (parts[4] != "linear") throw DomainError("range \"" + text + "\": scale must be log or linear");
  }
  return r;
}

double grid_value(const Range& r, std::size_t i) {
  if (r.n_points <= 1) return r.lo;
  const double frac = static_cast<double>(i) / static_cast<double>(r.n_points - 1);
  if (r.scale == Scale::Log) {
    return std::exp(std::log(r.lo) + (std::log(r.hi) - std::log(r.lo)) * frac);
  }
  return r.lo + (r.hi - r.lo) * frac;
}

void validate(const SweepSpec& spec) {
  cdces::validate(spec.fixed);
  std::size_t cells = 1;
  cdces::Theta probe = spec.fixed;
  for (const Range& r : spec.ranges) {
    if (!field(probe, r.name)) throw DomainError("sweep: unknown parameter \"" + r.name + "\"");
    if (!in_domain(r.name, r.lo) || !in_domain(r.name, r.hi)) {
      throw DomainError("sweep: range for " + r.name + " leaves the parameter domain");
    }
    if (r.scale == Scale::Log && !(r.lo > 0.0)) throw DomainError("sweep: log range needs lo > 0");
    if (r.n_points != 0 && cells > spec.cap / r.n_points) {
      throw DomainError("sweep: grid exceeds the cap of " + std::to_string(spec.cap) + " cells");
    }
    cells *= r.n_points;
  }
  if (cells > spec.cap) throw DomainError("sweep: grid exceeds the cap of " + std::to_string(spec.cap) + " cells");
}

void run_sweep(const SweepSpec& spec, std::ostream& os) {
  validate(spec);
  os << csv_header() << '\n';
  std::size_t cells = 1;
  for (const Range& r : spec.ranges) cells *= r.n_points;
  if (cells == 0) return;

  std::vector<std::string> rows(cells);
  auto build = [&](std::size_t idx) {
    cdces::Theta t = spec.fixed;
    std::size_t rem = idx;
    for (std::size_t d = spec.ranges.size(); d-- > 0;) {
      const Range& r = spec.ranges[d];
      *field(t, r.name) = grid_value(r, rem % r.n_points);
      rem /= r.n_points;
    }
    rows[idx] = row_for(t, spec.boundary_band);
  };

  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells));
  if (threads <= 1) {
    for (std::size_t i = 0; i < cells; ++i) build(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned tid = 0; tid < threads; ++tid) {
      pool.emplace_back([&, tid] {
        for (std::size_t i = tid; i < cells; i += threads) build(i);
      });
    }
  }
  for (const std::string& row : rows) os << row << '\n';
}

}  // namespace olgdet::sweep
