#include <cmath>
#include <sstream>

#include "doctest.h"
#include "olgdet/cdces.hpp"
#include "olgdet/dynamics.hpp"
#include "olgdet/reverse.hpp"
#include "olgdet/steady.hpp"
#include "oracles.hpp"

using namespace olgdet;
using doctest::Approx;

namespace {
const cdces::Theta kCobbDouglas{0.5, 1.0, 0.3, 1.0, 1.0};
const State kNmss{0.22318686648016773, 0.0};
const State kMss{0.17907310493891381, 0.029845517489818969};

ModelParams local_quadratic_model(double R) {
  return reverse::reverse_nmss_general({Utility::log(), Utility::log(), 1.0, R, 2.0, 0.0}).model;
}
}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("step fixes steady states") {
  const ModelParams m = cdces::to_model(kCobbDouglas);
  for (State s : {kNmss, kMss}) {
    const State n = step(m, s);
    CHECK(std::abs(n.k - s.k) < 1e-10);
    CHECK(std::abs(n.P - s.P) < 1e-10);
  }
}

TEST_CASE("non-monetary step is k' = beta w(k)") {
  const ModelParams m = cdces::to_model(kCobbDouglas);
  const State n = step(m, {0.1, 0.0});
  CHECK(n.k == Approx(0.17541553176954530).epsilon(1e-14));
  CHECK(n.P == 0.0);
}

TEST_CASE("step matches the closed-form map for cobb-douglas utility") {
  const cdces::Theta t{0.5, 3.5, 3.0 / 7.0, 2.8, 1.0};
  const ModelParams m = cdces::to_model(t);
  const oracle::CdCes o{t.beta, {t.A, t.alpha, t.rho, t.delta}};
  for (State s : {State{1.1, 0.01}, State{0.9, 0.0}, State{1.3, 0.02}}) {
    const State n = step(m, s);
    const auto [k, P] = o.step(s.k, s.P);
    CHECK(n.k == Approx(k).epsilon(1e-12));
    CHECK(n.P == Approx(P).epsilon(1e-12));
  }
}

TEST_CASE("perturbation along P grows by the unstable eigenvalue") {
  const ModelParams m = cdces::to_model(kCobbDouglas);
  State s = kMss;
  s.P += 1e-6;
  // Iterate until the stable component has died out, then measure growth.
  for (int i = 0; i < 12; ++i) s = step(m, s);
  const double d0 = s.P - kMss.P;
  const State n = step(m, s);
  CHECK((n.P - kMss.P) / d0 == Approx(1.1666666666666667).epsilon(1e-3));
}

TEST_CASE("finite-difference jacobian of step") {
  const ModelParams m = cdces::to_model(kCobbDouglas);
  for (State s : {kNmss, kMss}) {
    const Jacobian2x2 J = jacobian_at(m, s);
    const double h = 1e-7;
    const State kp = step(m, {s.k + h, s.P}), km = step(m, {s.k - h, s.P});
    const State pp = step(m, {s.k, s.P + h}), pm = step(m, {s.k, s.P - h});
    CHECK(std::abs((kp.k - km.k) / (2 * h) - J.a11) < 1e-6);
    CHECK(std::abs((pp.k - pm.k) / (2 * h) - J.a12) < 1e-6);
    CHECK(std::abs((kp.P - km.P) / (2 * h) - J.a21) < 1e-6);
    CHECK(std::abs((pp.P - pm.P) / (2 * h) - J.a22) < 1e-6);
  }
}

TEST_CASE("simulated paths") {
  const ModelParams m = cdces::to_model(kCobbDouglas);
  SUBCASE("constant at the NMSS") {
    const Path p = simulate(m, kNmss, 100);
    REQUIRE(p.states.size() == 101);
    for (const State& s : p.states) CHECK(std::abs(s.k - kNmss.k) < 1e-12);
  }
  SUBCASE("monotone convergence from below") {
    const Path p = simulate(m, {0.1, 0.0}, 200);
    for (std::size_t t = 1; t < p.states.size(); ++t) {
      CHECK(p.states[t].k >= p.states[t - 1].k);
      CHECK(p.residuals[t].market < 1e-10);
    }
    CHECK(p.states.back().k == Approx(kNmss.k).epsilon(1e-12));
  }
  SUBCASE("asset bubble dies at the sink") {
    SimulateOptions o;
    o.target = kNmss;
    const Path p = simulate(m, {kNmss.k, 1e-4}, 400, o);
    CHECK(p.states.back().P < 1e-12);
    CHECK(p.states.back().k == Approx(kNmss.k).epsilon(1e-10));
    REQUIRE(p.converged_at);
  }
}

TEST_CASE("csv output") {
  const ModelParams m = cdces::to_model(kCobbDouglas);
  std::ostringstream os;
  write_path_csv(os, simulate(m, {0.1, 0.0}, 1));
  CHECK(os.str() ==
        "t,k,P,residual1,residual2\n"
        "0,1.0000000000000001e-01,0.0000000000000000e+00,0.0000000000000000e+00,0.0000000000000000e+00\n"
        "1,1.7541553176954530e-01,0.0000000000000000e+00,0.0000000000000000e+00,0.0000000000000000e+00\n");
}

TEST_CASE("shooting onto the saddle path") {
  const ModelParams m = cdces::to_model(kCobbDouglas);
  SUBCASE("on-manifold start") {
    const auto r = shoot(m, kMss, kMss.k);
    REQUIRE(r);
    CHECK(r->P0 == Approx(kMss.P).epsilon(1e-8));
  }
  SUBCASE("linearized stable manifold") {
    const Jacobian2x2 J = jacobian_at(m, kMss);
    const double lam = 0.3;  // stable eigenvalue; eigenvector (a12, lam - a11)
    const double slope = (lam - J.a11) / J.a12;
    const auto r = shoot(m, kMss, kMss.k + 1e-3);
    REQUIRE(r);
    CHECK(std::abs(r->P0 - (kMss.P + slope * 1e-3)) < 1e-5);
  }
  SUBCASE("saddle NMSS has zero fundamental price") {
    const ModelParams l2 = local_quadratic_model(1.1);
    for (double dk : {1e-3, -1e-3}) {
      const auto r = shoot(l2, {1.0, 0.0}, 1.0 + dk);
      REQUIRE(r);
      CHECK(std::abs(r->P0) < 1e-10);
    }
  }
}

TEST_CASE("basin probe") {
  SUBCASE("sink") {
    ProbeOptions o;
    const ProbeResult r = basin_probe(local_quadratic_model(0.9), {1.0, 0.0}, o);
    CHECK(r.fraction_converged >= 0.99);
  }
  SUBCASE("source") {
    const ModelParams m = cdces::to_model({0.5, 3.5, 3.0 / 7.0, 2.8, 1.0});
    const ProbeResult r = basin_probe(m, {1.0, 0.0});
    CHECK(r.fraction_converged <= 0.01);
  }
  SUBCASE("saddle") {
    const ProbeResult r = basin_probe(cdces::to_model(kCobbDouglas), kMss);
    CHECK(r.fraction_converged <= 0.01);
  }
  SUBCASE("thread count does not change the result") {
    ProbeOptions one, four;
    one.threads = 1;
    four.threads = 4;
    const ProbeResult a = basin_probe(local_quadratic_model(0.9), {1.0, 0.0}, one);
    const ProbeResult b = basin_probe(local_quadratic_model(0.9), {1.0, 0.0}, four);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      CHECK(a.samples[i].initial.k == b.samples[i].initial.k);
      CHECK(a.samples[i].steps == b.samples[i].steps);
    }
  }
}

TEST_CASE("lcg reproducibility") {
  Lcg64 a = Lcg64::for_sample(42, 3), b = Lcg64::for_sample(42, 3);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  Lcg64 c(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

}
