#include <cmath>
#include <random>

#include "doctest.h"
#include "olgdet/cdces.hpp"
#include "olgdet/errors.hpp"
#include "olgdet/reverse.hpp"
#include "olgdet/steady.hpp"

using namespace olgdet;
using doctest::Approx;

TEST_SUITE("reverse") {

TEST_CASE("general construction, local-quadratic economy") {
  for (double R : {0.9, 1.1}) {
    const reverse::GeneralModel gm =
        reverse::reverse_nmss_general({Utility::log(), Utility::log(), 1.0, R, 2.0, 0.0});
    CHECK(gm.beta == Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(gm.beta_exceeds_one);
    const SteadyState ss = describe_steady_state(gm.model, {1.0, 0.0});
    REQUIRE(ss.jacobian);
    CHECK(ss.lambda1 == Approx(0.0).epsilon(1e-14));
    CHECK(ss.lambda2 == Approx(R).epsilon(1e-14));
    CHECK(ss.classification.kind == (R < 1.0 ? StabilityKind::LocallyIndeterminateSink
                                             : StabilityKind::LocallyDeterminateSaddle));
  }
  const reverse::GeneralModel curved =
      reverse::reverse_nmss_general({Utility::log(), Utility::log(), 1.0, 0.9, 2.0, -0.1});
  CHECK(curved.beta == Approx(1.0).epsilon(1e-14));
  CHECK(curved.model.production.eval(1.0).fdoubleprime == Approx(-0.1));
}

TEST_CASE("general construction with CRRA utilities") {
  const reverse::GeneralModel gm =
      reverse::reverse_nmss_general({Utility::crra(2.0), Utility::crra(0.5), 0.8, 1.2, 2.5, -0.3});
  // The constructed economy has (kstar, 0) as an NMSS.
  const SavingsResult s = gm.model.savings(2.5, 1.2);
  CHECK(s.s == Approx(0.8).epsilon(1e-11));
  CHECK(gm.beta == Approx(std::pow(1.7, -2.0) / (1.2 * std::pow(0.96, -0.5))).epsilon(1e-13));
}

TEST_CASE("beta above one is reported") {
  const reverse::GeneralModel gm =
      reverse::reverse_nmss_general({Utility::log(), Utility::log(), 1.0, 0.5, 1.5, 0.0});
  CHECK(gm.beta == Approx(2.0));
  CHECK(gm.beta_exceeds_one);
}

TEST_CASE("general construction rejects bad targets") {
  CHECK_THROWS_AS(reverse::reverse_nmss_general({Utility::log(), Utility::log(), 2.0, 1.0, 1.5, 0.0}),
                  DomainError);
  CHECK_THROWS_AS(reverse::reverse_nmss_general({Utility::log(), Utility::log(), 1.0, 1.0, 2.0, 0.5}),
                  DomainError);
}

TEST_CASE("cdces construction reproduces the two-NMSS economy") {
  const cdces::Theta t = reverse::reverse_cdces({0.5, 1.0, 1.0, 1.2, 1.5});
  CHECK(t.A == Approx(3.5).epsilon(1e-13));
  CHECK(t.alpha == Approx(3.0 / 7.0).epsilon(1e-13));
  CHECK(t.rho == Approx(2.8).epsilon(1e-13));
}

TEST_CASE("cdces construction reproduces the cobb-douglas economy") {
  const double kf = 0.22318686648016773;
  const cdces::Theta t = reverse::reverse_cdces({0.5, 1.0, kf, 0.3, 6.0 / 7.0});
  CHECK(t.rho == Approx(1.0).epsilon(1e-13));
  CHECK(t.alpha == Approx(0.3).epsilon(1e-12));
  CHECK(t.A == Approx(1.0).epsilon(1e-11));
}

TEST_CASE("lambda2 is monotone in alpha") {
  double prev = -1.0;
  for (double a = 0.05; a < 0.96; a += 0.05) {
    const double l2 = reverse::lambda2_of_alpha(0.5, 0.7, 1.3, 2.2, a);
    CHECK(l2 > prev);
    prev = l2;
  }
}

TEST_CASE("cdces round trip on random targets") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double beta = 0.1 + 0.85 * u01(gen);
    const double delta = 0.3 + 0.7 * u01(gen);
    const double k = std::exp(std::log(0.1) + std::log(100.0) * u01(gen));
    const double l1 = 0.05 + 2.95 * u01(gen);
    const double l2 = (1.0 - delta) + 0.05 + 2.0 * u01(gen);
    cdces::Theta t;
    try {
      t = reverse::reverse_cdces({beta, delta, k, l1, l2});
    } catch (const DomainError&) {
      continue;  // alpha not representable
    }
    CHECK(std::abs(cdces::nmss_fixed_point_residual(t, k)) < 1e-12 * std::max(1.0, k));
    // Near alpha = 1 the rounding of alpha itself limits how well lambda2 can be hit.
    if (t.alpha < 1e-6 || t.alpha > 1.0 - 1e-6) continue;
    const auto e = cdces::nmss_eigenvalues(t, k);
    CHECK(e.lambda1 == Approx(l1).epsilon(1e-9));
    CHECK(e.lambda2 == Approx(l2).epsilon(1e-9));
  }
}

TEST_CASE("cdces construction rejects bad targets") {
  CHECK_THROWS_AS(reverse::reverse_cdces({0.5, 1.0, 1.0, -1.0, 1.5}), DomainError);
  CHECK_THROWS_AS(reverse::reverse_cdces({0.5, 0.5, 1.0, 1.0, 0.4}), DomainError);
  CHECK_THROWS_AS(reverse::reverse_cdces({0.5, 1.0, -1.0, 1.0, 1.5}), DomainError);
}

}
