#include <doctest.h>

#include "fiscap/statics.hpp"
#include "oracle.hpp"

using namespace fiscap;
using doctest::Approx;

TEST_SUITE("statics") {
  const CostSpec c1 = CostSpec::quadratic(1.0);

  TEST_CASE("classification of the worked points") {
    const RegimeClassification c = classify(oracle::p0c());
    CHECK(c.gamma == 0);
    CHECK(c.prop1 == Prop1::TurnoverDown);
    CHECK(c.prop2 == Prop2::Case2B1);
    CHECK(c.prop3 == Prop3::Case3B1);

    const RegimeClassification a = classify(oracle::fig2(0.3, 0.9));
    CHECK(a.prop1 == Prop1::TurnoverDown);
    CHECK(a.prop2 == Prop2::Case2B3);
    CHECK(a.prop3 == Prop3::Case3B2);

    const RegimeClassification b = classify(oracle::fig2(0.3, 0.3));
    CHECK(b.prop1 == Prop1::TurnoverUp);
    CHECK(b.prop2 == Prop2::Case2A);
    CHECK(b.prop3 == Prop3::Case3A);

    CHECK(to_string(Prop2::Case2B1) == "2.B.1");
    CHECK(to_string(Prop1::TurnoverUp) == "1.A");
    CHECK(to_string(Prop3::Case3B2) == "3.B.2");
  }

  TEST_CASE("equality point") {
    ModelParams p = oracle::fig2(0.3, 0.8);
    p.lambda = 0.3;
    p.epsilon = p.mu * (1 - p.lambda * p.sigma_d) / (1 - p.sigma_d);
    REQUIRE(classify(p).gamma == 0);
    CHECK(std::abs(prop2_margin(p)) <= 1e-12);
    CHECK(classify(p).prop2 == Prop2::Case2B2);
    CHECK(classify(p).prop3 == Prop3::Case3B2);
  }

  TEST_CASE("finite differences") {
    const ModelParams p = oracle::p0c();
    const FdEstimate phi = finite_difference(p, c1, FdTarget::Phi, FdParam::Alpha);
    CHECK(phi.value == Approx(-0.15).epsilon(1e-9));
    CHECK(std::abs(phi.value + 0.15) <= 1e-9);
    CHECK(phi.regime_stable);

    const FdEstimate tau = finite_difference(p, c1, FdTarget::Tau2, FdParam::Alpha);
    CHECK(std::abs(tau.value - 0.11) <= 1e-6);
    CHECK_FALSE(tau.corner);

    const FdEstimate corner = finite_difference(oracle::fig2(0.3, 0.9), c1, FdTarget::Tau2, FdParam::Alpha);
    CHECK(corner.value == 0.0);
    CHECK(corner.corner);

    const FdEstimate war = finite_difference(oracle::fig2(0.3, 0.3), c1, FdTarget::Phi, FdParam::Alpha);
    CHECK(std::abs(war.value - (0.5 - 0.4 + 0.5)) <= 1e-9);
  }

  TEST_CASE("regime changes are flagged") {
    ModelParams p = oracle::fig2(0.3, 0.9);
    p.sigma_d = 0.3 + 0.0;
    // Place sigma_d just beside the value where the threshold equals sigma_f.
    double lo = 0.3, hi = 0.9;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      p.sigma_d = mid;
      (classify(p).gamma == 1 ? lo : hi) = mid;
    }
    p.sigma_d = hi;
    const FdEstimate e = finite_difference(p, c1, FdTarget::Phi, FdParam::SigmaD, 1e-6);
    CHECK_FALSE(e.regime_stable);
  }

  TEST_CASE("domain exits") {
    ModelParams p = oracle::p0c();
    p.alpha = 0.0;
    CHECK_THROWS_AS(finite_difference(p, c1, FdTarget::Phi, FdParam::Alpha), DomainExit);
  }

  TEST_CASE("boundary curve along lambda = 0") {
    ModelParams p = oracle::fig2(0.3, 0.7);
    const double edge = p.mu / (1 - p.sigma_d);
    p.epsilon = edge * (1 + 1e-6);
    REQUIRE(classify(p).gamma == 0);
    CHECK(classify(p).prop2 == Prop2::Case2B1);
    p.epsilon = edge * (1 - 1e-6);
    CHECK(classify(p).prop2 == Prop2::Case2B3);
  }
}
