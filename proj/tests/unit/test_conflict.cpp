#include <doctest.h>

#include "fiscap/conflict.hpp"
#include "oracle.hpp"

using namespace fiscap;
using doctest::Approx;

TEST_SUITE("conflict") {
  TEST_CASE("threshold values on the reference grid parameters") {
    const auto a = civil_war_threshold(oracle::fig2(0.3, 0.9));
    REQUIRE(a);
    CHECK(*a == Approx(0.3 / 0.23).epsilon(1e-14));
    CHECK(*a == Approx(1.304348).epsilon(1e-6));
    CHECK(*a == Approx(oracle::threshold(oracle::fig2(0.3, 0.9))).epsilon(1e-12));

    const auto b = civil_war_threshold(oracle::fig2(0.3, 0.5));
    REQUIRE(b);
    CHECK(*b == Approx(-0.285714).epsilon(1e-6));
    CHECK(*b == Approx(oracle::threshold(oracle::fig2(0.3, 0.5))).epsilon(1e-12));

    const auto c = civil_war_threshold(oracle::fig2(0.3, 0.3));
    REQUIRE(c);
    CHECK(*c == Approx(-0.731707).epsilon(1e-6));
  }

  TEST_CASE("full cohesiveness pins the threshold at 2") {
    for (double lambda : {0.0, 0.3, 0.9}) {
      ModelParams p = oracle::p0c();
      p.lambda = lambda;
      p.sigma_d = 1.0;
      const auto t = civil_war_threshold(p);
      REQUIRE(t);
      CHECK(std::abs(*t - 2.0) <= 1e-12);
      CHECK(civil_war_decision(p).gamma == 0);
    }
  }

  TEST_CASE("decisions") {
    ModelParams p = oracle::fig2(0.3, 0.9);
    CHECK(civil_war_decision(p).gamma == 0);
    CHECK(civil_war_decision(p).method == DecisionMethod::ThresholdComparison);
    CHECK(civil_war_decision(oracle::fig2(0.3, 0.3)).gamma == 1);
    CHECK(civil_war_decision(oracle::fig2(0.3, 0.0)).gamma == 1);

    // Exactly at the threshold: indifference means peace.
    p.sigma_f = *civil_war_threshold(p);
    p.sigma_f = 0.3 / 0.23;
    CHECK(civil_war_decision(p).gamma == 0);
  }

  TEST_CASE("zero cohesiveness is not always war") {
    // Election odds far above the civil-war odds make peace preferable even at sigma_d = 0.
    ModelParams p = oracle::fig2(0.5, 0.0);
    p.delta = 0.1;
    p.omega = 0.11;
    CHECK(validate_params(p) == p);
    const auto t = civil_war_threshold(p);
    REQUIRE(t);
    CHECK(*t == Approx(0.29 / 0.055).epsilon(1e-12));
    CHECK(civil_war_decision(p).gamma == 0);
    CHECK(oracle::eu_o1(p, 1.0, true) < oracle::eu_o1(p, 1.0, false));
  }

  TEST_CASE("undefined threshold falls back to the direct comparison") {
    ModelParams p = oracle::fig2(0.9, 0.0);
    p.alpha = 0.05;
    CHECK(threshold_denominator(p) <= 0.0);
    CHECK_FALSE(civil_war_threshold(p).has_value());
    const ConflictDecision d = civil_war_decision(p);
    CHECK(d.method == DecisionMethod::DirectUtilityComparison);
    CHECK(d.gamma == (oracle::eu_o1(p, 1.0, true) > oracle::eu_o1(p, 1.0, false) ? 1 : 0));
    CHECK_THROWS_AS(threshold_sensitivities(p), UndefinedThreshold);
  }

  TEST_CASE("war advantage keeps its sign across capacities") {
    for (const ModelParams& p : {oracle::fig2(0.3, 0.9), oracle::fig2(0.3, 0.3), oracle::p0c()}) {
      const double ref = war_advantage(p, 1.0);
      for (double t : {0.1, 0.5, 0.9}) {
        CHECK((war_advantage(p, t) > 0.0) == (ref > 0.0));
        CHECK(war_advantage(p, t) == Approx(t * ref).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("sensitivities") {
    const ModelParams p = oracle::fig2(0.3, 0.9);
    const ThresholdSensitivities s = threshold_sensitivities(p);
    CHECK(s.d_sigma_d == Approx(0.32 / 0.0529).epsilon(1e-12));
    CHECK(s.d_sigma_d == Approx(6.049).epsilon(1e-3));
    CHECK(s.d_alpha > 0.0);
    CHECK(s.d_lambda < 0.0);

    // Against central differences of the numerically located threshold.
    auto fd = [&](double ModelParams::*f) {
      const double h = 1e-5;
      ModelParams lo = p;
      ModelParams hi = p;
      lo.*f -= h;
      hi.*f += h;
      return (oracle::threshold(hi) - oracle::threshold(lo)) / (2 * h);
    };
    CHECK(s.d_sigma_d == Approx(fd(&ModelParams::sigma_d)).epsilon(1e-6));
    CHECK(s.d_alpha == Approx(fd(&ModelParams::alpha)).epsilon(1e-6));
    ModelParams q = p;
    q.lambda = 0.2;
    const ThresholdSensitivities sq = threshold_sensitivities(q);
    const double h = 1e-5;
    ModelParams lo = q;
    ModelParams hi = q;
    lo.lambda -= h;
    hi.lambda += h;
    CHECK(sq.d_lambda == Approx((oracle::threshold(hi) - oracle::threshold(lo)) / (2 * h)).epsilon(1e-6));
  }

  TEST_CASE("turnover probability") {
    CHECK(turnover_probability(oracle::fig2(0.3, 0.9), 0) == Approx(0.2));
    CHECK(turnover_probability(oracle::fig2(0.3, 0.9), 1) == Approx(0.7));
    ModelParams p = oracle::p0c();
    p.alpha = 0.0;
    CHECK(turnover_probability(p, 0) == p.epsilon);
    CHECK(turnover_probability(oracle::p0c(), 0) == Approx(0.17));
    CHECK_THROWS_AS(turnover_probability(p, 2), std::invalid_argument);
  }
}
