#include "fiscap/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "fiscap/bargaining.hpp"
#include "fiscap/cli/config.hpp"
#include "fiscap/conflict.hpp"
#include "fiscap/fiscal.hpp"
#include "fiscap/revolution.hpp"
#include "fiscap/statics.hpp"

namespace fiscap::cli {

Rng::Rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream)
    : state_(seed * 0x9E3779B97F4A7C15ULL ^ (trial + 1) * 0xBF58476D1CE4E5B9ULL ^
             (stream + 1) * 0x94D049BB133111EBULL) {
  next();
}

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

constexpr double kMargin = 0.01;
constexpr double kOracleStep = 1e-4;
constexpr double kOracleTolerance = 2e-4;

void draw_scale(Rng& rng, ModelParams& p) {
  p.m = rng.uniform(0.5, 2.0);
  p.tau1 = rng.uniform(0.05, 0.6);
  p.tau_max = 1.0;
}

}  // namespace

ModelParams sample_params(Rng& rng) {
  for (;;) {
    ModelParams p;
    p.alpha = rng.uniform(0.01, 0.99);
    p.lambda = rng.uniform(0.0, 0.95);
    p.epsilon = rng.uniform(0.01, 0.99);
    p.delta = rng.uniform(0.01, 0.99);
    p.rho = rng.uniform(0.01, 0.99);
    p.mu = rng.uniform(0.01, 0.99);
    p.omega = rng.uniform(0.01, 0.99);
    p.sigma_d = rng.uniform(0.0, 0.99);
    p.sigma_f = rng.uniform(0.0, 1.0);
    draw_scale(rng, p);
    if (p.rho - p.mu < kMargin || p.omega - p.delta < kMargin || p.epsilon - p.mu < kMargin ||
        1.0 - p.omega - p.rho < kMargin) {
      continue;
    }
    if (!check_params(p).empty()) continue;
    return p;
  }
}

ModelParams sample_bargaining_params(Rng& rng) {
  for (;;) {
    ModelParams p;
    p.alpha = rng.uniform(0.01, 0.99);
    p.lambda = rng.uniform(0.0, 0.95);
    p.epsilon = rng.uniform(0.02, 0.49);
    p.delta = p.epsilon;
    p.mu = rng.uniform(0.01, p.epsilon - kMargin);
    p.rho = rng.uniform(p.mu + kMargin, 0.98);
    p.omega = rng.uniform(p.delta + kMargin, 0.99);
    p.sigma_d = rng.uniform(0.0, 0.99);
    p.sigma_f = rng.uniform(0.0, 1.0);
    draw_scale(rng, p);
    if (1.0 - p.omega - p.rho < kMargin) continue;
    if (!check_params(p).empty() || !check_bargaining_assumptions(p).empty()) continue;
    return p;
  }
}

CostSpec sample_cost(Rng& rng) { return CostSpec::quadratic(rng.uniform(0.5, 5.0)); }

std::string describe(const ModelParams& p) {
  std::string out;
  for (const std::string& f : field_names()) {
    if (!out.empty()) out += ' ';
    out += f + '=' + round_trip(get_field(p, f));
  }
  return out;
}

namespace {

struct Check {
  Status status = Status::Pass;
  std::string note;
};

Check pass() { return {}; }
Check skip() { return {Status::Skip, {}}; }
Check fail(std::string note) { return {Status::Fail, std::move(note)}; }

Check expect(bool ok, const std::function<std::string()>& note) { return ok ? pass() : fail(note()); }

std::string num(double v) { return round_trip(v); }

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Trial {
  long index = 0;
  ModelParams p;
  CostSpec cost = CostSpec::quadratic(1.0);
  ModelParams q;  // bargaining draw
  CostSpec qcost = CostSpec::quadratic(1.0);
  double scale = 1.0;
  Variant variant = Variant::Baseline;
};

// Largest capacity whose investment is payable out of tau1 m, capped at tau_max.
double feasible_upper(const ModelParams& p, const CostSpec& cost) {
  if (cost.cost(p.tau_max - p.tau1) <= p.tau1 * p.m) return p.tau_max;
  double lo = p.tau1;
  double hi = p.tau_max;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cost.cost(mid - p.tau1) <= p.tau1 * p.m ? lo : hi) = mid;
  }
  return lo;
}

bool budget_ok(const PolicyOutcome& o, double m) {
  return std::abs(o.budget_residual(m)) <= 1e-12 * std::max(1.0, o.t * m);
}

int solved_gamma(const ModelParams& p, Variant v) {
  return v == Variant::Baseline ? civil_war_decision(p).gamma : revolution_decision(p).gamma;
}

Tau2Solution solved_tau2(const ModelParams& p, const CostSpec& cost, Variant v) {
  if (v == Variant::Baseline) return optimal_tau2(p, cost, civil_war_decision(p).gamma);
  const VariantResult r = revolution_solve(p, cost);
  Tau2Solution s;
  s.tau2 = r.tau2_star_prime;
  s.flags = r.flags;
  s.marginal_target = r.gamma_prime == 1 ? revolution_war_target(p) : investment_target(p, 0);
  return s;
}

// params ---------------------------------------------------------------------

Check params_idempotent(const Trial& t) {
  const ModelParams v = validate_params(t.p);
  return expect(v == t.p && check_params(v).empty(), [] { return std::string("validated point differs"); });
}

Check params_rejection(const Trial& t) {
  ModelParams bad = t.p;
  ViolationKind kind = ViolationKind::Eq1;
  switch (t.index % 5) {
    case 0: bad.mu = bad.rho; kind = ViolationKind::Eq1; break;
    case 1: bad.omega = bad.delta; kind = ViolationKind::Eq2; break;
    case 2: bad.epsilon = bad.mu; kind = ViolationKind::Eq3; break;
    case 3: bad.omega = 1.0 - bad.rho + 0.005; kind = ViolationKind::LotteryOverflow; break;
    default: bad.alpha = 1.5; kind = ViolationKind::Range; break;
  }
  try {
    validate_params(bad);
  } catch (const AssumptionViolation& e) {
    return expect(e.has(kind), [&] { return "rejection does not name " + std::string(to_string(kind)); });
  }
  return fail("invalid point accepted: " + std::string(to_string(kind)));
}

// policy ---------------------------------------------------------------------

Check policy_budget(const Trial& t) {
  const ModelParams& p = t.p;
  const double upper = feasible_upper(p, t.cost);
  const Tau2Solution s = solved_tau2(p, t.cost, t.variant);
  for (double tau : {p.tau1, s.tau2, upper}) {
    const PolicyOutcome p1 = period1_policy(p.tau1, tau, p.sigma_d, p.m, t.cost);
    if (!budget_ok(p1, p.m)) return fail("period 1 residual " + num(p1.budget_residual(p.m)) + " at tau2=" + num(tau));
    for (OutcomeKind k : kAllOutcomeKinds) {
      const PolicyOutcome o = period2_policy(k, tau, p.sigma_d, p.sigma_f, p.m);
      if (!budget_ok(o, p.m)) {
        return fail(std::string(to_string(k)) + " residual " + num(o.budget_residual(p.m)) + " at tau2=" + num(tau));
      }
    }
  }
  return pass();
}

Check policy_affine(const Trial& t) {
  const ModelParams& p = t.p;
  const double a = 0.1;
  const double b = 0.9;
  const double mid = 0.5 * (a + b);
  auto collinear = [&](const std::function<double(double)>& f) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(mid);
    return std::abs(fm - 0.5 * (fa + fb)) <= 1e-12 * std::max({1.0, std::abs(fa), std::abs(fb)});
  };
  for (Viewer v : {Viewer::I1, Viewer::O1}) {
    for (OutcomeKind k : kAllOutcomeKinds) {
      if (!collinear([&](double x) { return indirect_utility(v, k, x, p); })) {
        return fail("indirect utility not affine for " + std::string(to_string(k)));
      }
    }
    for (bool war : {false, true}) {
      const EvalOptions opts{t.variant, std::nullopt};
      if (!collinear([&](double x) { return period2_expected_utility(v, p, x, war, opts); })) {
        return fail(std::string("expected utility not affine, war=") + (war ? "1" : "0"));
      }
    }
  }
  return pass();
}

Check policy_war_sign(const Trial& t) {
  const double ref = war_advantage(t.p, 1.0, t.variant);
  if (std::abs(ref) <= 1e-12) return skip();
  for (double tau : {0.1, 0.5, 0.9}) {
    const double d = war_advantage(t.p, tau, t.variant);
    if ((d > 0.0) != (ref > 0.0)) return fail("war advantage changes sign at tau2=" + num(tau));
  }
  return pass();
}

Check policy_scale(const Trial& t) {
  const ModelParams& p = t.p;
  ModelParams big = p;
  big.m = p.m * t.scale;
  const double k = t.scale;
  for (double tau : {0.25, 0.75}) {
    for (Viewer v : {Viewer::I1, Viewer::O1}) {
      for (OutcomeKind kind : kAllOutcomeKinds) {
        if (!close_rel(indirect_utility(v, kind, tau, big), k * indirect_utility(v, kind, tau, p), 1e-12)) {
          return fail("indirect utility does not scale for " + std::string(to_string(kind)));
        }
      }
    }
    for (OutcomeKind kind : kAllOutcomeKinds) {
      const PolicyOutcome a = period2_policy(kind, tau, p.sigma_d, p.sigma_f, p.m);
      const PolicyOutcome b = period2_policy(kind, tau, big.sigma_d, big.sigma_f, big.m);
      if (!close_rel(b.r_inc, k * a.r_inc, 1e-12) || !close_rel(b.r_opp, k * a.r_opp, 1e-12) ||
          !close_rel(b.r_f, k * a.r_f, 1e-12)) {
        return fail("transfers do not scale for " + std::string(to_string(kind)));
      }
    }
  }
  // Zero investment keeps the cost term out of the comparison.
  const PolicyOutcome a = period1_policy(p.tau1, p.tau1, p.sigma_d, p.m, t.cost);
  const PolicyOutcome b = period1_policy(big.tau1, big.tau1, big.sigma_d, big.m, t.cost);
  if (!close_rel(b.r_inc, k * a.r_inc, 1e-12)) return fail("period-1 transfers do not scale");
  for (bool war : {false, true}) {
    if (!close_rel(expected_utility_O1(big, 0.5, war), k * expected_utility_O1(p, 0.5, war), 1e-12)) {
      return fail("O1 expected utility does not scale");
    }
    if (!close_rel(expected_utility_I1(big, t.cost, big.tau1, war), k * expected_utility_I1(p, t.cost, p.tau1, war),
                   1e-12)) {
      return fail("I1 expected utility does not scale");
    }
  }
  return pass();
}

// conflict -------------------------------------------------------------------

Check agreement(const ModelParams& p, std::optional<double> thr, Variant v) {
  if (!thr) return skip();
  if (std::abs(p.sigma_f - *thr) <= 1e-9) return skip();
  const bool by_threshold = p.sigma_f > *thr;
  const bool direct = war_advantage(p, 1.0, v) > 0.0;
  return expect(by_threshold == direct, [&] {
    return "threshold " + num(*thr) + " says " + (by_threshold ? "war" : "peace") + ", direct comparison disagrees";
  });
}

Check conflict_agreement(const Trial& t) {
  const Check c = agreement(t.p, civil_war_threshold(t.p), Variant::Baseline);
  if (c.status != Status::Pass) return c;
  return expect(civil_war_decision(t.p).gamma == (t.p.sigma_f > *civil_war_threshold(t.p) ? 1 : 0),
                [] { return std::string("civil_war_decision disagrees with the threshold"); });
}

Check conflict_full_cohesion(const Trial& t) {
  ModelParams p = t.p;
  p.sigma_d = 1.0;
  const std::optional<double> thr = civil_war_threshold(p);
  if (!thr) return fail("threshold undefined at sigma_d = 1");
  if (std::abs(*thr - 2.0) > 1e-12) return fail("threshold at sigma_d = 1 is " + num(*thr));
  return expect(civil_war_decision(p).gamma == 0, [] { return std::string("war at sigma_d = 1"); });
}

double central(const ModelParams& p, double ModelParams::*field, const std::function<double(const ModelParams&)>& f) {
  const double x = p.*field;
  const double h = default_fd_step(x);
  ModelParams lo = p;
  ModelParams hi = p;
  lo.*field = x - h;
  hi.*field = x + h;
  return (f(hi) - f(lo)) / (2.0 * h);
}

bool den_clear(const ModelParams& p, double ModelParams::*field) {
  const double h = default_fd_step(p.*field);
  ModelParams lo = p;
  ModelParams hi = p;
  lo.*field -= h;
  hi.*field += h;
  return threshold_denominator(lo) >= 0.01 && threshold_denominator(hi) >= 0.01 && lo.*field >= 0.0 &&
         hi.*field <= 1.0;
}

Check conflict_sensitivities(const Trial& t) {
  const ModelParams& p = t.p;
  if (threshold_denominator(p) < 0.01) return skip();
  const ThresholdSensitivities s = threshold_sensitivities(p);
  auto thr = [](const ModelParams& x) { return *civil_war_threshold(x); };
  const std::pair<double ModelParams::*, double> checks[] = {
      {&ModelParams::sigma_d, s.d_sigma_d}, {&ModelParams::lambda, s.d_lambda}, {&ModelParams::alpha, s.d_alpha}};
  const char* names[] = {"sigma_d", "lambda", "alpha"};
  bool any = false;
  for (int i = 0; i < 3; ++i) {
    if (!den_clear(p, checks[i].first)) continue;
    any = true;
    const double fd = central(p, checks[i].first, thr);
    if (std::abs(fd - checks[i].second) > 1e-6 * std::max(1.0, std::abs(checks[i].second))) {
      return fail(std::string("d/d") + names[i] + " closed form " + num(checks[i].second) + " vs fd " + num(fd));
    }
  }
  return any ? pass() : skip();
}

Check conflict_sensitivity_signs(const Trial& t) {
  const ModelParams& p = t.p;
  if (!(threshold_denominator(p) > 0.0)) return skip();
  const ThresholdSensitivities s = threshold_sensitivities(p);
  const double gap = p.rho - p.mu;
  const double edge = p.alpha * p.omega + (1.0 - p.alpha) * (p.delta - p.epsilon);
  // The sign claims hold where the numerator factors are positive.
  if (p.alpha * gap * (1.0 + p.lambda) + 2.0 * edge > 0.0 && !(s.d_sigma_d > 0.0)) {
    return fail("threshold not increasing in sigma_d: " + num(s.d_sigma_d));
  }
  if (p.alpha * gap + edge > 0.0 && p.sigma_d < 1.0 && !(s.d_lambda < 0.0)) {
    return fail("threshold not decreasing in lambda: " + num(s.d_lambda));
  }
  const double expect_alpha = (p.delta - p.epsilon);
  if (expect_alpha != 0.0 && (s.d_alpha > 0.0) != (expect_alpha > 0.0)) {
    return fail("d/dalpha sign does not follow delta - epsilon: " + num(s.d_alpha));
  }
  return pass();
}

Check conflict_dphi(const Trial& t) {
  const FdEstimate e = finite_difference(t.p, t.cost, FdTarget::Phi, FdParam::Alpha, 0.0, t.variant);
  if (!e.regime_stable) return skip();
  const int gamma = solved_gamma(t.p, t.variant);
  const double exact = gamma == 1 ? t.p.omega - t.p.delta + t.p.rho : -(t.p.epsilon - t.p.mu);
  return expect(std::abs(e.value - exact) <= 1e-9, [&] { return "dphi/dalpha " + num(e.value) + " vs " + num(exact); });
}

// fiscal ---------------------------------------------------------------------

double oracle(const Trial& t, const ModelParams& p, const CostSpec& cost, int gamma, std::optional<double> sd2 = {}) {
  return brute_force_tau2(p, cost, gamma, kOracleStep, {t.variant, sd2});
}

Check fiscal_oracle(const Trial& t) {
  const Tau2Solution s = solved_tau2(t.p, t.cost, t.variant);
  if (s.flags.clamped()) return skip();
  const double b = oracle(t, t.p, t.cost, solved_gamma(t.p, t.variant));
  return expect(std::abs(s.tau2 - b) <= kOracleTolerance, [&] { return "closed form " + num(s.tau2) + " vs grid " + num(b); });
}

Check fiscal_oracle_clamp(const Trial& t) {
  const Tau2Solution s = solved_tau2(t.p, t.cost, t.variant);
  if (!s.flags.clamped()) return skip();
  const double b = oracle(t, t.p, t.cost, solved_gamma(t.p, t.variant));
  return expect(std::abs(s.tau2 - b) <= kOracleTolerance, [&] { return "clamped " + num(s.tau2) + " vs grid " + num(b); });
}

Check fiscal_maximality(const Trial& t) {
  const Tau2Solution s = solved_tau2(t.p, t.cost, t.variant);
  if (s.flags.corner || s.flags.clamped()) return skip();
  const bool war = solved_gamma(t.p, t.variant) == 1;
  const EvalOptions opts{t.variant, std::nullopt};
  const double upper = feasible_upper(t.p, t.cost);
  const double best = expected_utility_I1(t.p, t.cost, s.tau2, war, opts);
  const double d = 10.0 * kOracleStep;
  bool any = false;
  for (double tau : {s.tau2 - d, s.tau2 + d}) {
    if (tau < t.p.tau1 || tau > upper) continue;
    any = true;
    const double v = expected_utility_I1(t.p, t.cost, tau, war, opts);
    if (v > best) return fail("utility " + num(v) + " at " + num(tau) + " beats " + num(best));
  }
  return any ? pass() : skip();
}

Check fiscal_second_order(const Trial& t) {
  const bool war = solved_gamma(t.p, t.variant) == 1;
  const EvalOptions opts{t.variant, std::nullopt};
  const double upper = feasible_upper(t.p, t.cost);
  const double span = upper - t.p.tau1;
  if (span < 1e-6) return skip();
  const double d = span / 10.0;
  std::vector<double> f;
  for (int k = 0; k <= 10; ++k) {
    f.push_back(expected_utility_I1(t.p, t.cost, std::min(upper, t.p.tau1 + k * d), war, opts));
  }
  for (int k = 1; k < 10; ++k) {
    const double dd = f[k + 1] - 2.0 * f[k] + f[k - 1];
    if (dd > 1e-12 * std::max(1.0, std::abs(f[k]))) return fail("positive second difference " + num(dd));
  }
  return pass();
}

Check fiscal_corner(const Trial& t) {
  const Tau2Solution s = solved_tau2(t.p, t.cost, t.variant);
  if (s.flags.clamped()) return skip();
  const bool by_target = s.marginal_target <= 0.0;
  const bool at_tau1 = s.tau2 == t.p.tau1;
  return expect(s.flags.corner == by_target && by_target == at_tau1, [&] {
    return "corner flag " + std::to_string(s.flags.corner) + " target " + num(s.marginal_target) + " tau2 " +
           num(s.tau2);
  });
}

// statics --------------------------------------------------------------------

struct Slope {
  bool usable = false;
  FdEstimate fd;
  Tau2Solution base;
  RegimeClassification cls;
};

Slope tau2_slope(const ModelParams& p, const CostSpec& cost, Variant v) {
  Slope s;
  s.cls = classify(p, v);
  s.base = solved_tau2(p, cost, v);
  s.fd = finite_difference(p, cost, FdTarget::Tau2, FdParam::Alpha, 0.0, v);
  s.usable = s.fd.regime_stable && !s.base.flags.corner && !s.base.flags.clamped();
  return s;
}

Check statics_prop1(const Trial& t) {
  const FdEstimate e = finite_difference(t.p, t.cost, FdTarget::Phi, FdParam::Alpha, 0.0, t.variant);
  if (!e.regime_stable) return skip();
  const RegimeClassification c = classify(t.p, t.variant);
  return expect((e.value > 0.0) == (c.prop1 == Prop1::TurnoverUp),
                [&] { return "dphi/dalpha " + num(e.value) + " vs " + std::string(to_string(c.prop1)); });
}

double slope_tolerance(const ModelParams& p, const CostSpec& cost) { return 1e-8 * p.m / cost.coefficient(); }

Check prop2_sign(const Slope& s, const ModelParams& p, const CostSpec& cost) {
  const double v = s.fd.value;
  switch (s.cls.prop2) {
    case Prop2::Case2B1: return expect(v > 0.0, [&] { return "2.B.1 with slope " + num(v); });
    case Prop2::Case2B2:
      return expect(std::abs(v) <= slope_tolerance(p, cost), [&] { return "2.B.2 with slope " + num(v); });
    case Prop2::Case2A:
    case Prop2::Case2B3: return expect(v < 0.0, [&] { return std::string(to_string(s.cls.prop2)) + " with slope " + num(v); });
  }
  return pass();
}

Check statics_prop2(const Trial& t) {
  const Slope s = tau2_slope(t.p, t.cost, t.variant);
  if (!s.usable) return skip();
  if (s.cls.gamma == 0 && std::abs(prop2_margin(t.p)) < 1e-7) return skip();
  return prop2_sign(s, t.p, t.cost);
}

Check statics_prop3(const Trial& t) {
  const Slope s = tau2_slope(t.p, t.cost, t.variant);
  if (!s.usable) return skip();
  if (s.cls.gamma == 0 && std::abs(prop2_margin(t.p)) < 1e-7) return skip();
  const double v = s.fd.value;
  const Prop1 p1 = s.cls.prop1;
  switch (s.cls.prop3) {
    case Prop3::Case3B1:
      return expect(p1 == Prop1::TurnoverDown && v > 0.0, [&] { return "3.B.1 with slope " + num(v); });
    case Prop3::Case3A:
      return expect(p1 == Prop1::TurnoverUp && v < 0.0, [&] { return "3.A with slope " + num(v); });
    case Prop3::Case3B2:
      return expect(p1 == Prop1::TurnoverDown && v <= slope_tolerance(t.p, t.cost),
                    [&] { return "3.B.2 with slope " + num(v); });
  }
  return pass();
}

Check statics_equality(const Trial& t) {
  ModelParams p = t.p;
  p.epsilon = p.mu * (1.0 - p.lambda * p.sigma_d) / (1.0 - p.sigma_d);
  if (p.epsilon - p.mu < kMargin || p.epsilon > 0.99 || !check_params(p).empty()) return skip();
  const Slope s = tau2_slope(p, t.cost, t.variant);
  if (!s.usable || s.cls.gamma != 0) return skip();
  if (s.cls.prop2 != Prop2::Case2B2) return fail("equality point classified " + std::string(to_string(s.cls.prop2)));
  return expect(std::abs(s.fd.value) <= slope_tolerance(p, t.cost),
                [&] { return "slope at equality point " + num(s.fd.value); });
}

Check statics_boundary(const Trial& t) {
  ModelParams p = t.p;
  p.lambda = 0.0;
  const double edge = p.mu / (1.0 - p.sigma_d);
  ModelParams above = p;
  ModelParams below = p;
  above.epsilon = edge * (1.0 + 1e-6);
  below.epsilon = edge * (1.0 - 1e-6);
  if (below.epsilon - below.mu < 1e-9 || above.epsilon > 0.99) return skip();
  if (!check_params(above).empty() || !check_params(below).empty()) return skip();
  const RegimeClassification a = classify(above, t.variant);
  const RegimeClassification b = classify(below, t.variant);
  if (a.gamma != 0 || b.gamma != 0) return skip();
  return expect(a.prop2 == Prop2::Case2B1 && b.prop2 == Prop2::Case2B3, [&] {
    return "across eps(1-sd)=mu: " + std::string(to_string(a.prop2)) + " above, " + std::string(to_string(b.prop2)) +
           " below";
  });
}

// bargaining -----------------------------------------------------------------

Check bargain_binding(const Trial& t) {
  const BargainingOutcome o = bargaining_outcome(t.q);
  if (o.regime != BargainingRegime::R4A) return skip();
  if (!(o.sigma_d2_star >= 0.0 && o.sigma_d2_star <= 1.0)) return fail("sigma_d2* outside [0,1]: " + num(o.sigma_d2_star));
  for (double tau : {t.q.tau1, 0.5, 1.0}) {
    if (!(tau > 0.0)) continue;
    const double slack = acceptance_slack(t.q, o.sigma_d2_star, tau);
    if (std::abs(slack) > 1e-10) return fail("acceptance slack " + num(slack) + " at tau2=" + num(tau));
    if (!o1_accept_decision(t.q, o.sigma_d2_star, tau)) return fail("O1 rejects the equilibrium offer");
  }
  return pass();
}

Check bargain_incumbent(const Trial& t) {
  const BargainingOutcome o = bargaining_outcome(t.q);
  if (o.regime != BargainingRegime::R4A) return skip();
  for (double tau : {t.q.tau1, 0.5, 1.0}) {
    const double offer = incumbent_offer_value(t.q, o.sigma_d2_star, tau);
    const double reject = incumbent_rejection_value(t.q, tau);
    if (!(offer > reject)) return fail("offer value " + num(offer) + " <= rejection value " + num(reject));
  }
  return pass();
}

Check bargain_monotone(const Trial& t) {
  const BargainingOutcome o = bargaining_outcome(t.q);
  if (o.regime != BargainingRegime::R4A || o.sigma_d2_star >= 1.0) return skip();
  for (double ModelParams::*field : {&ModelParams::sigma_f, &ModelParams::alpha}) {
    const double x = t.q.*field;
    const double h = default_fd_step(x);
    ModelParams lo = t.q;
    ModelParams hi = t.q;
    lo.*field = std::max(0.0, x - h);
    hi.*field = std::min(1.0, x + h);
    const BargainingOutcome a = bargaining_outcome(lo);
    const BargainingOutcome b = bargaining_outcome(hi);
    if (a.regime != o.regime || b.regime != o.regime || b.sigma_d2_star >= 1.0) return skip();
    const double fd = (equilibrium_sigma_d2(hi) - equilibrium_sigma_d2(lo)) / (hi.*field - lo.*field);
    if (!(fd > 0.0)) {
      return fail(std::string(field == &ModelParams::alpha ? "d/dalpha" : "d/dsigma_f") + " of sigma_d2* is " + num(fd));
    }
  }
  return pass();
}

Check bargain_cond11_alpha(const Trial& t) {
  if (t.q.alpha + 0.05 > 1.0) return skip();
  ModelParams up = t.q;
  up.alpha += 0.05;
  const double a = bargaining_condition_lhs(t.q);
  const double b = bargaining_condition_lhs(up);
  if (b < a - 1e-15) return fail("condition (11) left side falls with alpha: " + num(a) + " -> " + num(b));
  return expect(!(b <= 0.5) || a <= 0.5, [] { return std::string("condition (11) gained a point as alpha rose"); });
}

Check bargain_prop5(const Trial& t) {
  const Prop5Result r = classify_prop5(t.q, t.qcost);
  if (!r.regime_stable) return skip();
  switch (r.kase) {
    case Prop5Case::Case5A:
      if (!(r.dtarget_dalpha < 0.0)) return fail("5.A target slope " + num(r.dtarget_dalpha));
      return expect(r.dtau2_dalpha <= 1e-12, [&] { return "5.A capacity slope " + num(r.dtau2_dalpha); });
    case Prop5Case::Case5B:
      if (!r.prop5b_condition) return skip();
      return expect(r.dtarget_dalpha > 0.0, [&] { return "5.B target slope " + num(r.dtarget_dalpha); });
    case Prop5Case::Case5C:
      return expect(r.dtarget_dalpha < 0.0, [&] { return "5.C target slope " + num(r.dtarget_dalpha); });
  }
  return pass();
}

Check bargain_oracle(const Trial& t) {
  const BargainedCapacity b = bargained_tau2(t.q, t.qcost);
  if (b.solution.flags.clamped()) return skip();
  const double g = brute_force_tau2(t.q, t.qcost, b.gamma, kOracleStep, {Variant::Baseline, b.outcome.sigma_d2_star});
  return expect(std::abs(b.solution.tau2 - g) <= kOracleTolerance,
                [&] { return "bargained " + num(b.solution.tau2) + " vs grid " + num(g); });
}

// revolution -----------------------------------------------------------------

Check rev_ordering(const Trial& t) {
  const auto a = civil_war_threshold(t.p);
  const auto b = revolution_threshold(t.p);
  if (!a || !b) return skip();
  return expect(*b <= *a + 1e-12 * std::max(1.0, std::abs(*a)),
                [&] { return "revolution threshold " + num(*b) + " above baseline " + num(*a); });
}

Check rev_zero_cohesion(const Trial& t) {
  ModelParams p = t.p;
  p.sigma_d = 0.0;
  const auto a = civil_war_threshold(p);
  const auto b = revolution_threshold(p);
  if (!a || !b) return skip();
  return expect(std::abs(*a - *b) <= 1e-12, [&] { return "thresholds at sigma_d=0: " + num(*a) + " vs " + num(*b); });
}

Check rev_peace_identity(const Trial& t) {
  const VariantResult r = revolution_solve(t.p, t.cost);
  if (r.gamma_prime != 0) return skip();
  const double base = optimal_tau2(t.p, t.cost, 0).tau2;
  return expect(r.tau2_star_prime == base, [&] { return "peace capacity " + num(r.tau2_star_prime) + " vs " + num(base); });
}

Check rev_agreement(const Trial& t) { return agreement(t.p, revolution_threshold(t.p), Variant::Revolution); }

Check rev_war_derivative(const Trial& t) {
  const VariantResult r = revolution_solve(t.p, t.cost);
  if (r.gamma_prime != 1 || r.flags.corner || r.flags.clamped()) return skip();
  const FdEstimate e = finite_difference(t.p, t.cost, FdTarget::Tau2, FdParam::Alpha, 0.0, Variant::Revolution);
  if (!e.regime_stable) return skip();
  const double exact = -t.p.m * (t.p.omega - t.p.delta + t.p.rho) / t.cost.curvature(r.tau2_star_prime - t.p.tau1);
  return expect(e.value < 0.0 && std::abs(e.value - exact) <= 1e-6 * std::max(1.0, std::abs(exact)),
                [&] { return "war-branch slope " + num(e.value) + " vs " + num(exact); });
}

Check rev_oracle(const Trial& t) {
  const VariantResult r = revolution_solve(t.p, t.cost);
  if (r.flags.clamped()) return skip();
  const double g = brute_force_tau2(t.p, t.cost, r.gamma_prime, kOracleStep, {Variant::Revolution, std::nullopt});
  return expect(std::abs(r.tau2_star_prime - g) <= kOracleTolerance,
                [&] { return "variant capacity " + num(r.tau2_star_prime) + " vs grid " + num(g); });
}

Check rev_classification(const Trial& t) {
  const auto thr = revolution_threshold(t.p);
  if (thr && std::abs(t.p.sigma_f - *thr) <= 1e-9) return skip();
  const int gamma = thr ? (t.p.sigma_f > *thr ? 1 : 0) : (war_advantage(t.p, 1.0, Variant::Revolution) > 0.0 ? 1 : 0);
  RegimeClassification want;
  want.gamma = gamma;
  const double margin = prop2_margin(t.p);
  if (gamma == 1) {
    want.prop1 = Prop1::TurnoverUp;
    want.prop2 = Prop2::Case2A;
    want.prop3 = Prop3::Case3A;
  } else {
    want.prop1 = Prop1::TurnoverDown;
    want.prop2 = std::abs(margin) <= 1e-12 ? Prop2::Case2B2 : margin > 0.0 ? Prop2::Case2B1 : Prop2::Case2B3;
    want.prop3 = want.prop2 == Prop2::Case2B1 ? Prop3::Case3B1 : Prop3::Case3B2;
  }
  const RegimeClassification got = classify(t.p, Variant::Revolution);
  return expect(got.gamma == want.gamma && got.prop1 == want.prop1 && got.prop2 == want.prop2 && got.prop3 == want.prop3,
                [&] { return "variant classified " + std::string(to_string(got.prop2)) + ", expected " +
                             std::string(to_string(want.prop2)); });
}

struct Property {
  const char* name;
  Check (*run)(const Trial&);
  bool revolution_only;
};

const std::vector<Property>& all_properties() {
  static const std::vector<Property> props = {
      {"params.idempotent", params_idempotent, false},
      {"params.rejection_names_violation", params_rejection, false},
      {"policy.budget_identity", policy_budget, false},
      {"policy.affine_in_tau2", policy_affine, false},
      {"policy.war_sign_tau2_invariant", policy_war_sign, false},
      {"policy.scale_invariance", policy_scale, false},
      {"conflict.threshold_agreement", conflict_agreement, false},
      {"conflict.threshold_at_full_cohesion", conflict_full_cohesion, false},
      {"conflict.sensitivities_fd", conflict_sensitivities, false},
      {"conflict.sensitivity_signs", conflict_sensitivity_signs, false},
      {"conflict.dphi_dalpha_exact", conflict_dphi, false},
      {"fiscal.oracle_equivalence", fiscal_oracle, false},
      {"fiscal.oracle_at_clamp", fiscal_oracle_clamp, false},
      {"fiscal.maximality", fiscal_maximality, false},
      {"fiscal.second_order", fiscal_second_order, false},
      {"fiscal.corner_consistency", fiscal_corner, false},
      {"statics.prop1_sign", statics_prop1, false},
      {"statics.prop2_sign", statics_prop2, false},
      {"statics.prop3_consistency", statics_prop3, false},
      {"statics.prop2_equality_points", statics_equality, false},
      {"statics.boundary_curve_lambda0", statics_boundary, false},
      {"bargaining.binding_offer", bargain_binding, false},
      {"bargaining.incumbent_prefers_offer", bargain_incumbent, false},
      {"bargaining.sigma_monotone", bargain_monotone, false},
      {"bargaining.cond11_shrinks_in_alpha", bargain_cond11_alpha, false},
      {"bargaining.prop5_signs", bargain_prop5, false},
      {"bargaining.two_period_oracle", bargain_oracle, false},
      {"revolution.ordering", rev_ordering, true},
      {"revolution.coincide_at_zero_cohesion", rev_zero_cohesion, true},
      {"revolution.peace_identity", rev_peace_identity, true},
      {"revolution.threshold_agreement", rev_agreement, true},
      {"revolution.war_derivative", rev_war_derivative, true},
      {"revolution.oracle", rev_oracle, true},
      {"revolution.classification_mirror", rev_classification, true},
  };
  return props;
}

std::vector<const Property*> selected(Variant v) {
  std::vector<const Property*> out;
  for (const Property& p : all_properties()) {
    if (!p.revolution_only || v == Variant::Revolution) out.push_back(&p);
  }
  return out;
}

struct TrialResult {
  std::vector<Check> checks;
  std::vector<std::string> regimes;
  std::string point;
};

TrialResult run_trial(long index, std::uint64_t seed, Variant variant, const std::vector<const Property*>& props) {
  Trial t;
  t.index = index;
  t.variant = variant;
  Rng base(seed, static_cast<std::uint64_t>(index), 0);
  t.p = sample_params(base);
  t.cost = sample_cost(base);
  t.scale = base.uniform(0.5, 3.0);
  Rng barg(seed, static_cast<std::uint64_t>(index), 1);
  t.q = sample_bargaining_params(barg);
  t.qcost = sample_cost(barg);

  TrialResult r;
  r.point = "base: " + describe(t.p) + " c=" + num(t.cost.coefficient()) + " | bargaining: " + describe(t.q) +
            " c=" + num(t.qcost.coefficient());
  for (const Property* prop : props) {
    try {
      r.checks.push_back(prop->run(t));
    } catch (const std::exception& e) {
      r.checks.push_back(fail(std::string("exception: ") + e.what()));
    }
  }
  try {
    const std::string tag = variant == Variant::Baseline ? "baseline" : "revolution";
    r.regimes.push_back(tag + ".prop2=" + std::string(to_string(classify(t.p, variant).prop2)));
    r.regimes.push_back("bargaining.regime=" + std::string(to_string(bargaining_outcome(t.q).regime)));
  } catch (const std::exception&) {
    r.regimes.push_back("unclassified");
  }
  return r;
}

}  // namespace

std::vector<std::string> property_names(Variant variant) {
  std::vector<std::string> out;
  for (const Property* p : selected(variant)) out.emplace_back(p->name);
  return out;
}

long VerifyReport::failures() const {
  long n = 0;
  for (const PropertyTally& t : properties) n += t.fail;
  return n;
}

const PropertyTally* VerifyReport::find(const std::string& name) const {
  for (const PropertyTally& t : properties) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::string VerifyReport::render() const {
  std::ostringstream os;
  os << "verify trials=" << trials << " seed=" << seed << " variant=" << to_string(variant) << '\n';
  char line[160];
  std::snprintf(line, sizeof line, "%-42s %8s %8s %8s\n", "property", "pass", "fail", "skipped");
  os << line;
  for (const PropertyTally& t : properties) {
    std::snprintf(line, sizeof line, "%-42s %8ld %8ld %8ld\n", t.name.c_str(), t.pass, t.fail, t.skipped);
    os << line;
  }
  os << "regime frequencies\n";
  for (const auto& [name, count] : regime_frequencies) {
    std::snprintf(line, sizeof line, "  %-40s %8ld\n", name.c_str(), count);
    os << line;
  }
  if (!counterexamples.empty()) {
    os << "counterexamples\n";
    for (const Counterexample& c : counterexamples) {
      os << "  " << c.property << " trial=" << c.trial << ": " << c.detail << '\n';
    }
  }
  os << "failures=" << failures() << '\n';
  return os.str();
}

VerifyReport run_verify(long trials, std::uint64_t seed, Variant variant, unsigned workers) {
  if (trials < 0) throw std::invalid_argument("trials must be >= 0");
  const std::vector<const Property*> props = selected(variant);
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));

  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<long>(trials, 1))));
  auto work = [&](unsigned w) {
    for (long i = w; i < trials; i += n) results[static_cast<std::size_t>(i)] = run_trial(i, seed, variant, props);
  };
  if (n == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(work, w);
  }

  VerifyReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.variant = variant;
  for (const Property* p : props) rep.properties.push_back({p->name});
  for (long i = 0; i < trials; ++i) {
    const TrialResult& r = results[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < props.size(); ++k) {
      PropertyTally& tally = rep.properties[k];
      switch (r.checks[k].status) {
        case Status::Pass: ++tally.pass; break;
        case Status::Skip: ++tally.skipped; break;
        case Status::Fail:
          ++tally.fail;
          rep.counterexamples.push_back({tally.name, i, r.checks[k].note + " | " + r.point});
          break;
      }
    }
    for (const std::string& g : r.regimes) ++rep.regime_frequencies[g];
  }
  return rep;
}

}  // namespace fiscap::cli
