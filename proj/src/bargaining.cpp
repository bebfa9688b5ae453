#include "fiscap/bargaining.hpp"

#include <algorithm>
#include <cmath>

#include "fiscap/conflict.hpp"
#include "fiscap/statics.hpp"

namespace fiscap {
namespace {

constexpr double kBindingTolerance = 1e-12;

double foreign_share_term(const ModelParams& p) {
  return p.alpha * (p.rho - p.mu) * (1.0 - p.lambda) * p.sigma_f / (2.0 + p.sigma_f);
}

struct RegimeCapacity {
  double sigma_d2;
  int gamma;
  Tau2Solution solution;
};

// Investment under a fixed bargaining regime, re-deriving sigma_d2 from p.
RegimeCapacity capacity_in_regime(const ModelParams& p, const CostSpec& cost, BargainingRegime regime) {
  RegimeCapacity rc{0.0, regime == BargainingRegime::R4C ? 1 : 0, {}};
  if (regime == BargainingRegime::R4A) {
    const double lhs = bargaining_condition_lhs(p);
    rc.sigma_d2 = std::abs(lhs - 0.5) <= kBindingTolerance ? 1.0 : std::clamp(equilibrium_sigma_d2(p), 0.0, 1.0);
  }
  if (rc.sigma_d2 == 1.0) {
    // Full cohesiveness leaves no rent to protect: C'(0) = 0 pins tau2 at tau1.
    rc.solution = capacity_from_target(p, cost, 0.0);
    rc.solution.marginal_target = two_period_target(p, 1.0, rc.gamma);
    return rc;
  }
  rc.solution = capacity_from_target(p, cost, two_period_target(p, rc.sigma_d2, rc.gamma));
  return rc;
}

}  // namespace

std::string_view to_string(BargainingRegime r) {
  switch (r) {
    case BargainingRegime::R4A: return "4.A";
    case BargainingRegime::R4B: return "4.B";
    case BargainingRegime::R4C: return "4.C";
  }
  return "?";
}

std::string_view to_string(Prop5Case c) {
  switch (c) {
    case Prop5Case::Case5A: return "5.A";
    case Prop5Case::Case5B: return "5.B";
    case Prop5Case::Case5C: return "5.C";
  }
  return "?";
}

std::vector<BargainingViolation> check_bargaining_assumptions(const ModelParams& p) {
  std::vector<BargainingViolation> out;
  if (!(p.epsilon <= 0.5)) {
    out.push_back({BargainingAssumption::EpsilonAtMostHalf, "requires epsilon <= 1/2"});
  }
  if (p.epsilon != p.delta) {
    out.push_back({BargainingAssumption::EpsilonEqualsDelta, "requires epsilon = delta"});
  }
  if (!(0.5 > (1.0 - p.alpha) * p.epsilon + p.alpha * p.mu * (1.0 + p.lambda) / 2.0)) {
    out.push_back({BargainingAssumption::WeakCoalition,
                   "requires 1/2 > (1 - alpha) epsilon + alpha mu (1 + lambda) / 2"});
  }
  return out;
}

double bargaining_condition_lhs(const ModelParams& p) {
  return p.alpha * p.omega + p.alpha * p.rho * p.lambda + p.alpha * p.mu * (1.0 - p.lambda) / 2.0 +
         (1.0 - p.alpha) * p.delta + foreign_share_term(p);
}

double equilibrium_sigma_d2(const ModelParams& p) {
  const double x = foreign_share_term(p);
  const double num = p.alpha * (p.omega + (p.rho - p.mu) * p.lambda) + x;
  const double den = 1.0 - p.alpha * (p.omega + p.mu + p.rho * p.lambda) - 2.0 * (1.0 - p.alpha) * p.epsilon - x;
  return num / den;
}

BargainingOutcome bargaining_outcome(const ModelParams& p) {
  BargainingOutcome o;
  o.cond11_lhs = bargaining_condition_lhs(p);
  o.cond12_lhs = (1.0 - p.alpha) * p.epsilon + p.alpha * p.mu * (1.0 + p.lambda) / 2.0;
  o.cond12_rhs = o.cond11_lhs;

  if (o.cond11_lhs > 0.5 + kBindingTolerance) {
    o.regime = BargainingRegime::R4C;
    o.sigma_d2_star = 0.0;
    o.accepted = false;
  } else if (o.cond12_lhs < o.cond12_rhs) {
    o.regime = BargainingRegime::R4A;
    o.sigma_d2_star = std::abs(o.cond11_lhs - 0.5) <= kBindingTolerance
                          ? 1.0
                          : std::clamp(equilibrium_sigma_d2(p), 0.0, 1.0);
  } else {
    o.regime = BargainingRegime::R4B;
    o.sigma_d2_star = 0.0;
  }
  return o;
}

double acceptance_slack(const ModelParams& p, double offer, double tau2) {
  const double inside = expected_utility_O1(p, tau2, false, {Variant::Baseline, offer});
  const double reservation = expected_utility_O1(p, tau2, true, {Variant::Baseline, 0.0});
  return inside - reservation;
}

bool o1_accept_decision(const ModelParams& p, double offer, double tau2) {
  if (!(offer >= 0.0 && offer <= 1.0)) throw std::invalid_argument("offer outside [0,1]");
  if (!(tau2 > 0.0 && tau2 <= 1.0)) throw std::invalid_argument("tau2 outside (0,1]");
  // Indifference, up to rounding of the two mixtures, means acceptance.
  return acceptance_slack(p, offer, tau2) >= -kBindingTolerance * std::max(1.0, p.m);
}

double incumbent_offer_value(const ModelParams& p, double offer, double tau2) {
  return period2_expected_utility(Viewer::I1, p, tau2, false, {Variant::Baseline, offer});
}

double incumbent_rejection_value(const ModelParams& p, double tau2) {
  return period2_expected_utility(Viewer::I1, p, tau2, true, {Variant::Baseline, 0.0});
}

double two_period_target(const ModelParams& p, double sigma_d2, int gamma) {
  const double phi = turnover_probability(p, gamma);
  const double foreign = gamma == 1 ? p.rho : p.mu;
  const double s2 = sigma_d2;
  return p.m * (1.0 + p.sigma_d) / (1.0 + s2) *
         (-phi * (1.0 - s2) - p.alpha * foreign * (1.0 - p.lambda) * s2 + 0.5 * (1.0 - s2));
}

BargainedCapacity bargained_tau2(const ModelParams& p, const CostSpec& cost) {
  BargainedCapacity b;
  b.outcome = bargaining_outcome(p);
  const RegimeCapacity rc = capacity_in_regime(p, cost, b.outcome.regime);
  b.gamma = rc.gamma;
  b.solution = rc.solution;
  return b;
}

Prop5Result classify_prop5(const ModelParams& p, const CostSpec& cost) {
  Prop5Result r;
  r.outcome = bargaining_outcome(p);
  switch (r.outcome.regime) {
    case BargainingRegime::R4A: r.kase = Prop5Case::Case5A; break;
    case BargainingRegime::R4B: r.kase = Prop5Case::Case5B; break;
    case BargainingRegime::R4C: r.kase = Prop5Case::Case5C; break;
  }
  r.prop5b_condition = (p.epsilon - p.mu) > r.outcome.sigma_d2_star * (p.epsilon - p.lambda * p.mu);

  const RegimeCapacity base = capacity_in_regime(p, cost, r.outcome.regime);
  r.tau2_star = base.solution.tau2;
  r.corner = base.solution.flags.corner;
  r.clamped = base.solution.flags.clamped();

  const double h = default_fd_step(p.alpha);
  ModelParams lo = p;
  ModelParams hi = p;
  double span = 2.0 * h;
  if (p.alpha - h < 0.0) {
    span = h;
    r.one_sided = true;
  } else {
    lo.alpha = p.alpha - h;
  }
  if (p.alpha + h > 1.0) {
    span = h;
    r.one_sided = true;
  } else {
    hi.alpha = p.alpha + h;
  }
  const RegimeCapacity down = capacity_in_regime(lo, cost, r.outcome.regime);
  const RegimeCapacity up = capacity_in_regime(hi, cost, r.outcome.regime);
  r.dtau2_dalpha = (up.solution.tau2 - down.solution.tau2) / span;
  r.dtarget_dalpha = (up.solution.marginal_target - down.solution.marginal_target) / span;
  r.regime_stable = bargaining_outcome(lo).regime == r.outcome.regime &&
                    bargaining_outcome(hi).regime == r.outcome.regime;
  return r;
}

}  // namespace fiscap
