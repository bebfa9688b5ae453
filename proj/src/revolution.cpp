#include "fiscap/revolution.hpp"

namespace fiscap {

double revolution_threshold_denominator(const ModelParams& p) {
  const double rebel = p.alpha * p.omega + (1.0 - p.alpha) * p.delta;
  return p.alpha * (p.rho - p.mu) * (1.0 - p.lambda * p.sigma_d) + rebel -
         (1.0 - p.alpha) * p.epsilon * (1.0 - p.sigma_d) + p.alpha * p.rho * p.lambda * p.sigma_d;
}

std::optional<double> revolution_threshold(const ModelParams& p) {
  const double den = revolution_threshold_denominator(p);
  if (!(den > 0.0)) return std::nullopt;
  const double rebel = p.alpha * p.omega + (1.0 - p.alpha) * p.delta;
  const double num = 2.0 * (p.alpha * (p.rho - p.mu) * (p.sigma_d - p.lambda) - rebel +
                            (1.0 - p.alpha) * p.epsilon * (1.0 - p.sigma_d) -
                            p.alpha * p.rho * p.lambda * p.sigma_d);
  return num / den;
}

ConflictDecision revolution_decision(const ModelParams& p) {
  return detail::decide(p, revolution_threshold(p), Variant::Revolution);
}

double revolution_war_target(const ModelParams& p) {
  return p.m * (-turnover_probability(p, 1) + 0.5 * (1.0 - p.sigma_d));
}

VariantResult revolution_solve(const ModelParams& p, const CostSpec& cost) {
  VariantResult r;
  const ConflictDecision d = revolution_decision(p);
  r.sigma_f_bar_prime = d.threshold;
  r.gamma_prime = d.gamma;
  r.phi_prime = turnover_probability(p, d.gamma);

  // Peace leaves the incumbent's problem untouched.
  const Tau2Solution s =
      d.gamma == 1 ? capacity_from_target(p, cost, revolution_war_target(p)) : optimal_tau2(p, cost, 0);
  r.tau2_star_prime = s.tau2;
  r.flags = s.flags;
  r.regimes = classify(p, Variant::Revolution);

  r.period1 = period1_policy(p.tau1, r.tau2_star_prime, p.sigma_d, p.m, cost);
  for (OutcomeKind k : kAllOutcomeKinds) {
    r.period2_by_kind.emplace(k, period2_policy(k, r.tau2_star_prime, p.sigma_d, p.sigma_f, p.m));
  }
  const EvalOptions opts{Variant::Revolution, std::nullopt};
  r.eu_I1 = expected_utility_I1(p, cost, r.tau2_star_prime, d.gamma == 1, opts);
  r.eu_O1 = expected_utility_O1(p, r.tau2_star_prime, d.gamma == 1, opts);
  return r;
}

}  // namespace fiscap
