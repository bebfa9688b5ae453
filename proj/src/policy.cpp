#include "fiscap/policy.hpp"

#include <sstream>

namespace fiscap {

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::IncumbentRetains: return "incumbent_retains";
    case OutcomeKind::OppositionRules: return "opposition_rules";
    case OutcomeKind::OppositionRulesPostRevolution: return "opposition_rules_post_revolution";
    case OutcomeKind::ForeignAdministration: return "foreign_administration";
  }
  return "?";
}

std::string_view to_string(Variant v) { return v == Variant::Baseline ? "baseline" : "revolution"; }

double PolicyOutcome::budget_residual(double m) const noexcept {
  return t * m - (invest_cost + 0.5 * (r_inc + r_opp) + r_f);
}

PolicyOutcome period2_policy(OutcomeKind kind, double tau2, double sigma_d, double sigma_f, double m) {
  if (!(tau2 >= 0.0 && tau2 <= 1.0)) throw std::invalid_argument("period2_policy: tau2 outside [0,1]");
  PolicyOutcome out;
  out.t = tau2;
  const double revenue = tau2 * m;
  switch (kind) {
    case OutcomeKind::IncumbentRetains:
    case OutcomeKind::OppositionRules:
      out.r_inc = 2.0 * revenue / (1.0 + sigma_d);
      out.r_opp = sigma_d * out.r_inc;
      break;
    case OutcomeKind::OppositionRulesPostRevolution:
      out.r_inc = 2.0 * revenue;
      break;
    case OutcomeKind::ForeignAdministration:
      out.r_f = 2.0 * revenue / (2.0 + sigma_f);
      out.r_opp = sigma_f * out.r_f;
      break;
  }
  return out;
}

PolicyOutcome period1_policy(double tau1, double tau2, double sigma_d, double m, const CostSpec& cost) {
  const double budget = tau1 * m;
  double invest = cost.cost(tau2 - tau1);
  // A clamped tau2 maps back through the cost inverse and can overshoot by an ulp.
  if (invest > budget && invest <= budget * (1 + 1e-12)) invest = budget;
  if (invest > budget) {
    std::ostringstream os;
    os.precision(17);
    os << "investment cost " << invest << " exceeds period-1 revenue " << budget;
    throw InfeasibleInvestment(os.str());
  }
  PolicyOutcome out;
  out.t = tau1;
  out.invest_cost = invest;
  out.r_inc = 2.0 * (budget - invest) / (1.0 + sigma_d);
  out.r_opp = sigma_d * out.r_inc;
  return out;
}

double indirect_utility(Viewer viewer, OutcomeKind kind, double tau2, const ModelParams& params) {
  const PolicyOutcome pol = period2_policy(kind, tau2, params.sigma_d, params.sigma_f, params.m);
  double transfer = 0.0;
  switch (kind) {
    case OutcomeKind::IncumbentRetains:
      transfer = viewer == Viewer::I1 ? pol.r_inc : pol.r_opp;
      break;
    case OutcomeKind::OppositionRules:
    case OutcomeKind::OppositionRulesPostRevolution:
      transfer = viewer == Viewer::O1 ? pol.r_inc : pol.r_opp;
      break;
    case OutcomeKind::ForeignAdministration:
      transfer = viewer == Viewer::O1 ? pol.r_opp : pol.r_inc;
      break;
  }
  return (1.0 - pol.t) * params.m + transfer;
}

std::array<std::pair<OutcomeKind, double>, 6> outcome_lottery(const ModelParams& p, bool war, Variant variant) {
  using K = OutcomeKind;
  const K winner = variant == Variant::Revolution ? K::OppositionRulesPostRevolution : K::OppositionRules;
  const double a = p.alpha;
  if (war) {
    return {{{winner, a * (p.omega + p.rho * p.lambda)},
             {K::IncumbentRetains, a * (1.0 - p.omega - p.rho)},
             {K::ForeignAdministration, a * p.rho * (1.0 - p.lambda)},
             {winner, (1.0 - a) * p.delta},
             {K::IncumbentRetains, (1.0 - a) * (1.0 - p.delta)},
             {K::ForeignAdministration, 0.0}}};
  }
  return {{{K::OppositionRules, a * p.mu * p.lambda},
           {K::IncumbentRetains, a * (1.0 - p.mu)},
           {K::ForeignAdministration, a * p.mu * (1.0 - p.lambda)},
           {K::OppositionRules, (1.0 - a) * p.epsilon},
           {K::IncumbentRetains, (1.0 - a) * (1.0 - p.epsilon)},
           {K::ForeignAdministration, 0.0}}};
}

double period2_expected_utility(Viewer viewer, const ModelParams& params, double tau2, bool war,
                                const EvalOptions& opts) {
  ModelParams p2 = params;
  if (opts.sigma_d2) p2.sigma_d = *opts.sigma_d2;
  double total = 0.0;
  for (const auto& [kind, prob] : outcome_lottery(params, war, opts.variant)) {
    if (prob != 0.0) total += prob * indirect_utility(viewer, kind, tau2, p2);
  }
  return total;
}

double expected_utility_O1(const ModelParams& params, double tau2, bool war, const EvalOptions& opts) {
  return period2_expected_utility(Viewer::O1, params, tau2, war, opts);
}

double expected_utility_I1(const ModelParams& params, const CostSpec& cost, double tau2, bool war,
                           const EvalOptions& opts) {
  const PolicyOutcome first = period1_policy(params.tau1, tau2, params.sigma_d, params.m, cost);
  const double period1 = (1.0 - first.t) * params.m + first.r_inc;
  return period1 + period2_expected_utility(Viewer::I1, params, tau2, war, opts);
}

}  // namespace fiscap
