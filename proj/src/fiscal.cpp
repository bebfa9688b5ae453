#include "fiscap/fiscal.hpp"

#include <cmath>
#include <stdexcept>

namespace fiscap {

Tau2Solution capacity_from_target(const ModelParams& p, const CostSpec& cost, double target) {
  Tau2Solution s;
  s.marginal_target = target;
  s.flags.corner = !(target > 0.0);
  double invest = inverse_marginal(cost, target);

  const double headroom = p.tau_max - p.tau1;
  if (invest > headroom) {
    invest = headroom;
    s.flags.clamped_at_tau_max = true;
  }
  double affordable = cost.inverse_cost(p.tau1 * p.m);
  while (affordable > 0.0 && cost.cost(affordable) > p.tau1 * p.m) {
    affordable = std::nextafter(affordable, 0.0);
  }
  if (invest > affordable) {
    invest = affordable;
    s.flags.clamped_for_feasibility = true;
  }
  s.tau2 = p.tau1 + invest;
  return s;
}

double investment_target(const ModelParams& p, int gamma) {
  const double phi = turnover_probability(p, gamma);
  const double foreign = gamma == 1 ? p.rho : p.mu;
  const double sd = p.sigma_d;
  return p.m * (-phi * (1.0 - sd) - p.alpha * foreign * (1.0 - p.lambda) * sd + 0.5 * (1.0 - sd));
}

Tau2Solution optimal_tau2(const ModelParams& p, const CostSpec& cost, int gamma) {
  return capacity_from_target(p, cost, investment_target(p, gamma));
}

double brute_force_tau2(const ModelParams& p, const CostSpec& cost, int gamma, double grid_step,
                        const EvalOptions& opts) {
  if (!(grid_step > 0.0)) throw std::invalid_argument("brute_force_tau2: grid_step must be positive");
  const bool war = gamma == 1;
  const double budget = p.tau1 * p.m;

  // Largest affordable capacity, found independently of the solver's clamp.
  double lo = p.tau1;
  double hi = p.tau_max;
  if (cost.cost(hi - p.tau1) > budget) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cost.cost(mid - p.tau1) <= budget ? lo : hi) = mid;
    }
    hi = lo;
  }
  const double upper = hi;

  double best_tau = p.tau1;
  double best_val = expected_utility_I1(p, cost, p.tau1, war, opts);
  auto consider = [&](double tau) {
    const double v = expected_utility_I1(p, cost, tau, war, opts);
    if (v > best_val) {
      best_val = v;
      best_tau = tau;
    }
  };
  for (long k = 1;; ++k) {
    const double tau = p.tau1 + static_cast<double>(k) * grid_step;
    if (tau > upper) break;
    consider(tau);
  }
  if (upper > best_tau) consider(upper);
  return best_tau;
}

EquilibriumResult solve_equilibrium(const ModelParams& p, const CostSpec& cost) {
  EquilibriumResult r;
  const ConflictDecision d = civil_war_decision(p);
  r.gamma = d.gamma;
  r.sigma_f_bar = d.threshold;
  r.phi = turnover_probability(p, r.gamma);
  const Tau2Solution s = optimal_tau2(p, cost, r.gamma);
  r.tau2_star = s.tau2;
  r.flags = s.flags;
  r.period1 = period1_policy(p.tau1, r.tau2_star, p.sigma_d, p.m, cost);
  for (OutcomeKind k : kAllOutcomeKinds) {
    r.period2_by_kind.emplace(k, period2_policy(k, r.tau2_star, p.sigma_d, p.sigma_f, p.m));
  }
  r.eu_I1 = expected_utility_I1(p, cost, r.tau2_star, r.gamma == 1);
  r.eu_O1 = expected_utility_O1(p, r.tau2_star, r.gamma == 1);
  return r;
}

}  // namespace fiscap
