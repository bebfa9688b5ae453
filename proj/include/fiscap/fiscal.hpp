#pragma once

#include <map>
#include <optional>

#include "fiscap/conflict.hpp"
#include "fiscap/cost.hpp"
#include "fiscap/params.hpp"
#include "fiscap/policy.hpp"

namespace fiscap {

struct SolveFlags {
  bool corner = false;                   // marginal benefit of investing <= 0
  bool clamped_at_tau_max = false;       // interior optimum exceeded tau_max
  bool clamped_for_feasibility = false;  // investment cost would exceed tau1 m

  bool clamped() const noexcept { return clamped_at_tau_max || clamped_for_feasibility; }
  bool operator==(const SolveFlags&) const = default;
};

struct Tau2Solution {
  double tau2 = 0.0;
  double marginal_target = 0.0;  // argument handed to the inverse marginal cost
  SolveFlags flags;
};

/// Capacity for a given first-order-condition target: tau1 + C'^{-1}(target),
/// then clamped to tau_max and to the largest investment payable from tau1 m.
Tau2Solution capacity_from_target(const ModelParams& p, const CostSpec& cost, double target);

/// The marginal benefit target of the incumbent's investment problem:
/// m [ -phi (1 - sd) - alpha (gamma rho + (1-gamma) mu)(1 - lambda) sd + (1 - sd)/2 ].
double investment_target(const ModelParams& p, int gamma);

/// Closed-form optimal period-2 capacity given the civil-war indicator.
Tau2Solution optimal_tau2(const ModelParams& p, const CostSpec& cost, int gamma);

/// Exhaustive grid maximisation of I1's expected utility over
/// {tau1, tau1 + step, ...} up to the feasible maximum, which is appended as a
/// final candidate. Ties go to the lowest capacity.
double brute_force_tau2(const ModelParams& p, const CostSpec& cost, int gamma, double grid_step,
                        const EvalOptions& opts = {});

struct EquilibriumResult {
  int gamma = 0;
  std::optional<double> sigma_f_bar;
  double phi = 0.0;
  double tau2_star = 0.0;
  PolicyOutcome period1;
  std::map<OutcomeKind, PolicyOutcome> period2_by_kind;
  double eu_I1 = 0.0;  // period 1 plus expected period 2
  double eu_O1 = 0.0;  // expected period 2
  SolveFlags flags;
};

/// Backward induction for the baseline game.
EquilibriumResult solve_equilibrium(const ModelParams& p, const CostSpec& cost);

}  // namespace fiscap
