#pragma once

#include <map>
#include <optional>

#include "fiscap/conflict.hpp"
#include "fiscap/cost.hpp"
#include "fiscap/fiscal.hpp"
#include "fiscap/params.hpp"
#include "fiscap/statics.hpp"

namespace fiscap {

// Variant of the game in which an opposition that wins power through a civil
// war owes the defeated incumbent nothing (period-2 cohesiveness 0).

double revolution_threshold_denominator(const ModelParams& p);

/// The sigma_f cut-off for the revolution variant, when its denominator is positive.
std::optional<double> revolution_threshold(const ModelParams& p);

/// Civil-war choice under the variant, by direct comparison with the
/// threshold as a cross-check.
ConflictDecision revolution_decision(const ModelParams& p);

/// m [ -(alpha omega + (1-alpha) delta + alpha rho) + (1 - sd)/2 ].
double revolution_war_target(const ModelParams& p);

struct VariantResult {
  std::optional<double> sigma_f_bar_prime;
  int gamma_prime = 0;
  double phi_prime = 0.0;
  double tau2_star_prime = 0.0;
  SolveFlags flags;
  RegimeClassification regimes;  // comparative-statics regimes under the variant
  PolicyOutcome period1;
  std::map<OutcomeKind, PolicyOutcome> period2_by_kind;
  double eu_I1 = 0.0;
  double eu_O1 = 0.0;
};

VariantResult revolution_solve(const ModelParams& p, const CostSpec& cost);

}  // namespace fiscap
