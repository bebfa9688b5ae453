#pragma once

#include <optional>
#include <stdexcept>

#include "fiscap/params.hpp"
#include "fiscap/policy.hpp"

namespace fiscap {

class UndefinedThreshold : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class DecisionMethod { ThresholdComparison, DirectUtilityComparison };

struct ConflictDecision {
  int gamma = 0;                    // 1 when the opposition starts a civil war
  std::optional<double> threshold;  // sigma_f cut-off, when its denominator is positive
  DecisionMethod method = DecisionMethod::DirectUtilityComparison;
};

/// Denominator of the civil-war threshold; the threshold exists iff this is > 0.
double threshold_denominator(const ModelParams& p);

/// The sigma_f cut-off above which the opposition prefers civil war.
std::optional<double> civil_war_threshold(const ModelParams& p);

/// O1's war-minus-peace expected utility at the given capacity.
double war_advantage(const ModelParams& p, double tau2, Variant variant = Variant::Baseline);

/// Civil-war choice by direct utility comparison at tau2 = 1 (ties mean peace).
/// When the threshold is defined the two routes must agree; a disagreement
/// further than 1e-12 from the threshold raises std::logic_error.
ConflictDecision civil_war_decision(const ModelParams& p);

struct ThresholdSensitivities {
  double d_sigma_d;
  double d_lambda;
  double d_alpha;
};

/// Closed-form partial derivatives of the threshold.
/// Throws UndefinedThreshold when the denominator is not positive.
ThresholdSensitivities threshold_sensitivities(const ModelParams& p);

/// Probability, seen by I1, that someone else rules in period 2.
double turnover_probability(const ModelParams& p, int gamma);

namespace detail {
// Shared by the baseline and revolution deciders.
ConflictDecision decide(const ModelParams& p, std::optional<double> threshold, Variant variant);
}  // namespace detail

}  // namespace fiscap
