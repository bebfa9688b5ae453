#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "fiscap/cost.hpp"
#include "fiscap/params.hpp"

namespace fiscap {

/// Who rules in period 2, seen from the period-1 incumbent I1.
enum class OutcomeKind {
  IncumbentRetains,               // I2 = I1
  OppositionRules,                // I2 = O1, transfers follow sigma_d
  OppositionRulesPostRevolution,  // I2 = O1 after a revolution, sigma_d2 = 0
  ForeignAdministration,          // I2 = F
};

inline constexpr std::array<OutcomeKind, 4> kAllOutcomeKinds = {
    OutcomeKind::IncumbentRetains, OutcomeKind::OppositionRules,
    OutcomeKind::OppositionRulesPostRevolution, OutcomeKind::ForeignAdministration};

std::string_view to_string(OutcomeKind kind);

enum class Viewer { I1, O1 };

/// Baseline game, or the variant where a successful revolution removes all
/// transfers to the defeated incumbent.
enum class Variant { Baseline, Revolution };

std::string_view to_string(Variant v);

/// A period's tax rate and per-member transfers.
///
/// r_inc / r_opp are the transfers of the ruling domestic group and of the
/// other domestic group. Under a foreign administration r_inc is I1's
/// transfer (always zero) and r_opp is O1's.
struct PolicyOutcome {
  double t = 0.0;
  double r_inc = 0.0;
  double r_opp = 0.0;
  double r_f = 0.0;
  double invest_cost = 0.0;

  /// t m - (invest_cost + (r_inc + r_opp) / 2 + r_f).
  double budget_residual(double m) const noexcept;
};

class InfeasibleInvestment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PolicyOutcome period2_policy(OutcomeKind kind, double tau2, double sigma_d, double sigma_f, double m);

/// Period-1 policy; throws InfeasibleInvestment if C(tau2 - tau1) > tau1 m.
PolicyOutcome period1_policy(double tau1, double tau2, double sigma_d, double m, const CostSpec& cost);

/// Options shared by the expected-utility evaluators.
struct EvalOptions {
  Variant variant = Variant::Baseline;
  /// Period-2 cohesiveness when it differs from params.sigma_d (bargaining).
  std::optional<double> sigma_d2;
};

/// Period-2 indirect utility W^viewer(tau2 | I2 = kind), using params.sigma_d.
double indirect_utility(Viewer viewer, OutcomeKind kind, double tau2, const ModelParams& params);

/// Probabilities of each period-2 ruler given the civil-war choice.
/// Entries with identical kinds are not merged; the weights sum to one.
std::array<std::pair<OutcomeKind, double>, 6> outcome_lottery(const ModelParams& params, bool war,
                                                              Variant variant = Variant::Baseline);

/// Period-2 expected utility of `viewer` under the outcome lottery.
double period2_expected_utility(Viewer viewer, const ModelParams& params, double tau2, bool war,
                                const EvalOptions& opts = {});

double expected_utility_O1(const ModelParams& params, double tau2, bool war, const EvalOptions& opts = {});

/// I1's period-1 indirect utility plus its period-2 expected utility.
/// Throws InfeasibleInvestment when the investment cost exceeds tau1 m.
double expected_utility_I1(const ModelParams& params, const CostSpec& cost, double tau2, bool war,
                           const EvalOptions& opts = {});

}  // namespace fiscap
