#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fiscap/cost.hpp"
#include "fiscap/fiscal.hpp"
#include "fiscap/params.hpp"

namespace fiscap {

// Constitutional stage: before period 1 ends, the incumbent offers a
// period-2 cohesiveness level sigma_d2; acceptance commits the opposition to
// peace, rejection sets sigma_d2 = 0 and leads to civil war.
// Period-1 cohesiveness stays at params.sigma_d.

enum class BargainingRegime { R4A, R4B, R4C };
enum class Prop5Case { Case5A, Case5B, Case5C };

std::string_view to_string(BargainingRegime r);  // "4.A", "4.B", "4.C"
std::string_view to_string(Prop5Case c);         // "5.A", ...

enum class BargainingAssumption {
  EpsilonAtMostHalf,  // epsilon <= 1/2
  EpsilonEqualsDelta, // epsilon == delta
  WeakCoalition,      // 1/2 > (1-alpha) epsilon + alpha mu (1 + lambda)/2
};

struct BargainingViolation {
  BargainingAssumption which;
  std::string message;
};

std::vector<BargainingViolation> check_bargaining_assumptions(const ModelParams& p);

struct BargainingOutcome {
  BargainingRegime regime = BargainingRegime::R4B;
  double sigma_d2_star = 0.0;
  double cond11_lhs = 0.0;  // compared against 1/2
  double cond12_lhs = 0.0;  // (1-alpha) eps + alpha mu (1+lambda)/2
  double cond12_rhs = 0.0;  // equals cond11_lhs
  bool accepted = true;
};

/// sigma_f / (2 + sigma_f) weighted foreign-administration term shared by the conditions.
double bargaining_condition_lhs(const ModelParams& p);

/// The accepted cohesiveness level when both conditions hold.
double equilibrium_sigma_d2(const ModelParams& p);

BargainingOutcome bargaining_outcome(const ModelParams& p);

/// O1's expected value of accepting `offer` minus its civil-war reservation
/// value (cohesiveness 0); independent of tau2 up to the common factor 2 tau2 m.
double acceptance_slack(const ModelParams& p, double offer, double tau2);

bool o1_accept_decision(const ModelParams& p, double offer, double tau2);

/// I1's period-2 expected value when `offer` is accepted, and when the
/// opposition rejects and fights.
double incumbent_offer_value(const ModelParams& p, double offer, double tau2);
double incumbent_rejection_value(const ModelParams& p, double tau2);

/// Marginal-cost target of the investment problem with distinct period-1 and
/// period-2 cohesiveness: m (1+sd1)/(1+sd2) [ -phi (1-sd2) - alpha (gamma rho + (1-gamma) mu)(1-lambda) sd2 + (1-sd2)/2 ].
double two_period_target(const ModelParams& p, double sigma_d2, int gamma);

struct BargainedCapacity {
  BargainingOutcome outcome;
  int gamma = 0;
  Tau2Solution solution;
};

/// Investment given the bargaining outcome (gamma = 1 only after rejection).
BargainedCapacity bargained_tau2(const ModelParams& p, const CostSpec& cost);

struct Prop5Result {
  Prop5Case kase = Prop5Case::Case5A;
  BargainingOutcome outcome;
  double tau2_star = 0.0;
  double dtau2_dalpha = 0.0;  // finite difference, regime held at the base point
  double dtarget_dalpha = 0.0;  // same for the first-order-condition target
  bool corner = false;
  bool clamped = false;        // tau_max or feasibility clamp at the base point
  bool regime_stable = true;  // regime unchanged at alpha +- h
  bool one_sided = false;     // forward/backward difference at a boundary of [0,1]
  bool prop5b_condition = false;  // (eps - mu) > sigma_d2* (eps - lambda mu)
};

Prop5Result classify_prop5(const ModelParams& p, const CostSpec& cost);

}  // namespace fiscap
