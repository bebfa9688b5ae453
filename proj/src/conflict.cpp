#include "fiscap/conflict.hpp"

#include <cmath>
#include <sstream>

namespace fiscap {
namespace {

// alpha*omega + (1-alpha)*delta - (1-alpha)*epsilon
double civil_war_edge(const ModelParams& p) {
  return p.alpha * p.omega + (1.0 - p.alpha) * p.delta - (1.0 - p.alpha) * p.epsilon;
}

constexpr double kTieTolerance = 1e-12;

}  // namespace

double threshold_denominator(const ModelParams& p) {
  return p.alpha * (p.rho - p.mu) * (1.0 - p.lambda * p.sigma_d) + (1.0 - p.sigma_d) * civil_war_edge(p);
}

std::optional<double> civil_war_threshold(const ModelParams& p) {
  const double den = threshold_denominator(p);
  if (!(den > 0.0)) return std::nullopt;
  const double num =
      2.0 * (p.alpha * (p.rho - p.mu) * (p.sigma_d - p.lambda) - (1.0 - p.sigma_d) * civil_war_edge(p));
  return num / den;
}

double war_advantage(const ModelParams& p, double tau2, Variant variant) {
  const EvalOptions opts{variant, std::nullopt};
  return expected_utility_O1(p, tau2, true, opts) - expected_utility_O1(p, tau2, false, opts);
}

namespace detail {

ConflictDecision decide(const ModelParams& p, std::optional<double> threshold, Variant variant) {
  ConflictDecision d;
  d.threshold = threshold;
  d.gamma = war_advantage(p, 1.0, variant) > 0.0 ? 1 : 0;
  if (!threshold) return d;

  d.method = DecisionMethod::ThresholdComparison;
  const int by_threshold = p.sigma_f > *threshold ? 1 : 0;
  if (by_threshold != d.gamma) {
    if (std::abs(p.sigma_f - *threshold) <= kTieTolerance * std::max(1.0, std::abs(*threshold))) {
      d.gamma = 0;
    } else {
      std::ostringstream os;
      os.precision(17);
      os << "civil-war threshold " << *threshold << " and direct utility comparison disagree at sigma_f="
         << p.sigma_f;
      throw std::logic_error(os.str());
    }
  }
  return d;
}

}  // namespace detail

ConflictDecision civil_war_decision(const ModelParams& p) {
  return detail::decide(p, civil_war_threshold(p), Variant::Baseline);
}

ThresholdSensitivities threshold_sensitivities(const ModelParams& p) {
  const double den = threshold_denominator(p);
  if (!(den > 0.0)) throw UndefinedThreshold("civil-war threshold undefined: denominator <= 0");
  const double gap = p.rho - p.mu;
  const double edge = civil_war_edge(p);
  const double den2 = den * den;
  ThresholdSensitivities s;
  s.d_sigma_d = 2.0 * p.alpha * gap * (1.0 - p.lambda) * (p.alpha * gap * (1.0 + p.lambda) + 2.0 * edge) / den2;
  s.d_lambda = -2.0 * p.alpha * gap * (1.0 - p.sigma_d * p.sigma_d) * (p.alpha * gap + edge) / den2;
  s.d_alpha = 2.0 * gap * (1.0 - p.lambda) * (p.delta - p.epsilon) * (1.0 - p.sigma_d) * (1.0 + p.sigma_d) / den2;
  return s;
}

double turnover_probability(const ModelParams& p, int gamma) {
  if (gamma != 0 && gamma != 1) throw std::invalid_argument("gamma must be 0 or 1");
  if (gamma == 1) return p.alpha * p.omega + (1.0 - p.alpha) * p.delta + p.alpha * p.rho;
  return p.alpha * p.mu + (1.0 - p.alpha) * p.epsilon;
}

}  // namespace fiscap
