#include "fiscap/statics.hpp"

#include <cmath>

#include "fiscap/conflict.hpp"
#include "fiscap/fiscal.hpp"
#include "fiscap/revolution.hpp"

namespace fiscap {

std::string_view to_string(Prop1 v) { return v == Prop1::TurnoverUp ? "1.A" : "1.B"; }

std::string_view to_string(Prop2 v) {
  switch (v) {
    case Prop2::Case2A: return "2.A";
    case Prop2::Case2B1: return "2.B.1";
    case Prop2::Case2B2: return "2.B.2";
    case Prop2::Case2B3: return "2.B.3";
  }
  return "?";
}

std::string_view to_string(Prop3 v) {
  switch (v) {
    case Prop3::Case3A: return "3.A";
    case Prop3::Case3B1: return "3.B.1";
    case Prop3::Case3B2: return "3.B.2";
  }
  return "?";
}

std::string_view to_string(FdTarget t) { return t == FdTarget::Phi ? "phi" : "tau2"; }

std::string_view to_string(FdParam w) {
  switch (w) {
    case FdParam::Alpha: return "alpha";
    case FdParam::Lambda: return "lambda";
    case FdParam::SigmaD: return "sigma_d";
  }
  return "?";
}

double prop2_margin(const ModelParams& p) {
  return (p.epsilon - p.mu) - p.sigma_d * (p.epsilon - p.lambda * p.mu);
}

RegimeClassification classify(const ModelParams& p, Variant variant) {
  const ConflictDecision d = variant == Variant::Baseline ? civil_war_decision(p) : revolution_decision(p);
  RegimeClassification c;
  c.gamma = d.gamma;
  c.near_threshold = d.threshold && std::abs(p.sigma_f - *d.threshold) <= 1e-9;
  const double margin = prop2_margin(p);
  c.near_prop2_equality = std::abs(margin) <= 1e-12;

  if (d.gamma == 1) {
    c.prop1 = Prop1::TurnoverUp;
    c.prop2 = Prop2::Case2A;
    c.prop3 = Prop3::Case3A;
    return c;
  }
  c.prop1 = Prop1::TurnoverDown;
  if (c.near_prop2_equality) {
    c.prop2 = Prop2::Case2B2;
  } else {
    c.prop2 = margin > 0.0 ? Prop2::Case2B1 : Prop2::Case2B3;
  }
  c.prop3 = c.prop2 == Prop2::Case2B1 ? Prop3::Case3B1 : Prop3::Case3B2;
  return c;
}

double default_fd_step(double x) { return 1e-6 * std::max(1.0, std::abs(x)); }

namespace {

struct Probe {
  double value;
  int gamma;
  SolveFlags flags;
};

Probe probe(const ModelParams& p, const CostSpec& cost, FdTarget target, Variant variant) {
  if (variant == Variant::Revolution) {
    const VariantResult r = revolution_solve(p, cost);
    return {target == FdTarget::Phi ? r.phi_prime : r.tau2_star_prime, r.gamma_prime, r.flags};
  }
  const int gamma = civil_war_decision(p).gamma;
  if (target == FdTarget::Phi) return {turnover_probability(p, gamma), gamma, {}};
  const Tau2Solution s = optimal_tau2(p, cost, gamma);
  return {s.tau2, gamma, s.flags};
}

double& param_ref(ModelParams& p, FdParam wrt) {
  switch (wrt) {
    case FdParam::Alpha: return p.alpha;
    case FdParam::Lambda: return p.lambda;
    case FdParam::SigmaD: return p.sigma_d;
  }
  return p.alpha;
}

}  // namespace

FdEstimate finite_difference(const ModelParams& p, const CostSpec& cost, FdTarget target, FdParam wrt,
                             double h, Variant variant) {
  ModelParams lo = p;
  ModelParams hi = p;
  const double x = param_ref(lo, wrt);
  if (!(h > 0.0)) h = default_fd_step(x);
  if (x - h < 0.0 || x + h > 1.0) {
    throw DomainExit("finite difference leaves [0,1] for " + std::string(to_string(wrt)));
  }
  param_ref(lo, wrt) = x - h;
  param_ref(hi, wrt) = x + h;

  const Probe mid = probe(p, cost, target, variant);
  const Probe down = probe(lo, cost, target, variant);
  const Probe up = probe(hi, cost, target, variant);

  FdEstimate e;
  e.value = (up.value - down.value) / (2.0 * h);
  e.corner = mid.flags.corner;
  e.regime_stable = down.gamma == mid.gamma && up.gamma == mid.gamma && down.flags == mid.flags &&
                    up.flags == mid.flags;
  return e;
}

}  // namespace fiscap
