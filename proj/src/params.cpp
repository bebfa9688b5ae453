#include "fiscap/params.hpp"

#include <charconv>
#include <cmath>

namespace fiscap {
namespace {

struct FieldRef {
  const char* name;
  double ModelParams::*member;
  bool probability;
};

constexpr FieldRef kFields[] = {
    {"alpha", &ModelParams::alpha, true},     {"lambda", &ModelParams::lambda, true},
    {"epsilon", &ModelParams::epsilon, true}, {"delta", &ModelParams::delta, true},
    {"rho", &ModelParams::rho, true},         {"mu", &ModelParams::mu, true},
    {"omega", &ModelParams::omega, true},     {"sigma_d", &ModelParams::sigma_d, true},
    {"sigma_f", &ModelParams::sigma_f, true}, {"m", &ModelParams::m, false},
    {"tau1", &ModelParams::tau1, false},      {"tau_max", &ModelParams::tau_max, false},
};

const FieldRef* find_field(std::string_view name) {
  for (const auto& f : kFields) {
    if (name == f.name) return &f;
  }
  return nullptr;
}

// Shortest text that reads back as the same double.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string summarize(const std::vector<Violation>& vs) {
  std::string out = "invalid parameters:";
  for (const auto& v : vs) {
    out += "\n  ";
    out += v.message;
  }
  return out;
}

}  // namespace

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Eq1: return "Eq1";
    case ViolationKind::Eq2: return "Eq2";
    case ViolationKind::Eq3: return "Eq3";
    case ViolationKind::LotteryOverflow: return "LotteryOverflow";
    case ViolationKind::Range: return "Range";
    case ViolationKind::Missing: return "Missing";
  }
  return "?";
}

AssumptionViolation::AssumptionViolation(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

bool AssumptionViolation::has(ViolationKind kind) const noexcept {
  for (const auto& v : violations_) {
    if (v.kind == kind) return true;
  }
  return false;
}

const std::vector<std::string>& field_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& f : kFields) out.emplace_back(f.name);
    return out;
  }();
  return names;
}

bool has_default(std::string_view field) {
  return field == "m" || field == "tau1" || field == "tau_max";
}

double get_field(const ModelParams& p, std::string_view field) {
  const FieldRef* f = find_field(field);
  if (f == nullptr) throw std::invalid_argument("unknown field: " + std::string(field));
  return p.*(f->member);
}

void set_field(ModelParams& p, std::string_view field, double value) {
  const FieldRef* f = find_field(field);
  if (f == nullptr) throw std::invalid_argument("unknown field: " + std::string(field));
  p.*(f->member) = value;
}

RawParams to_raw(const ModelParams& p) {
  RawParams raw;
  for (const auto& f : kFields) raw.emplace(f.name, p.*(f.member));
  return raw;
}

std::vector<Violation> check_params(const ModelParams& p) {
  std::vector<Violation> out;
  auto range = [&](const char* name, double v, const char* bounds) {
    out.push_back({ViolationKind::Range, name,
                   std::string(name) + " out of range " + bounds + ": " + fmt(v)});
  };

  for (const auto& f : kFields) {
    const double v = p.*(f.member);
    if (f.probability && !(v >= 0.0 && v <= 1.0)) range(f.name, v, "[0,1]");
  }
  if (!(p.m > 0.0) || !std::isfinite(p.m)) range("m", p.m, "(0,inf)");
  if (!(p.tau_max >= 0.0 && p.tau_max <= 1.0)) range("tau_max", p.tau_max, "[0,1]");
  if (!(p.tau1 >= 0.0 && p.tau1 <= p.tau_max)) range("tau1", p.tau1, "[0,tau_max]");

  // NaN compares false everywhere, so each strict inequality is stated positively.
  if (!(p.rho > p.mu)) {
    out.push_back({ViolationKind::Eq1, "",
                   "requires rho > mu (rho=" + fmt(p.rho) + ", mu=" + fmt(p.mu) + ")"});
  }
  if (!(p.omega > p.delta)) {
    out.push_back({ViolationKind::Eq2, "",
                   "requires omega > delta (omega=" + fmt(p.omega) +
                       ", delta=" + fmt(p.delta) + ")"});
  }
  if (!(p.epsilon > p.mu)) {
    out.push_back({ViolationKind::Eq3, "",
                   "requires epsilon > mu (epsilon=" + fmt(p.epsilon) +
                       ", mu=" + fmt(p.mu) + ")"});
  }
  if (!(p.omega + p.rho <= 1.0)) {
    out.push_back({ViolationKind::LotteryOverflow, "",
                   "lottery overflow: requires omega + rho <= 1 (omega + rho = " +
                       fmt(p.omega + p.rho) + ")"});
  }
  return out;
}

ModelParams validate_params(const RawParams& raw) {
  std::vector<Violation> missing;
  ModelParams p;
  for (const auto& f : kFields) {
    auto it = raw.find(f.name);
    if (it != raw.end()) {
      p.*(f.member) = it->second;
    } else if (!has_default(f.name)) {
      missing.push_back({ViolationKind::Missing, f.name, std::string("missing field: ") + f.name});
    }
  }

  std::vector<Violation> all = std::move(missing);
  if (all.empty()) {
    all = check_params(p);
  } else {
    // Relations involving an absent field are meaningless; report only ranges
    // of the fields that were supplied.
    for (auto& v : check_params(p)) {
      if (v.kind == ViolationKind::Range && raw.contains(v.field)) all.push_back(std::move(v));
    }
  }
  if (!all.empty()) throw AssumptionViolation(std::move(all));
  return p;
}

ModelParams validate_params(const ModelParams& p) { return validate_params(to_raw(p)); }

}  // namespace fiscap
