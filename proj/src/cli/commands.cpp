#include "fiscap/cli/commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "fiscap/bargaining.hpp"
#include "fiscap/cli/config.hpp"
#include "fiscap/cli/verify.hpp"
#include "fiscap/fiscal.hpp"
#include "fiscap/revolution.hpp"
#include "fiscap/statics.hpp"

namespace fiscap::cli {
namespace {

std::string threshold_text(const std::optional<double>& t) { return t ? fixed6(*t) : "undefined"; }

void print_policy(std::ostream& os, std::string_view label, const PolicyOutcome& o) {
  os << label << " t=" << fixed6(o.t) << " r_inc=" << fixed6(o.r_inc) << " r_opp=" << fixed6(o.r_opp)
     << " r_f=" << fixed6(o.r_f) << " invest_cost=" << fixed6(o.invest_cost) << '\n';
}

void print_violations(std::ostream& err, const std::vector<Violation>& vs) {
  for (const Violation& v : vs) err << "error: " << v.message << '\n';
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) {
    err << "error: cannot write " << path << '\n';
    return false;
  }
  return true;
}

// Values exactly 0 or 1 print bare, as in "sigma_d2_star=0".
std::string unit_text(double v) {
  if (v == 0.0) return "0";
  if (v == 1.0) return "1";
  return fixed6(v);
}

ModelParams assemble(const RawParams& raw) {
  ModelParams p;
  for (const auto& [k, v] : raw) set_field(p, k, v);
  return p;
}

}  // namespace

Variant parse_variant(std::string_view text) {
  if (text == "baseline") return Variant::Baseline;
  if (text == "revolution") return Variant::Revolution;
  throw ConfigError("variant must be baseline or revolution");
}

std::string solve_report(const ModelParams& p, const CostSpec& cost, Variant variant) {
  int gamma = 0;
  std::optional<double> threshold;
  double phi = 0.0;
  double tau2 = 0.0;
  SolveFlags flags;
  PolicyOutcome period1;
  std::map<OutcomeKind, PolicyOutcome> period2;
  double eu_i = 0.0;
  double eu_o = 0.0;
  if (variant == Variant::Baseline) {
    const EquilibriumResult r = solve_equilibrium(p, cost);
    gamma = r.gamma;
    threshold = r.sigma_f_bar;
    phi = r.phi;
    tau2 = r.tau2_star;
    flags = r.flags;
    period1 = r.period1;
    period2 = r.period2_by_kind;
    eu_i = r.eu_I1;
    eu_o = r.eu_O1;
  } else {
    const VariantResult r = revolution_solve(p, cost);
    gamma = r.gamma_prime;
    threshold = r.sigma_f_bar_prime;
    phi = r.phi_prime;
    tau2 = r.tau2_star_prime;
    flags = r.flags;
    period1 = r.period1;
    period2 = r.period2_by_kind;
    eu_i = r.eu_I1;
    eu_o = r.eu_O1;
  }
  const RegimeClassification reg = classify(p, variant);

  std::ostringstream os;
  os << "gamma=" << gamma << " phi=" << fixed6(phi) << " tau2_star=" << fixed6(tau2)
     << " prop2=" << to_string(reg.prop2) << " prop1=" << to_string(reg.prop1) << " prop3=" << to_string(reg.prop3)
     << " sigma_f_bar=" << threshold_text(threshold) << '\n';
  os << "variant=" << to_string(variant) << " cost=" << cost.describe() << '\n';
  os << "flags corner=" << flags.corner << " clamped_at_tau_max=" << flags.clamped_at_tau_max
     << " clamped_for_feasibility=" << flags.clamped_for_feasibility << " near_threshold=" << reg.near_threshold
     << '\n';
  print_policy(os, "period1", period1);
  for (const auto& [kind, o] : period2) print_policy(os, "period2 " + std::string(to_string(kind)), o);
  os << "utilities eu_I1=" << fixed6(eu_i) << " eu_O1=" << fixed6(eu_o) << '\n';
  return os.str();
}

std::string solve_csv(const ModelParams& p, const CostSpec& cost, Variant variant) {
  return csv_header() + "\n,," + result_columns(p, cost, variant) + '\n';
}

int run_solve(const std::string& config_path, const std::optional<std::string>& out_path, Variant variant,
              const CostSpec& cost, std::ostream& out, std::ostream& err) {
  ModelParams p;
  try {
    p = validate_params(read_config_file(config_path));
  } catch (const AssumptionViolation& e) {
    print_violations(err, e.violations());
    return kExitInput;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  try {
    out << solve_report(p, cost, variant);
    if (out_path && !write_file(*out_path, solve_csv(p, cost, variant), err)) return kExitInput;
  } catch (const InfeasibleInvestment& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

int run_sweep_command(const SweepSpec& spec, const std::optional<std::string>& out_path, unsigned workers,
                      std::ostream& out, std::ostream& err) {
  std::string csv;
  try {
    csv = run_sweep(spec, workers);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  if (out_path) return write_file(*out_path, csv, err) ? kExitOk : kExitInput;
  out << csv;
  return kExitOk;
}

int run_verify_command(long trials, std::uint64_t seed, Variant variant, unsigned workers, std::ostream& out,
                       std::ostream& err) {
  if (trials < 0) {
    err << "error: trials must be >= 0\n";
    return kExitInput;
  }
  const VerifyReport rep = run_verify(trials, seed, variant, workers);
  out << rep.render();
  return rep.failures() == 0 ? kExitOk : kExitProperty;
}

std::string bargain_report(const ModelParams& p, const CostSpec& cost) {
  std::ostringstream os;
  const std::vector<BargainingViolation> bad = check_bargaining_assumptions(p);
  os << "assumptions " << (bad.empty() ? "ok" : "violated") << '\n';
  const BargainingOutcome o = bargaining_outcome(p);
  os << "condition11 lhs=" << fixed6(o.cond11_lhs) << " rhs=0.500000 holds=" << (o.regime != BargainingRegime::R4C)
     << '\n';
  os << "condition12 lhs=" << fixed6(o.cond12_lhs) << " rhs=" << fixed6(o.cond12_rhs)
     << " holds=" << (o.cond12_lhs < o.cond12_rhs) << '\n';
  const Prop5Result r = classify_prop5(p, cost);
  os << "regime=" << to_string(o.regime) << " sigma_d2_star=" << unit_text(o.sigma_d2_star)
     << " prop5=" << to_string(r.kase) << '\n';
  os << "tau2_star=" << fixed6(r.tau2_star) << " dtau2_dalpha=" << fixed6(r.dtau2_dalpha)
     << " dtarget_dalpha=" << fixed6(r.dtarget_dalpha) << " corner=" << r.corner << " clamped=" << r.clamped << " one_sided=" << r.one_sided
     << " regime_stable=" << r.regime_stable << '\n';
  return os.str();
}

int run_bargain(const std::string& config_path, const CostSpec& cost, std::ostream& out, std::ostream& err) {
  RawParams raw;
  try {
    raw = read_config_file(config_path);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  std::vector<Violation> fatal;
  std::vector<Violation> warnings;
  try {
    validate_params(raw);
  } catch (const AssumptionViolation& e) {
    for (const Violation& v : e.violations()) (v.kind == ViolationKind::Eq2 ? warnings : fatal).push_back(v);
  }
  if (!fatal.empty()) {
    print_violations(err, fatal);
    return kExitInput;
  }
  const ModelParams p = assemble(raw);
  const std::vector<BargainingViolation> bad = check_bargaining_assumptions(p);
  if (!bad.empty()) {
    for (const BargainingViolation& b : bad) err << "error: " << b.message << '\n';
    return kExitInput;
  }
  for (const Violation& v : warnings) out << "warning: " << v.message << '\n';
  out << bargain_report(p, cost);
  return kExitOk;
}

}  // namespace fiscap::cli
