#include "fiscap/cli/sweep.hpp"

#include <cmath>
#include <thread>

#include "fiscap/cli/config.hpp"
#include "fiscap/fiscal.hpp"
#include "fiscap/revolution.hpp"
#include "fiscap/statics.hpp"

namespace fiscap::cli {
namespace {

bool is_probability_field(std::string_view f) {
  return f != "m" && f != "tau1" && f != "tau_max";
}

bool known_axis(std::string_view f) {
  if (f == kEpsilonMinusMu) return true;
  for (const auto& n : field_names()) {
    if (n == f) return true;
  }
  return false;
}

// Grid arithmetic noise (e.g. 0.1 + 0.9 landing just above 1) is removed by
// rounding to 12 decimals.
double snap(double v) { return std::round(v * 1e12) / 1e12; }

// Assemble one grid point; derived axes are applied after plain fields.
RawParams point_raw(const SweepSpec& spec, double v1, double v2) {
  RawParams raw = spec.fixed;
  const Axis* axes[] = {&spec.axis1, &spec.axis2};
  const double vals[] = {v1, v2};
  for (int i = 0; i < 2; ++i) {
    if (axes[i]->field != kEpsilonMinusMu) raw[axes[i]->field] = vals[i];
  }
  for (int i = 0; i < 2; ++i) {
    if (axes[i]->field == kEpsilonMinusMu) raw["epsilon"] = snap(raw.at("mu") + vals[i]);
  }
  return raw;
}

}  // namespace

std::vector<double> Axis::values() const {
  const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long k = 0; k <= n; ++k) out.push_back(snap(start + static_cast<double>(k) * step));
  return out;
}

Axis parse_axis(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ConfigError("axis must look like field=start:stop:step");
  Axis a;
  a.field = std::string(text.substr(0, eq));
  std::string_view rest = text.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw ConfigError("axis must look like field=start:stop:step");
  a.start = parse_number(rest.substr(0, c1));
  a.stop = parse_number(rest.substr(c1 + 1, c2 - c1 - 1));
  a.step = parse_number(rest.substr(c2 + 1));
  return a;
}

void check_sweep_spec(const SweepSpec& spec) {
  for (const Axis* a : {&spec.axis1, &spec.axis2}) {
    if (!known_axis(a->field)) throw ConfigError("unknown axis field: " + a->field);
    if (!(a->step > 0.0)) throw ConfigError("axis step must be positive: " + a->field);
    if (!(a->stop >= a->start)) throw ConfigError("axis stop must be >= start: " + a->field);
    if (is_probability_field(a->field) && a->field != kEpsilonMinusMu &&
        (a->start < 0.0 || a->stop > 1.0 + 1e-12)) {
      throw ConfigError("axis leaves [0,1]: " + a->field);
    }
  }
  if (spec.axis1.field == spec.axis2.field) throw ConfigError("axis fields must differ");
  const bool derived_eps = spec.axis1.field == kEpsilonMinusMu || spec.axis2.field == kEpsilonMinusMu;
  for (const std::string& f : field_names()) {
    const bool covered = has_default(f) || spec.fixed.contains(f) || spec.axis1.field == f ||
                         spec.axis2.field == f || (f == "epsilon" && derived_eps);
    if (!covered) throw ConfigError("missing field: " + f);
  }
  const bool derived = spec.axis1.field == kEpsilonMinusMu || spec.axis2.field == kEpsilonMinusMu;
  if (derived) {
    if (spec.axis1.field == "epsilon" || spec.axis2.field == "epsilon") {
      throw ConfigError("epsilon_minus_mu cannot be combined with an epsilon axis");
    }
    if (!spec.fixed.contains("mu") && spec.axis1.field != "mu" && spec.axis2.field != "mu") {
      throw ConfigError("epsilon_minus_mu axis needs mu");
    }
  }
}

std::string csv_header() {
  return "axis1,axis2,gamma,sigma_f_bar,phi,tau2_star,prop1,prop2,prop3,corner,clamped,status";
}

std::string result_columns(const ModelParams& p, const CostSpec& cost, Variant variant) {
  int gamma = 0;
  std::optional<double> threshold;
  double phi = 0.0;
  double tau2 = 0.0;
  SolveFlags flags;
  RegimeClassification reg;
  if (variant == Variant::Baseline) {
    const EquilibriumResult r = solve_equilibrium(p, cost);
    gamma = r.gamma;
    threshold = r.sigma_f_bar;
    phi = r.phi;
    tau2 = r.tau2_star;
    flags = r.flags;
    reg = classify(p, variant);
  } else {
    const VariantResult r = revolution_solve(p, cost);
    gamma = r.gamma_prime;
    threshold = r.sigma_f_bar_prime;
    phi = r.phi_prime;
    tau2 = r.tau2_star_prime;
    flags = r.flags;
    reg = r.regimes;
  }
  std::string row = std::to_string(gamma);
  row += ',';
  row += threshold ? fixed6(*threshold) : std::string("undefined");
  row += ',' + fixed6(phi) + ',' + fixed6(tau2);
  row += ',' + std::string(to_string(reg.prop1)) + ',' + std::string(to_string(reg.prop2)) + ',' +
         std::string(to_string(reg.prop3));
  row += flags.corner ? ",1" : ",0";
  row += flags.clamped() ? ",1" : ",0";
  row += ",ok";
  return row;
}

std::string run_sweep(const SweepSpec& spec, unsigned workers) {
  check_sweep_spec(spec);
  const std::vector<double> xs = spec.axis1.values();
  const std::vector<double> ys = spec.axis2.values();
  const std::size_t total = xs.size() * ys.size();
  std::vector<std::string> rows(total);

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < total; i += stride) {
      const double x = xs[i / ys.size()];
      const double y = ys[i % ys.size()];
      std::string row = fixed6(x) + ',' + fixed6(y) + ',';
      try {
        const ModelParams p = validate_params(point_raw(spec, x, y));
        row += result_columns(p, spec.cost, spec.variant);
      } catch (const AssumptionViolation&) {
        row += ",,,,,,,,,invalid";
      }
      rows[i] = std::move(row);
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1 || total < 2) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }

  std::string out = csv_header() + '\n';
  for (const auto& r : rows) {
    out += r;
    out += '\n';
  }
  return out;
}

}  // namespace fiscap::cli
