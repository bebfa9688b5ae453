#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fiscap/bargaining.hpp"
#include "fiscap/cli/config.hpp"
#include "fiscap/cli/sweep.hpp"
#include "fiscap/cli/verify.hpp"
#include "fiscap/fiscal.hpp"
#include "fiscap/revolution.hpp"
#include "fiscap/statics.hpp"

namespace py = pybind11;
using namespace fiscap;

namespace {

ModelParams to_params(const py::dict& d) {
  RawParams raw;
  for (auto [k, v] : d) raw[py::cast<std::string>(k)] = py::cast<double>(v);
  return validate_params(raw);
}

CostSpec to_cost(const std::string& text) { return cli::parse_cost(text); }

py::object opt(const std::optional<double>& v) { return v ? py::cast(*v) : py::none(); }

py::dict flags_dict(const SolveFlags& f) {
  py::dict d;
  d["corner"] = f.corner;
  d["clamped_at_tau_max"] = f.clamped_at_tau_max;
  d["clamped_for_feasibility"] = f.clamped_for_feasibility;
  return d;
}

py::dict policy_dict(const PolicyOutcome& o) {
  py::dict d;
  d["t"] = o.t;
  d["r_inc"] = o.r_inc;
  d["r_opp"] = o.r_opp;
  d["r_f"] = o.r_f;
  d["invest_cost"] = o.invest_cost;
  return d;
}

py::dict period2_dict(const std::map<OutcomeKind, PolicyOutcome>& m) {
  py::dict d;
  for (const auto& [k, o] : m) d[py::str(std::string(to_string(k)))] = policy_dict(o);
  return d;
}

py::dict regimes_dict(const RegimeClassification& c) {
  py::dict d;
  d["prop1"] = std::string(to_string(c.prop1));
  d["prop2"] = std::string(to_string(c.prop2));
  d["prop3"] = std::string(to_string(c.prop3));
  return d;
}

py::dict solve(const py::dict& params, const std::string& cost) {
  const ModelParams p = to_params(params);
  const CostSpec c = to_cost(cost);
  const EquilibriumResult e = solve_equilibrium(p, c);
  py::dict d;
  d["gamma"] = e.gamma;
  d["sigma_f_bar"] = opt(e.sigma_f_bar);
  d["phi"] = e.phi;
  d["tau2_star"] = e.tau2_star;
  d["eu_I1"] = e.eu_I1;
  d["eu_O1"] = e.eu_O1;
  d["flags"] = flags_dict(e.flags);
  d["regimes"] = regimes_dict(classify(p));
  d["period1"] = policy_dict(e.period1);
  d["period2"] = period2_dict(e.period2_by_kind);
  return d;
}

py::dict revolution(const py::dict& params, const std::string& cost) {
  const ModelParams p = to_params(params);
  const VariantResult v = revolution_solve(p, to_cost(cost));
  py::dict d;
  d["gamma"] = v.gamma_prime;
  d["sigma_f_bar"] = opt(v.sigma_f_bar_prime);
  d["phi"] = v.phi_prime;
  d["tau2_star"] = v.tau2_star_prime;
  d["eu_I1"] = v.eu_I1;
  d["eu_O1"] = v.eu_O1;
  d["flags"] = flags_dict(v.flags);
  d["regimes"] = regimes_dict(v.regimes);
  d["period1"] = policy_dict(v.period1);
  d["period2"] = period2_dict(v.period2_by_kind);
  return d;
}

// Bargaining needs epsilon = delta, which sits at the edge of omega > delta
// often enough that an Eq2 violation alone is downgraded to a warning.
ModelParams to_bargaining_params(const py::dict& params) {
  RawParams raw;
  for (auto [k, v] : params) raw[py::cast<std::string>(k)] = py::cast<double>(v);
  try {
    return validate_params(raw);
  } catch (const AssumptionViolation& e) {
    for (const Violation& v : e.violations()) {
      if (v.kind != ViolationKind::Eq2) throw;
    }
    PyErr_WarnEx(PyExc_RuntimeWarning, e.violations().front().message.c_str(), 1);
  }
  ModelParams p;
  for (const auto& [k, v] : raw) set_field(p, k, v);
  return p;
}

py::dict bargain(const py::dict& params, const std::string& cost) {
  const ModelParams p = to_bargaining_params(params);
  const auto bad = check_bargaining_assumptions(p);
  if (!bad.empty()) throw std::invalid_argument(bad.front().message);
  const Prop5Result r = classify_prop5(p, to_cost(cost));
  py::dict d;
  d["regime"] = std::string(to_string(r.outcome.regime));
  d["sigma_d2_star"] = r.outcome.sigma_d2_star;
  d["accepted"] = r.outcome.accepted;
  d["cond11_lhs"] = r.outcome.cond11_lhs;
  d["cond12_lhs"] = r.outcome.cond12_lhs;
  d["cond12_rhs"] = r.outcome.cond12_rhs;
  d["prop5"] = std::string(to_string(r.kase));
  d["tau2_star"] = r.tau2_star;
  d["dtau2_dalpha"] = r.dtau2_dalpha;
  d["corner"] = r.corner;
  d["clamped"] = r.clamped;
  d["regime_stable"] = r.regime_stable;
  return d;
}

py::dict verify(long trials, std::uint64_t seed, const std::string& variant, unsigned workers) {
  const Variant v = variant == "revolution" ? Variant::Revolution : Variant::Baseline;
  if (variant != "baseline" && variant != "revolution") throw std::invalid_argument("unknown variant: " + variant);
  cli::VerifyReport r;
  {
    py::gil_scoped_release nogil;
    r = cli::run_verify(trials, seed, v, workers);
  }
  py::dict props;
  for (const auto& t : r.properties) {
    py::dict e;
    e["pass"] = t.pass;
    e["fail"] = t.fail;
    e["skipped"] = t.skipped;
    props[py::str(t.name)] = e;
  }
  py::dict d;
  d["failures"] = r.failures();
  d["properties"] = props;
  d["regime_frequencies"] = r.regime_frequencies;
  d["report"] = r.render();
  return d;
}

std::string sweep(const py::dict& fixed, const std::string& axis1, const std::string& axis2, const std::string& variant,
                  const std::string& cost, unsigned workers) {
  cli::SweepSpec spec;
  for (auto [k, v] : fixed) spec.fixed[py::cast<std::string>(k)] = py::cast<double>(v);
  spec.axis1 = cli::parse_axis(axis1);
  spec.axis2 = cli::parse_axis(axis2);
  spec.variant = variant == "revolution" ? Variant::Revolution : Variant::Baseline;
  spec.cost = to_cost(cost);
  cli::check_sweep_spec(spec);
  return cli::run_sweep(spec, workers);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fiscal capacity under external threat and civil war";

  static py::exception<AssumptionViolation> assumption(m, "AssumptionViolation", PyExc_ValueError);
  static py::exception<cli::ConfigError> config(m, "ConfigError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr e) {
    try {
      if (e) std::rethrow_exception(e);
    } catch (const AssumptionViolation& x) {
      py::set_error(assumption, x.what());
    } catch (const cli::ConfigError& x) {
      py::set_error(config, x.what());
    }
  });

  m.def("validate", [](const py::dict& params) {
    const ModelParams p = to_params(params);
    py::dict d;
    for (const auto& [k, v] : to_raw(p)) d[py::str(k)] = v;
    return d;
  });
  m.def("threshold", [](const py::dict& params) { return opt(civil_war_threshold(to_params(params))); });
  m.def("revolution_threshold", [](const py::dict& params) { return opt(revolution_threshold(to_params(params))); });
  m.def("solve", &solve, py::arg("params"), py::arg("cost") = "quadratic:c=1");
  m.def("revolution_solve", &revolution, py::arg("params"), py::arg("cost") = "quadratic:c=1");
  m.def(
      "optimal_tau2",
      [](const py::dict& params, int gamma, const std::string& cost) {
        return optimal_tau2(to_params(params), to_cost(cost), gamma).tau2;
      },
      py::arg("params"), py::arg("gamma"), py::arg("cost") = "quadratic:c=1");
  m.def(
      "brute_force_tau2",
      [](const py::dict& params, int gamma, double step, const std::string& cost) {
        return brute_force_tau2(to_params(params), to_cost(cost), gamma, step);
      },
      py::arg("params"), py::arg("gamma"), py::arg("step") = 1e-4, py::arg("cost") = "quadratic:c=1");
  m.def("bargain", &bargain, py::arg("params"), py::arg("cost") = "quadratic:c=1");
  m.def("verify", &verify, py::arg("trials") = 1000, py::arg("seed") = 42, py::arg("variant") = "baseline",
        py::arg("workers") = 1);
  m.def("sweep", &sweep, py::arg("fixed"), py::arg("axis1"), py::arg("axis2"), py::arg("variant") = "baseline",
        py::arg("cost") = "quadratic:c=1", py::arg("workers") = 1);
}
