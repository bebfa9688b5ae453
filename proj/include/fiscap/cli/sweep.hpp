#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fiscap/cost.hpp"
#include "fiscap/params.hpp"
#include "fiscap/policy.hpp"

namespace fiscap::cli {

/// Axis over a ModelParams field, or over the derived field
/// `epsilon_minus_mu` (sets epsilon = mu + value).
struct Axis {
  std::string field;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> values() const;
};

inline constexpr std::string_view kEpsilonMinusMu = "epsilon_minus_mu";

/// "field=start:stop:step".
Axis parse_axis(std::string_view text);

struct SweepSpec {
  Axis axis1;
  Axis axis2;
  RawParams fixed;  // may omit the axis fields
  Variant variant = Variant::Baseline;
  CostSpec cost = CostSpec::quadratic(1.0);
};

/// Throws ConfigError when the spec itself is unusable.
void check_sweep_spec(const SweepSpec& spec);

std::string csv_header();

/// CSV row fields after the two axis columns, for one valid point.
std::string result_columns(const ModelParams& p, const CostSpec& cost, Variant variant);

/// Header plus one row per grid point, axis1 outer, axis2 inner.
/// Rows are assembled by index, so the text does not depend on `workers`.
std::string run_sweep(const SweepSpec& spec, unsigned workers = 1);

}  // namespace fiscap::cli
