#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fiscap/cost.hpp"
#include "fiscap/params.hpp"

namespace fiscap::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `key=value` lines; blank lines and `#` comments are ignored.
/// Unknown keys, duplicates and malformed numbers raise ConfigError.
RawParams parse_config(std::string_view text);

RawParams read_config_file(const std::string& path);

/// "quadratic:c=VALUE".
CostSpec parse_cost(std::string_view text);

/// Strict decimal parse of the whole string.
double parse_number(std::string_view text);

/// Fixed six-decimal rendering, with negative zero printed as 0.
std::string fixed6(double v);

/// Shortest string that round-trips to the same double.
std::string round_trip(double v);

}  // namespace fiscap::cli
