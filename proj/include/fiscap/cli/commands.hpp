#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "fiscap/cli/sweep.hpp"
#include "fiscap/cost.hpp"
#include "fiscap/params.hpp"
#include "fiscap/policy.hpp"

namespace fiscap::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitProperty = 2;

Variant parse_variant(std::string_view text);

/// Multi-line solve report; the first line carries the headline values.
std::string solve_report(const ModelParams& p, const CostSpec& cost, Variant variant);

/// Header plus one row with empty axis columns.
std::string solve_csv(const ModelParams& p, const CostSpec& cost, Variant variant);

int run_solve(const std::string& config_path, const std::optional<std::string>& out_path, Variant variant,
              const CostSpec& cost, std::ostream& out, std::ostream& err);

int run_sweep_command(const SweepSpec& spec, const std::optional<std::string>& out_path, unsigned workers,
                      std::ostream& out, std::ostream& err);

int run_verify_command(long trials, std::uint64_t seed, Variant variant, unsigned workers, std::ostream& out,
                       std::ostream& err);

/// Bargaining report for an assembled point. Only an omega > delta violation
/// is tolerated (reported as a warning); anything else is an input error.
std::string bargain_report(const ModelParams& p, const CostSpec& cost);

int run_bargain(const std::string& config_path, const CostSpec& cost, std::ostream& out, std::ostream& err);

}  // namespace fiscap::cli
