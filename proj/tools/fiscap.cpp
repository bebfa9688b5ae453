#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <thread>

#include "fiscap/cli/commands.hpp"
#include "fiscap/cli/config.hpp"

using namespace fiscap;

int main(int argc, char** argv) {
  CLI::App app{"Fiscal capacity under external threat and civil war"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::string variant_text = "baseline";
  std::string cost_text = "quadratic:c=1";
  std::string axis1;
  std::string axis2;
  long trials = 1000;
  std::uint64_t seed = 42;
  unsigned threads = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--variant", variant_text, "baseline or revolution")->check(CLI::IsMember({"baseline", "revolution"}));
    sub->add_option("--cost", cost_text, "quadratic:c=VALUE");
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve one parameter point");
  solve->add_option("--config", config, "key=value parameter file")->required();
  solve->add_option("--out", out, "write a one-row CSV");
  add_common(solve);

  CLI::App* sweep = app.add_subcommand("sweep", "Two-axis parameter sweep to CSV");
  sweep->add_option("--config", config, "fixed parameters")->required();
  sweep->add_option("--axis1", axis1, "field=start:stop:step")->required();
  sweep->add_option("--axis2", axis2, "field=start:stop:step")->required();
  sweep->add_option("--out", out, "CSV path (stdout when omitted)");
  sweep->add_option("--threads", threads, "worker threads");
  add_common(sweep);

  CLI::App* verify = app.add_subcommand("verify", "Randomised property checks");
  verify->add_option("--trials", trials, "number of draws")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--threads", threads, "worker threads");
  verify->add_option("--variant", variant_text, "baseline or revolution")
      ->check(CLI::IsMember({"baseline", "revolution"}));

  CLI::App* bargain = app.add_subcommand("bargain", "Constitutional bargaining report");
  bargain->add_option("--config", config, "key=value parameter file")->required();
  bargain->add_option("--cost", cost_text, "quadratic:c=VALUE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInput;
  }

  try {
    const Variant variant = cli::parse_variant(variant_text);
    const std::optional<std::string> out_path = out.empty() ? std::nullopt : std::optional<std::string>(out);
    if (*solve) {
      return cli::run_solve(config, out_path, variant, cli::parse_cost(cost_text), std::cout, std::cerr);
    }
    if (*sweep) {
      cli::SweepSpec spec;
      spec.axis1 = cli::parse_axis(axis1);
      spec.axis2 = cli::parse_axis(axis2);
      spec.fixed = cli::read_config_file(config);
      spec.variant = variant;
      spec.cost = cli::parse_cost(cost_text);
      return cli::run_sweep_command(spec, out_path, threads, std::cout, std::cerr);
    }
    if (*verify) return cli::run_verify_command(trials, seed, variant, threads, std::cout, std::cerr);
    if (*bargain) return cli::run_bargain(config, cli::parse_cost(cost_text), std::cout, std::cerr);
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitInput;
  } catch (const NonConvexCost& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitInput;
  }
  return cli::kExitInput;
}
