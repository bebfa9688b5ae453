#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fiscap/cost.hpp"
#include "fiscap/params.hpp"
#include "fiscap/policy.hpp"

namespace fiscap::cli {

/// splitmix64; one independent stream per (seed, trial, stream) triple.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream = 0);
  std::uint64_t next();
  double uniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

/// Valid baseline draw: every strict assumption holds with margin >= 0.01,
/// lambda <= 0.95, tau_max = 1.
ModelParams sample_params(Rng& rng);

/// Draw satisfying the bargaining assumptions (epsilon = delta <= 0.49).
ModelParams sample_bargaining_params(Rng& rng);

/// Quadratic coefficient c in [0.5, 5].
CostSpec sample_cost(Rng& rng);

enum class Status { Pass, Fail, Skip };

struct PropertyTally {
  std::string name;
  long pass = 0;
  long fail = 0;
  long skipped = 0;
};

struct Counterexample {
  std::string property;
  long trial = 0;
  std::string detail;
};

struct VerifyReport {
  long trials = 0;
  std::uint64_t seed = 0;
  Variant variant = Variant::Baseline;
  std::vector<PropertyTally> properties;
  std::vector<Counterexample> counterexamples;
  std::map<std::string, long> regime_frequencies;

  long failures() const;
  const PropertyTally* find(const std::string& name) const;
  std::string render() const;
};

/// Names of the property suites run for a variant, in report order.
std::vector<std::string> property_names(Variant variant);

VerifyReport run_verify(long trials, std::uint64_t seed, Variant variant, unsigned workers = 1);

/// Full-precision key=value dump of a parameter point.
std::string describe(const ModelParams& p);

}  // namespace fiscap::cli
