#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fiscap {

/// Primitives of the two-period external-threat game.
///
/// All probability fields live in [0,1]. A ModelParams obtained from
/// validate_params() additionally satisfies
///   rho > mu, omega > delta, epsilon > mu, omega + rho <= 1,
///   m > 0 and 0 <= tau1 <= tau_max <= 1.
/// The struct itself is a plain aggregate so analyses may build points
/// outside the validated domain on purpose.
struct ModelParams {
  double alpha = 0.0;    // probability of an interstate conflict
  double lambda = 0.0;   // P(opposition installed | foreign power wins)
  double epsilon = 0.0;  // opposition's election-win probability
  double delta = 0.0;    // opposition's civil-war win probability, no external war
  double rho = 0.0;      // foreign win probability given a civil war
  double mu = 0.0;       // foreign win probability given internal peace
  double omega = 0.0;    // opposition's civil-war win probability during external war
  double sigma_d = 0.0;  // cohesiveness of domestic institutions
  double sigma_f = 0.0;  // opposition's share of a foreign administration's transfers
  double m = 1.0;        // per-member income
  double tau1 = 0.0;     // initial fiscal capacity
  double tau_max = 1.0;  // feasible upper bound on the tax rate

  bool operator==(const ModelParams&) const = default;
};

enum class ViolationKind {
  Eq1,              // rho > mu
  Eq2,              // omega > delta
  Eq3,              // epsilon > mu
  LotteryOverflow,  // omega + rho <= 1
  Range,            // field outside its admissible range
  Missing,          // required field absent from the raw map
};

struct Violation {
  ViolationKind kind;
  std::string field;  // offending field for Range / Missing, empty otherwise
  std::string message;

  bool operator==(const Violation&) const = default;
};

std::string_view to_string(ViolationKind kind);

/// Raised by validate_params with every violated inequality.
class AssumptionViolation : public std::runtime_error {
 public:
  explicit AssumptionViolation(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }
  bool has(ViolationKind kind) const noexcept;

 private:
  std::vector<Violation> violations_;
};

/// Field map as read from a config file, keyed by the lowercase field names.
using RawParams = std::map<std::string, double, std::less<>>;

/// Names of every ModelParams field in declaration order.
const std::vector<std::string>& field_names();

/// Fields with defaults (m = 1, tau1 = 0, tau_max = 1).
bool has_default(std::string_view field);

double get_field(const ModelParams& p, std::string_view field);
void set_field(ModelParams& p, std::string_view field, double value);
RawParams to_raw(const ModelParams& p);

/// Every violated invariant of an already-assembled point; empty when valid.
std::vector<Violation> check_params(const ModelParams& p);

/// Total validation: collects all missing fields, range errors and
/// assumption failures before throwing AssumptionViolation.
ModelParams validate_params(const RawParams& raw);

/// Convenience overload; equivalent to validate_params(to_raw(p)).
ModelParams validate_params(const ModelParams& p);

}  // namespace fiscap
