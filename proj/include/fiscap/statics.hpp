#pragma once

#include <stdexcept>
#include <string_view>

#include "fiscap/cost.hpp"
#include "fiscap/params.hpp"
#include "fiscap/policy.hpp"

namespace fiscap {

enum class Prop1 { TurnoverUp, TurnoverDown };
enum class Prop2 { Case2A, Case2B1, Case2B2, Case2B3 };
enum class Prop3 { Case3A, Case3B1, Case3B2 };

std::string_view to_string(Prop1 v);  // "1.A" / "1.B"
std::string_view to_string(Prop2 v);  // "2.A", "2.B.1", ...
std::string_view to_string(Prop3 v);

struct RegimeClassification {
  int gamma = 0;
  Prop1 prop1 = Prop1::TurnoverDown;
  Prop2 prop2 = Prop2::Case2B1;
  Prop3 prop3 = Prop3::Case3B1;
  bool near_threshold = false;         // sigma_f within 1e-9 of the threshold
  bool near_prop2_equality = false;    // (eps - mu) vs sd (eps - lambda mu) within 1e-12

  bool operator==(const RegimeClassification&) const = default;
};

/// (eps - mu) - sd (eps - lambda mu): positive in 2.B.1, zero in 2.B.2, negative in 2.B.3.
double prop2_margin(const ModelParams& p);

RegimeClassification classify(const ModelParams& p, Variant variant = Variant::Baseline);

enum class FdTarget { Phi, Tau2 };
enum class FdParam { Alpha, Lambda, SigmaD };

std::string_view to_string(FdTarget t);
std::string_view to_string(FdParam w);

class DomainExit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct FdEstimate {
  double value = 0.0;
  bool regime_stable = true;  // gamma and all solver flags equal at x - h, x, x + h
  bool corner = false;        // corner solution at the base point
};

/// Default step 1e-6 max(1, |x|).
double default_fd_step(double x);

/// Central difference of turnover or optimal capacity. h <= 0 selects the
/// default step. Throws DomainExit when x +- h leaves [0,1].
FdEstimate finite_difference(const ModelParams& p, const CostSpec& cost, FdTarget target, FdParam wrt,
                             double h = 0.0, Variant variant = Variant::Baseline);

}  // namespace fiscap
