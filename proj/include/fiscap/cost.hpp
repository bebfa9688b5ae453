#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fiscap {

class NonConvexCost : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Strictly convex investment cost C with C(0) = 0 and C'(0) = 0.
///
/// Two shapes are supported: the quadratic C(x) = c x^2 / 2, and a
/// tabulated marginal cost interpolated linearly between knots (and
/// extrapolated with the last segment's slope). The first knot must be
/// (0, 0) and both coordinates must be strictly increasing.
class CostSpec {
 public:
  enum class Kind { Quadratic, Tabulated };

  static CostSpec quadratic(double c);
  static CostSpec tabulated(std::span<const double> x, std::span<const double> marginal);

  Kind kind() const noexcept { return kind_; }
  double coefficient() const noexcept { return c_; }

  double cost(double x) const;
  double marginal(double x) const;

  /// C'' where it exists; for tabulated costs the slope of the segment
  /// containing x (right derivative at knots).
  double curvature(double x) const;

  /// Inverse of C itself on [0, inf): the largest investment whose cost is
  /// at most `budget`.
  double inverse_cost(double budget) const;

  std::string describe() const;

 private:
  CostSpec() = default;
  std::size_t segment(double x) const;

  Kind kind_ = Kind::Quadratic;
  double c_ = 1.0;
  std::vector<double> x_;
  std::vector<double> g_;
  std::vector<double> area_;  // C at each knot
};

/// Investment x >= 0 solving C'(x) = y; zero when y <= 0 (corner).
/// Tabulated costs are inverted by bisection to |C'(x) - y| <= 1e-12 max(1,|y|).
double inverse_marginal(const CostSpec& cost, double y);

}  // namespace fiscap
