#include "fiscap/cost.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fiscap {

CostSpec CostSpec::quadratic(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("quadratic cost needs a finite coefficient c > 0");
  }
  CostSpec s;
  s.kind_ = Kind::Quadratic;
  s.c_ = c;
  return s;
}

CostSpec CostSpec::tabulated(std::span<const double> x, std::span<const double> marginal) {
  if (x.size() != marginal.size() || x.size() < 2) {
    throw std::invalid_argument("tabulated cost needs >= 2 knots with matching marginals");
  }
  if (x[0] != 0.0 || marginal[0] != 0.0) {
    throw NonConvexCost("tabulated cost must start at the knot (0, 0)");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw std::invalid_argument("tabulated knots must be strictly increasing");
    if (!(marginal[i] > marginal[i - 1])) {
      throw NonConvexCost("tabulated marginal cost is not strictly increasing at knot " +
                          std::to_string(i));
    }
  }
  CostSpec s;
  s.kind_ = Kind::Tabulated;
  s.x_.assign(x.begin(), x.end());
  s.g_.assign(marginal.begin(), marginal.end());
  s.area_.resize(s.x_.size(), 0.0);
  for (std::size_t i = 1; i < s.x_.size(); ++i) {
    s.area_[i] = s.area_[i - 1] + 0.5 * (s.g_[i] + s.g_[i - 1]) * (s.x_[i] - s.x_[i - 1]);
  }
  return s;
}

std::size_t CostSpec::segment(double x) const {
  // Index i such that x lies in [x_i, x_{i+1}); the last segment extends to infinity.
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(std::distance(x_.begin(), it));
  i = i == 0 ? 0 : i - 1;
  return std::min(i, x_.size() - 2);
}

double CostSpec::marginal(double x) const {
  x = std::max(x, 0.0);
  if (kind_ == Kind::Quadratic) return c_ * x;
  const std::size_t i = segment(x);
  const double slope = (g_[i + 1] - g_[i]) / (x_[i + 1] - x_[i]);
  return g_[i] + slope * (x - x_[i]);
}

double CostSpec::cost(double x) const {
  x = std::max(x, 0.0);
  if (kind_ == Kind::Quadratic) return 0.5 * c_ * x * x;
  const std::size_t i = segment(x);
  return area_[i] + 0.5 * (g_[i] + marginal(x)) * (x - x_[i]);
}

double CostSpec::curvature(double x) const {
  if (kind_ == Kind::Quadratic) return c_;
  const std::size_t i = segment(std::max(x, 0.0));
  return (g_[i + 1] - g_[i]) / (x_[i + 1] - x_[i]);
}

double CostSpec::inverse_cost(double budget) const {
  if (!(budget > 0.0)) return 0.0;
  if (kind_ == Kind::Quadratic) return std::sqrt(2.0 * budget / c_);
  double lo = 0.0;
  double hi = 1.0;
  while (cost(hi) <= budget) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (cost(mid) <= budget ? lo : hi) = mid;
  }
  return lo;
}

std::string CostSpec::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::Quadratic) {
    os << "quadratic:c=" << c_;
  } else {
    os << "tabulated:" << x_.size() << " knots";
  }
  return os.str();
}

double inverse_marginal(const CostSpec& cost, double y) {
  if (!std::isfinite(y)) throw std::invalid_argument("inverse_marginal: non-finite marginal value");
  if (y <= 0.0) return 0.0;
  if (cost.kind() == CostSpec::Kind::Quadratic) return y / cost.coefficient();

  double lo = 0.0;
  double hi = 1.0;
  while (cost.marginal(hi) < y) hi *= 2.0;
  const double tol = 1e-12 * std::max(1.0, std::abs(y));
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = cost.marginal(mid) - y;
    if (std::abs(r) <= tol) return mid;
    (r < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace fiscap
