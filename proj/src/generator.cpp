#include "mo/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "mo/detail/search.hpp"

namespace mo {

std::string ExtReal::str() const {
  if (inf_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << v_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, ExtReal x) { return os << x.str(); }

Profile Profile::constant(double c) {
  std::ostringstream os;
  os << c;
  return Profile{[c](double) { return c; }, c, c, os.str()};
}

Profile Profile::table(std::vector<double> nodes, std::vector<double> values) {
  if (nodes.empty() || nodes.size() != values.size()) throw InputError("profile table: nodes/values length mismatch");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double inf = *lo;
  const double sup = *hi;
  auto fn = [nodes = std::move(nodes), values = std::move(values)](double t) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), t);
    std::size_t i = static_cast<std::size_t>(it - nodes.begin());
    if (i == nodes.size()) return values.back();
    if (i > 0 && (t - nodes[i - 1]) <= (nodes[i] - t)) --i;
    return values[i];
  };
  return Profile{std::move(fn), inf, sup, "table"};
}

ExtReal Family::derivative_upper_inverse(double t, double v) const {
  const ExtReal b = domain_bound(t);
  if (b.is_finite()) {
    const double bb = b.value();
    if (left_derivative(t, bb) <= v) return b;
    auto above = [&](double x) { return left_derivative(t, x) > v; };
    return ExtReal::finite(detail::bisect(above, 0.0, bb, 1e-13).below);
  }
  double hi = 1.0;
  while (left_derivative(t, hi) <= v) {
    hi *= 2.0;
    if (hi > 1e300) return ExtReal::infinity();
  }
  auto above = [&](double x) { return left_derivative(t, x) > v; };
  return ExtReal::finite(detail::bisect(above, 0.0, hi, 1e-13).below);
}

ExtReal Family::derivative_lower_inverse(double t, double v) const {
  if (right_derivative(t, 0.0) >= v) return ExtReal{};
  double hi = 1.0;
  while (right_derivative(t, hi) < v) {
    hi *= 2.0;
    if (hi > 1e300) return ExtReal::infinity();
  }
  auto reached = [&](double x) { return right_derivative(t, x) >= v; };
  return ExtReal::finite(detail::bisect(reached, 0.0, hi, 1e-13).above);
}

OrliczGenerator::OrliczGenerator(std::shared_ptr<const Family> impl) : impl_(std::move(impl)) {
  if (!impl_) throw InputError("generator: null family");
}

ExtReal OrliczGenerator::value(double t, double u) const {
  if (u < 0.0 || u != u) throw DomainError("eval_phi: u must be >= 0");
  if (u == 0.0) return ExtReal{};
  if (u == std::numeric_limits<double>::infinity()) return ExtReal::infinity();
  return impl_->value(t, u);
}

ExtReal OrliczGenerator::left_derivative(double t, double u) const {
  if (u < 0.0 || u != u) throw DomainError("derivative: u must be >= 0");
  if (u == 0.0) return ExtReal{};
  if (u == std::numeric_limits<double>::infinity()) return ExtReal::infinity();
  return impl_->left_derivative(t, u);
}

ExtReal OrliczGenerator::right_derivative(double t, double u) const {
  if (u < 0.0 || u != u) throw DomainError("derivative: u must be >= 0");
  if (u == std::numeric_limits<double>::infinity()) return ExtReal::infinity();
  return impl_->right_derivative(t, u);
}

}  // namespace mo
