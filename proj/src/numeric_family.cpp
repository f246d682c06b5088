// Generators given by a callable, and conjugates evaluated by numeric maximization.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "mo/detail/conjugate_sup.hpp"
#include "mo/detail/search.hpp"
#include "mo/errors.hpp"

namespace mo {
namespace detail {

namespace {
constexpr double kHuge = 1e300;

double objective(const Family& phi, double t, double v, double u) {
  const ExtReal p = phi.value(t, u);
  if (p.is_infinite()) return -std::numeric_limits<double>::infinity();
  return u * v - p.value();
}
}  // namespace

SupResult conjugate_sup(const Family& phi, double t, double v, double rel_tol) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("conjugate: argument must be finite and >= 0");
  if (v == 0.0) return {ExtReal{}, 0.0};
  const ExtReal b = phi.domain_bound(t);
  double hi = b.is_finite() ? std::min(1.0, b.value()) : 1.0;
  while (!(b.is_finite() && hi >= b.value())) {
    const ExtReal d = phi.left_derivative(t, hi);
    if (d.is_infinite() || v - d.value() <= 0.0) break;
    if (hi > kHuge) {
      // Still ascending at the end of the representable range: finite only if the objective has stalled.
      const double g1 = objective(phi, t, v, hi);
      const double g0 = objective(phi, t, v, 0.5 * hi);
      if (std::isfinite(g1) && std::fabs(g1 - g0) <= 1e-10 * std::max(1.0, std::fabs(g1)))
        return {ExtReal::saturating(std::max(g1, 0.0)), hi};
      return {ExtReal::infinity(), hi};
    }
    hi = b.is_finite() ? std::min(2.0 * hi, b.value()) : 2.0 * hi;
  }
  auto [arg, val] = golden_max([&](double u) { return objective(phi, t, v, u); }, 0.0, hi, rel_tol);
  return {ExtReal::saturating(std::max(val, 0.0)), arg};
}

ExtReal asymptotic_slope(const Family& phi, double t) {
  const ExtReal b = phi.domain_bound(t);
  if (b.is_finite()) return ExtReal::infinity();
  double u = 1.0;
  ExtReal prev = phi.left_derivative(t, u);
  for (int i = 0; i < 2000 && u < kHuge; ++i) {
    u *= 2.0;
    const ExtReal cur = phi.left_derivative(t, u);
    if (cur.is_infinite() || cur.value() >= kHuge) return ExtReal::infinity();
    if (std::fabs(cur.value() - prev.value()) <= 1e-10 * std::max(cur.value(), 1e-300)) return cur;
    prev = cur;
  }
  return ExtReal::infinity();
}

}  // namespace detail

namespace {

class Numeric final : public Family {
 public:
  Numeric(std::function<double(double, double)> fn, ExtReal bound, std::string label)
      : fn_(std::move(fn)), bound_(bound), label_(std::move(label)) {}

  std::string name() const override { return "numeric"; }
  std::string parameters() const override { return label_; }

  ExtReal value(double t, double u) const override {
    if (bound_.is_finite() && u > bound_.value()) return ExtReal::infinity();
    if (u == 0.0) return ExtReal{};
    const double y = fn_(t, u);
    if (std::isnan(y)) throw DomainError("numeric generator '" + label_ + "' returned NaN");
    if (y == std::numeric_limits<double>::infinity()) return ExtReal::infinity();
    return ExtReal::saturating(std::max(y, 0.0));
  }

  ExtReal left_derivative(double t, double u) const override {
    if (u == 0.0) return ExtReal{};
    if (bound_.is_finite() && u > bound_.value()) return ExtReal::infinity();
    const double h = std::min(1e-4 * std::max(1.0, u), 0.5 * u);
    return difference(t, u, -h);
  }
  ExtReal right_derivative(double t, double u) const override {
    if (bound_.is_finite() && u >= bound_.value()) return ExtReal::infinity();
    double h = 1e-4 * std::max(1.0, u);
    if (bound_.is_finite()) h = std::min(h, 0.5 * (bound_.value() - u));
    return difference(t, u, h);
  }

  double zero_bound(double t) const override {
    auto positive = [&](double u) { return value(t, u) > 0.0; };
    if (positive(1e-30)) return 0.0;
    if (bound_.is_finite() && !positive(bound_.value())) return bound_.value();
    const double hi0 = bound_.is_finite() ? bound_.value() : 1.0;
    auto br = bound_.is_finite() ? detail::Bracket{0.0, hi0} : detail::find_bracket(positive, 1.0, "zero bound");
    br = detail::bisect(positive, br.below, br.above, 1e-13);
    return br.below < 1e-30 ? 0.0 : br.below;
  }
  ExtReal domain_bound(double) const override { return bound_; }
  Capabilities capabilities() const override { return {bound_.is_infinite(), false, std::nullopt, true}; }

 private:
  // One-sided Richardson extrapolation 2 D(h/2) - D(h) of the difference quotient D.
  ExtReal difference(double t, double u, double h) const {
    const ExtReal f0 = value(t, u);
    const ExtReal f1 = value(t, u + h);
    const ExtReal f2 = value(t, u + 0.5 * h);
    if (f0.is_infinite() || f1.is_infinite() || f2.is_infinite()) return ExtReal::infinity();
    const double d1 = (f1.value() - f0.value()) / h;
    const double d2 = (f2.value() - f0.value()) / (0.5 * h);
    const double d = 2.0 * d2 - d1;
    return ExtReal::saturating(std::max(d, 0.0));
  }

  std::function<double(double, double)> fn_;
  ExtReal bound_;
  std::string label_;
};

class NumericConjugate final : public Family {
 public:
  explicit NumericConjugate(std::shared_ptr<const Family> base) : base_(std::move(base)) {}

  std::string name() const override { return "numeric_conjugate"; }
  std::string parameters() const override { return "of " + base_->name() + "(" + base_->parameters() + ")"; }

  ExtReal value(double t, double v) const override {
    const ExtReal b = domain_bound(t);
    if (b.is_finite() && v > b.value()) return ExtReal::infinity();
    return detail::conjugate_sup(*base_, t, v).value;
  }
  // The subdifferential of the conjugate at v is [inf{x : Phi'_+ >= v}, sup{x : Phi'_- <= v}].
  ExtReal left_derivative(double t, double v) const override {
    if (v == 0.0) return ExtReal{};
    const ExtReal b = domain_bound(t);
    if (b.is_finite() && v > b.value()) return ExtReal::infinity();
    return base_->derivative_lower_inverse(t, v);
  }
  ExtReal right_derivative(double t, double v) const override {
    const ExtReal b = domain_bound(t);
    if (b.is_finite() && v >= b.value()) return ExtReal::infinity();
    return base_->derivative_upper_inverse(t, v);
  }
  double zero_bound(double t) const override {
    const ExtReal d = base_->right_derivative(t, 0.0);
    return d.is_finite() ? d.value() : std::numeric_limits<double>::max();
  }
  ExtReal domain_bound(double t) const override {
    std::lock_guard lock(mu_);
    auto it = bound_cache_.find(t);
    if (it != bound_cache_.end()) return it->second;
    const ExtReal b = detail::asymptotic_slope(*base_, t);
    bound_cache_.emplace(t, b);
    return b;
  }
  Capabilities capabilities() const override {
    return {domain_bound(0.5).is_infinite(), false, std::nullopt, true};
  }
  std::shared_ptr<const Family> analytic_conjugate() const override { return nullptr; }

  ExtReal derivative_upper_inverse(double t, double x) const override {
    return min(base_->right_derivative(t, x), domain_bound(t));
  }
  ExtReal derivative_lower_inverse(double t, double x) const override {
    return min(base_->left_derivative(t, x), domain_bound(t));
  }

 private:
  std::shared_ptr<const Family> base_;
  mutable std::mutex mu_;
  mutable std::map<double, ExtReal> bound_cache_;
};

}  // namespace

namespace gen {

OrliczGenerator numeric(std::function<double(double, double)> phi, ExtReal bound, std::string label) {
  if (!phi) throw InputError("numeric: empty callable");
  return OrliczGenerator(std::make_shared<Numeric>(std::move(phi), bound, std::move(label)));
}

OrliczGenerator numeric_conjugate(const OrliczGenerator& base) {
  return OrliczGenerator(std::make_shared<NumericConjugate>(base.shared()));
}

}  // namespace gen
}  // namespace mo
