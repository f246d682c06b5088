#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mo/ext_real.hpp"

namespace mo {

struct Capabilities {
  bool finite_valued = true;
  bool differentiable = true;
  /// Family tag of the closed-form conjugate, if one exists.
  std::optional<std::string> analytic_conjugate;
  /// Derivatives come from difference quotients rather than closed forms.
  bool numeric = false;
};

/// Location of a jump in the derivative, gap = Phi'_+(x) - Phi'_-(x) with Phi'_-(0) = 0.
struct Kink {
  double x = 0.0;
  ExtReal gap;
};

/// Analytic knowledge about the Delta_2 condition. `constant` is a K for which Phi(t,2u) <= K Phi(t,u)
/// holds for all u >= a_Phi(t).
struct Delta2Info {
  std::optional<bool> holds;
  std::optional<double> constant;
};

/// Implementation interface of a Musielak-Orlicz generator family. Instances are immutable.
///
/// Derivative conventions: left_derivative(t, 0) = 0; both one-sided derivatives are infinite beyond
/// b_Phi(t), and right_derivative(t, b) is infinite when b is finite.
class Family {
 public:
  virtual ~Family() = default;

  virtual std::string name() const = 0;
  virtual std::string parameters() const = 0;

  virtual ExtReal value(double t, double u) const = 0;
  virtual ExtReal left_derivative(double t, double u) const = 0;
  virtual ExtReal right_derivative(double t, double u) const = 0;
  virtual double zero_bound(double t) const = 0;
  virtual ExtReal domain_bound(double t) const = 0;
  virtual Capabilities capabilities() const = 0;

  /// Closed-form conjugate, or nullptr.
  virtual std::shared_ptr<const Family> analytic_conjugate() const { return nullptr; }

  /// sup{x in [0, b] : Phi'_-(t,x) <= v}; infinite when the set is unbounded.
  virtual ExtReal derivative_upper_inverse(double t, double v) const;
  /// inf{x >= 0 : Phi'_+(t,x) >= v}; infinite when the set is empty.
  virtual ExtReal derivative_lower_inverse(double t, double v) const;

  /// Closed-form list of derivative jumps on [0, b], sorted by x; nullopt when unknown.
  virtual std::optional<std::vector<Kink>> kinks(double /*t*/) const { return std::nullopt; }
  virtual Delta2Info delta2() const { return {}; }
};

/// A t-dependent real parameter, e.g. a variable exponent p(t).
struct Profile {
  std::function<double(double)> fn;
  double inf = 0.0;  ///< infimum over T
  double sup = 0.0;  ///< supremum over T (may be +inf)
  std::string label;

  double operator()(double t) const { return fn(t); }
  static Profile constant(double c);
  /// Piecewise constant: value of the node nearest to t.
  static Profile table(std::vector<double> nodes, std::vector<double> values);
};

/// One piece of a convex piecewise-quadratic generator: on [start, next start),
/// Phi(u) = value + slope (u - start) + curvature/2 (u - start)^2.
struct QuadPiece {
  double start = 0.0;
  double slope = 0.0;
  double curvature = 0.0;
  double value = 0.0;  ///< filled in by the constructor from continuity
};

/// Value-semantic handle on an immutable generator family.
class OrliczGenerator {
 public:
  explicit OrliczGenerator(std::shared_ptr<const Family> impl);

  std::string name() const { return impl_->name(); }
  std::string parameters() const { return impl_->parameters(); }
  Capabilities capabilities() const { return impl_->capabilities(); }
  const Family& family() const { return *impl_; }
  const std::shared_ptr<const Family>& shared() const { return impl_; }

  /// Phi(t,u) for u >= 0, with Phi(t,inf) = inf.
  ExtReal value(double t, double u) const;
  ExtReal value(double t, ExtReal u) const { return u.is_infinite() ? ExtReal::infinity() : value(t, u.value()); }
  ExtReal left_derivative(double t, double u) const;
  ExtReal right_derivative(double t, double u) const;
  double zero_bound(double t) const { return impl_->zero_bound(t); }
  ExtReal domain_bound(double t) const { return impl_->domain_bound(t); }

  std::shared_ptr<const Family> analytic_conjugate() const { return impl_->analytic_conjugate(); }
  std::optional<std::vector<Kink>> kinks(double t) const { return impl_->kinks(t); }
  Delta2Info delta2() const { return impl_->delta2(); }

 private:
  std::shared_ptr<const Family> impl_;
};

namespace gen {

/// Phi(u) = u^p / p, p > 1.
OrliczGenerator power(double p);
/// Phi(t,u) = u^{p(t)}, p(t) > 1.
OrliczGenerator variable_exponent(Profile p);
/// Phi(t,u) = c(t) u^{p(t)}, p(t) > 1, c(t) > 0. Closed under conjugation.
OrliczGenerator power_law(Profile coefficient, Profile exponent, std::string tag = "power_law");
/// Phi(u) = e^u - 1 - u.
OrliczGenerator exp_minus_one();
/// Phi(v) = (1+v) log(1+v) - v, the conjugate of exp_minus_one.
OrliczGenerator entropy();
/// Phi(u) = slope * u.
OrliczGenerator linear(double slope = 1.0);
/// Phi(u) = 0 for u <= c, infinity beyond.
OrliczGenerator indicator(double c);
/// Convex piecewise quadratic on [0, bound], infinite beyond a finite bound.
OrliczGenerator piecewise_quadratic(std::vector<QuadPiece> pieces, ExtReal bound = ExtReal::infinity(),
                                    std::string tag = "plq");
/// u^2/2 on [0,1], then 1/2 + 2(u-1): derivative jumps from 1 to 2 at u = 1.
OrliczGenerator kinked_quadratic_linear();
/// u^2/2 on [0,1], then 1/2 + 2(u-1) + (u-1)^2/2: same kink, superlinear tail.
OrliczGenerator kinked_quadratic();
/// Phi_n(t,u) = int_0^u min(Phi'_-(t,x), n) dx.
OrliczGenerator truncated(const OrliczGenerator& base, double n);
/// base on [0, cap], infinite beyond.
OrliczGenerator restricted(const OrliczGenerator& base, double cap);
/// Generic callable. Derivatives are Richardson-stabilized one-sided difference quotients.
OrliczGenerator numeric(std::function<double(double, double)> phi, ExtReal bound, std::string label);
/// Conjugate evaluated by golden-section maximization of u v - Phi(t,u).
OrliczGenerator numeric_conjugate(const OrliczGenerator& base);

}  // namespace gen

}  // namespace mo
