// Closed-form generator families: power laws, exponential/entropy pair, convex piecewise quadratics,
// and the truncation/restriction pair (conjugates of each other).

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mo/detail/search.hpp"
#include "mo/generator.hpp"

namespace mo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// Largest observed Phi(2u)/Phi(u) over u >= threshold; used as the Delta_2 constant of finite-valued
// families whose growth is at most polynomial.
double sampled_doubling_constant(const Family& f, double threshold) {
  double k = 1.0;
  const double lo = std::max(threshold, 1e-6);
  for (int i = 0; i <= 4000; ++i) {
    const double u = lo * std::pow(1e14 / lo, i / 4000.0);
    const ExtReal a = f.value(0.5, u);
    const ExtReal b = f.value(0.5, 2.0 * u);
    if (a.is_infinite() || b.is_infinite()) break;
    if (a.value() > 0.0) k = std::max(k, b.value() / a.value());
  }
  return k * 1.01;
}

// ---------------------------------------------------------------------------------------------- power law

class PowerLaw final : public Family {
 public:
  PowerLaw(Profile coef, Profile exponent, std::string tag, std::string conj_tag)
      : coef_(std::move(coef)), exp_(std::move(exponent)), tag_(std::move(tag)), conj_tag_(std::move(conj_tag)) {
    if (!(exp_.inf > 1.0)) throw InputError(tag_ + ": exponent must exceed 1 everywhere");
    if (!(coef_.inf > 0.0)) throw InputError(tag_ + ": coefficient must be positive");
  }

  std::string name() const override { return tag_; }
  std::string parameters() const override {
    if (tag_ == "power") return "p=" + fmt(exp_.sup);
    return "c=" + coef_.label + ", p=" + exp_.label;
  }

  ExtReal value(double t, double u) const override {
    if (u == 0.0) return ExtReal{};
    return ExtReal::saturating(coef_(t) * std::pow(u, exp_(t)));
  }
  ExtReal left_derivative(double t, double u) const override { return right_derivative(t, u); }
  ExtReal right_derivative(double t, double u) const override {
    if (u == 0.0) return ExtReal{};
    const double p = exp_(t);
    return ExtReal::saturating(coef_(t) * p * std::pow(u, p - 1.0));
  }
  double zero_bound(double) const override { return 0.0; }
  ExtReal domain_bound(double) const override { return ExtReal::infinity(); }
  Capabilities capabilities() const override { return {true, true, conj_tag_, false}; }

  std::shared_ptr<const Family> analytic_conjugate() const override {
    // sup_u (uv - c u^p) = c' v^q with q = p/(p-1), c' = (p-1) c (c p)^{-q}.
    auto c = coef_.fn;
    auto p = exp_.fn;
    auto q = [p](double t) { return p(t) / (p(t) - 1.0); };
    auto cq = [c, p, q](double t) { return (p(t) - 1.0) * c(t) * std::pow(c(t) * p(t), -q(t)); };
    const double q_inf = exp_.sup == kInf ? 1.0 + 1e-300 : exp_.sup / (exp_.sup - 1.0);
    const double q_sup = exp_.inf / (exp_.inf - 1.0);
    if (tag_ == "power") {
      const double pc = exp_.sup;
      const double qc = pc / (pc - 1.0);
      return std::make_shared<PowerLaw>(Profile::constant(1.0 / qc), Profile::constant(qc), "power", "power");
    }
    Profile qp{q, std::max(q_inf, 1.0 + 1e-15), q_sup, "q(" + exp_.label + ")"};
    Profile cp{cq, 0.0, kInf, "c*(" + coef_.label + ")"};
    // Infimum of the conjugate coefficient is only known to be positive; evaluate pointwise.
    cp.inf = std::numeric_limits<double>::min();
    return std::make_shared<PowerLaw>(std::move(cp), std::move(qp), conj_tag_, tag_);
  }

  ExtReal derivative_upper_inverse(double t, double v) const override {
    const double p = exp_(t);
    return ExtReal::saturating(std::pow(v / (coef_(t) * p), 1.0 / (p - 1.0)));
  }
  ExtReal derivative_lower_inverse(double t, double v) const override { return derivative_upper_inverse(t, v); }

  std::optional<std::vector<Kink>> kinks(double) const override { return std::vector<Kink>{}; }
  Delta2Info delta2() const override {
    if (exp_.sup == kInf) return {false, std::nullopt};
    return {true, std::pow(2.0, exp_.sup)};
  }

 private:
  Profile coef_;
  Profile exp_;
  std::string tag_;
  std::string conj_tag_;
};

// ------------------------------------------------------------------------------------- exponential pair

class ExpMinusOne final : public Family {
 public:
  std::string name() const override { return "expm1"; }
  std::string parameters() const override { return ""; }
  ExtReal value(double, double u) const override {
    if (u == 0.0) return ExtReal{};
    return ExtReal::saturating(std::expm1(u) - u);
  }
  ExtReal left_derivative(double t, double u) const override { return right_derivative(t, u); }
  ExtReal right_derivative(double, double u) const override { return ExtReal::saturating(std::expm1(u)); }
  double zero_bound(double) const override { return 0.0; }
  ExtReal domain_bound(double) const override { return ExtReal::infinity(); }
  Capabilities capabilities() const override { return {true, true, "entropy", false}; }
  std::shared_ptr<const Family> analytic_conjugate() const override;
  ExtReal derivative_upper_inverse(double, double v) const override { return ExtReal::finite(std::log1p(v)); }
  ExtReal derivative_lower_inverse(double t, double v) const override { return derivative_upper_inverse(t, v); }
  std::optional<std::vector<Kink>> kinks(double) const override { return std::vector<Kink>{}; }
  Delta2Info delta2() const override { return {false, std::nullopt}; }
};

class Entropy final : public Family {
 public:
  std::string name() const override { return "entropy"; }
  std::string parameters() const override { return ""; }
  ExtReal value(double, double v) const override {
    if (v == 0.0) return ExtReal{};
    if (v < 1e-4) return ExtReal::finite(v * v * (0.5 - v * (1.0 / 6.0 - v / 12.0)));
    return ExtReal::saturating((1.0 + v) * std::log1p(v) - v);
  }
  ExtReal left_derivative(double t, double v) const override { return right_derivative(t, v); }
  ExtReal right_derivative(double, double v) const override { return ExtReal::finite(std::log1p(v)); }
  double zero_bound(double) const override { return 0.0; }
  ExtReal domain_bound(double) const override { return ExtReal::infinity(); }
  Capabilities capabilities() const override { return {true, true, "expm1", false}; }
  std::shared_ptr<const Family> analytic_conjugate() const override { return std::make_shared<ExpMinusOne>(); }
  ExtReal derivative_upper_inverse(double, double u) const override { return ExtReal::saturating(std::expm1(u)); }
  ExtReal derivative_lower_inverse(double t, double u) const override { return derivative_upper_inverse(t, u); }
  std::optional<std::vector<Kink>> kinks(double) const override { return std::vector<Kink>{}; }
  // Phi'' = 1/(1+v) is decreasing, which gives Phi(2v) <= 4 Phi(v).
  Delta2Info delta2() const override { return {true, 4.0}; }
};

std::shared_ptr<const Family> ExpMinusOne::analytic_conjugate() const { return std::make_shared<Entropy>(); }

// ------------------------------------------------------------------------------- piecewise quadratic

class PiecewiseQuadratic final : public Family {
 public:
  PiecewiseQuadratic(std::vector<QuadPiece> pieces, ExtReal bound, std::string tag)
      : pieces_(std::move(pieces)), bound_(bound), tag_(std::move(tag)) {
    if (pieces_.empty()) throw InputError("plq: no pieces");
    if (pieces_[0].start != 0.0) throw InputError("plq: first piece must start at 0");
    if (pieces_[0].slope < 0.0) throw InputError("plq: initial slope must be >= 0");
    pieces_[0].value = 0.0;
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
      const auto& p = pieces_[j];
      if (p.curvature < 0.0) throw InputError("plq: piece " + std::to_string(j) + " has negative curvature");
      if (j > 0) {
        const auto& q = pieces_[j - 1];
        const double len = p.start - q.start;
        if (!(len > 0.0)) throw InputError("plq: piece starts must be strictly increasing");
        if (p.slope < end_slope(j - 1) - 1e-14 * std::max(1.0, std::fabs(p.slope)))
          throw InputError("plq: slope decreases at piece " + std::to_string(j) + " (not convex)");
        pieces_[j].value = q.value + q.slope * len + 0.5 * q.curvature * len * len;
      }
    }
    if (bound_.is_finite() && !(bound_.value() > pieces_.back().start))
      throw InputError("plq: bound must exceed the last piece start");
    if (bound_.is_infinite() && pieces_.back().slope <= 0.0 && pieces_.back().curvature <= 0.0)
      throw InputError("plq: generator must tend to infinity");
  }

  std::string name() const override { return tag_; }
  std::string parameters() const override {
    std::ostringstream os;
    os.precision(10);
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
      os << (j ? "; " : "") << "[" << pieces_[j].start << ": s=" << pieces_[j].slope << " c=" << pieces_[j].curvature
         << "]";
    }
    os << " b=" << bound_.str();
    return os.str();
  }

  ExtReal value(double, double u) const override {
    if (bound_.is_finite() && u > bound_.value()) return ExtReal::infinity();
    const auto& p = pieces_[piece_at(u)];
    const double d = u - p.start;
    return ExtReal::saturating(p.value + p.slope * d + 0.5 * p.curvature * d * d);
  }
  ExtReal left_derivative(double, double u) const override {
    if (u == 0.0) return ExtReal{};
    if (bound_.is_finite() && u > bound_.value()) return ExtReal::infinity();
    std::size_t j = piece_at(u);
    if (j > 0 && pieces_[j].start == u) --j;
    const auto& p = pieces_[j];
    return ExtReal::saturating(p.slope + p.curvature * (u - p.start));
  }
  ExtReal right_derivative(double, double u) const override {
    if (bound_.is_finite() && u >= bound_.value()) return ExtReal::infinity();
    const auto& p = pieces_[piece_at(u)];
    return ExtReal::saturating(p.slope + p.curvature * (u - p.start));
  }
  double zero_bound(double) const override {
    double a = 0.0;
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
      if (pieces_[j].slope != 0.0 || pieces_[j].curvature != 0.0) break;
      a = piece_end(j);
    }
    return a;
  }
  ExtReal domain_bound(double) const override { return bound_; }
  Capabilities capabilities() const override {
    bool smooth = bound_.is_infinite() && pieces_[0].slope == 0.0;
    for (std::size_t j = 1; j < pieces_.size() && smooth; ++j) smooth = pieces_[j].slope <= end_slope(j - 1);
    return {bound_.is_infinite(), smooth, "plq", false};
  }

  std::shared_ptr<const Family> analytic_conjugate() const override;

  ExtReal derivative_upper_inverse(double, double v) const override {
    double x = 0.0;
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
      const auto& p = pieces_[j];
      if (p.slope > v) return ExtReal::finite(x);
      const double end = piece_end(j);
      if (p.curvature > 0.0) {
        const double cross = p.start + (v - p.slope) / p.curvature;
        if (cross < end) return ExtReal::finite(cross);
      }
      if (end == kInf) return ExtReal::infinity();
      x = end;
    }
    return ExtReal::finite(x);
  }
  ExtReal derivative_lower_inverse(double, double v) const override {
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
      const auto& p = pieces_[j];
      if (p.slope >= v) return ExtReal::finite(p.start);
      if (p.curvature > 0.0) {
        const double cross = p.start + (v - p.slope) / p.curvature;
        if (cross < piece_end(j)) return ExtReal::finite(cross);
      }
    }
    return bound_;
  }

  std::optional<std::vector<Kink>> kinks(double) const override {
    std::vector<Kink> out;
    if (pieces_[0].slope > 0.0) out.push_back({0.0, ExtReal::finite(pieces_[0].slope)});
    for (std::size_t j = 1; j < pieces_.size(); ++j) {
      const double gap = pieces_[j].slope - end_slope(j - 1);
      if (gap > 0.0) out.push_back({pieces_[j].start, ExtReal::finite(gap)});
    }
    if (bound_.is_finite()) out.push_back({bound_.value(), ExtReal::infinity()});
    return out;
  }

  Delta2Info delta2() const override {
    if (bound_.is_finite()) return {false, std::nullopt};
    return {true, sampled_doubling_constant(*this, 2.0 * zero_bound(0.0))};
  }

  const std::vector<QuadPiece>& pieces() const { return pieces_; }
  ExtReal bound() const { return bound_; }

 private:
  std::size_t piece_at(double u) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), u,
                               [](double x, const QuadPiece& p) { return x < p.start; });
    return static_cast<std::size_t>(it - pieces_.begin()) - 1;
  }
  double piece_end(std::size_t j) const {
    if (j + 1 < pieces_.size()) return pieces_[j + 1].start;
    return bound_.is_finite() ? bound_.value() : kInf;
  }
  double end_slope(std::size_t j) const {
    const double end = piece_end(j);
    if (end == kInf) return pieces_[j].curvature > 0.0 ? kInf : pieces_[j].slope;
    return pieces_[j].slope + pieces_[j].curvature * (end - pieces_[j].start);
  }

  std::vector<QuadPiece> pieces_;
  ExtReal bound_;
  std::string tag_;
};

std::string conjugate_tag(const std::vector<QuadPiece>& pieces, ExtReal bound) {
  if (pieces.size() != 1 || pieces[0].curvature != 0.0) return "plq";
  if (bound.is_finite() && pieces[0].slope == 0.0) return "indicator";
  if (bound.is_infinite()) return "linear";
  return "plq";
}

// Legendre transform of a convex piecewise quadratic. Walking the derivative graph in increasing v:
// a quadratic piece maps to a quadratic piece with reciprocal curvature, a linear piece maps to a kink,
// a kink maps to a linear piece, and a finite bound maps to a final linear ray of slope b.
std::shared_ptr<const Family> PiecewiseQuadratic::analytic_conjugate() const {
  struct Seg {
    double start;
    double end;
    double u_at_start;
    double curvature;
  };
  std::vector<Seg> segs;
  auto push = [&segs](double s, double e, double u, double c) {
    if (e > s) segs.push_back({s, e, u, c});
  };
  push(0.0, pieces_[0].slope, 0.0, 0.0);
  ExtReal dual_bound = ExtReal::infinity();
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    const auto& p = pieces_[j];
    const double end = piece_end(j);
    const double es = end_slope(j);
    if (p.curvature > 0.0) push(p.slope, es, p.start, 1.0 / p.curvature);
    if (j + 1 < pieces_.size()) {
      push(es, pieces_[j + 1].slope, end, 0.0);
    } else if (bound_.is_finite()) {
      push(es, kInf, bound_.value(), 0.0);
    } else if (p.curvature == 0.0) {
      dual_bound = ExtReal::finite(p.slope);
    }
  }
  std::vector<QuadPiece> dual;
  for (const auto& s : segs) dual.push_back({s.start, s.u_at_start, s.curvature, 0.0});
  if (dual.empty() || dual[0].start != 0.0) throw InputError("plq conjugate: degenerate generator");
  auto tag = conjugate_tag(dual, dual_bound);
  return std::make_shared<PiecewiseQuadratic>(std::move(dual), dual_bound, std::move(tag));
}

// ---------------------------------------------------------------------- truncation and restriction

class Restricted;

class Truncated final : public Family {
 public:
  Truncated(std::shared_ptr<const Family> base, double n) : base_(std::move(base)), n_(n) {
    if (!(n_ > 0.0)) throw InputError("truncate: n must be positive");
  }
  std::string name() const override { return "truncated"; }
  std::string parameters() const override { return "n=" + fmt(n_) + ", base=" + base_->name() + "(" + base_->parameters() + ")"; }

  ExtReal value(double t, double u) const override {
    const ExtReal un = knee(t);
    if (un.is_infinite() || u <= un.value()) return base_->value(t, u);
    return base_->value(t, un.value()) + ExtReal::saturating(n_ * (u - un.value()));
  }
  ExtReal left_derivative(double t, double u) const override {
    if (u == 0.0) return ExtReal{};
    return min(base_->left_derivative(t, u), ExtReal::finite(n_));
  }
  ExtReal right_derivative(double t, double u) const override {
    return min(base_->right_derivative(t, u), ExtReal::finite(n_));
  }
  double zero_bound(double t) const override { return base_->zero_bound(t); }
  ExtReal domain_bound(double) const override { return ExtReal::infinity(); }
  Capabilities capabilities() const override {
    const auto bc = base_->capabilities();
    std::optional<std::string> conj;
    if (bc.analytic_conjugate) conj = "restricted";
    return {true, bc.differentiable && bc.finite_valued, conj, bc.numeric};
  }
  std::shared_ptr<const Family> analytic_conjugate() const override;

  ExtReal derivative_upper_inverse(double t, double v) const override {
    if (v >= n_) return ExtReal::infinity();
    return base_->derivative_upper_inverse(t, v);
  }
  ExtReal derivative_lower_inverse(double t, double v) const override {
    if (v > n_) return ExtReal::infinity();
    return base_->derivative_lower_inverse(t, v);
  }
  std::optional<std::vector<Kink>> kinks(double t) const override {
    auto bk = base_->kinks(t);
    if (!bk) return std::nullopt;
    const ExtReal un = knee(t);
    std::vector<Kink> out;
    for (const auto& k : *bk) {
      if (!(k.x < un)) break;
      const ExtReal hi = right_derivative(t, k.x);
      const ExtReal lo = (k.x == 0.0) ? ExtReal{} : left_derivative(t, k.x);
      const double gap = hi.value() - lo.value();
      if (gap > 0.0) out.push_back({k.x, ExtReal::finite(gap)});
    }
    if (un.is_finite() && un.value() > 0.0) {
      const double gap = right_derivative(t, un.value()).value() - left_derivative(t, un.value()).value();
      if (gap > 0.0) out.push_back({un.value(), ExtReal::finite(gap)});
    }
    return out;
  }
  Delta2Info delta2() const override { return {true, sampled_doubling_constant(*this, 2.0 * zero_bound(0.5))}; }

  const std::shared_ptr<const Family>& base() const { return base_; }
  double n() const { return n_; }

 private:
  // u_n = sup{x : Phi'_-(x) <= n}; the truncation is linear with slope n beyond it.
  ExtReal knee(double t) const { return base_->derivative_upper_inverse(t, n_); }

  std::shared_ptr<const Family> base_;
  double n_;
};

class Restricted final : public Family {
 public:
  Restricted(std::shared_ptr<const Family> base, double cap) : base_(std::move(base)), cap_(cap) {
    if (!(cap_ > 0.0)) throw InputError("restrict: cap must be positive");
  }
  std::string name() const override { return "restricted"; }
  std::string parameters() const override { return "cap=" + fmt(cap_) + ", base=" + base_->name() + "(" + base_->parameters() + ")"; }

  ExtReal value(double t, double u) const override {
    if (u > bound(t)) return ExtReal::infinity();
    return base_->value(t, u);
  }
  ExtReal left_derivative(double t, double u) const override {
    if (u > bound(t)) return ExtReal::infinity();
    return base_->left_derivative(t, u);
  }
  ExtReal right_derivative(double t, double u) const override {
    if (u >= bound(t)) return ExtReal::infinity();
    return base_->right_derivative(t, u);
  }
  double zero_bound(double t) const override { return std::min(base_->zero_bound(t), bound(t)); }
  ExtReal domain_bound(double t) const override { return ExtReal::finite(bound(t)); }
  Capabilities capabilities() const override {
    std::optional<std::string> conj;
    if (base_->capabilities().analytic_conjugate) conj = "truncated";
    return {false, false, conj, base_->capabilities().numeric};
  }
  std::shared_ptr<const Family> analytic_conjugate() const override {
    auto bc = base_->analytic_conjugate();
    if (!bc) return nullptr;
    return std::make_shared<Truncated>(std::move(bc), cap_);
  }
  ExtReal derivative_upper_inverse(double t, double v) const override {
    return min(base_->derivative_upper_inverse(t, v), ExtReal::finite(bound(t)));
  }
  ExtReal derivative_lower_inverse(double t, double v) const override {
    return min(base_->derivative_lower_inverse(t, v), ExtReal::finite(bound(t)));
  }
  std::optional<std::vector<Kink>> kinks(double t) const override {
    auto bk = base_->kinks(t);
    if (!bk) return std::nullopt;
    std::vector<Kink> out;
    for (const auto& k : *bk)
      if (k.x < bound(t)) out.push_back(k);
    out.push_back({bound(t), ExtReal::infinity()});
    return out;
  }
  Delta2Info delta2() const override { return {false, std::nullopt}; }

 private:
  double bound(double t) const {
    const ExtReal b = base_->domain_bound(t);
    return b.is_finite() ? std::min(b.value(), cap_) : cap_;
  }

  std::shared_ptr<const Family> base_;
  double cap_;
};

std::shared_ptr<const Family> Truncated::analytic_conjugate() const {
  auto bc = base_->analytic_conjugate();
  if (!bc) return nullptr;
  return std::make_shared<Restricted>(std::move(bc), n_);
}

}  // namespace

namespace gen {

OrliczGenerator power(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InputError("power: p must be a finite real > 1");
  return OrliczGenerator(
      std::make_shared<PowerLaw>(Profile::constant(1.0 / p), Profile::constant(p), "power", "power"));
}

OrliczGenerator variable_exponent(Profile p) {
  return OrliczGenerator(std::make_shared<PowerLaw>(Profile::constant(1.0), std::move(p), "varexp", "varexp_conjugate"));
}

OrliczGenerator power_law(Profile coefficient, Profile exponent, std::string tag) {
  std::string conj = tag + "_conjugate";
  return OrliczGenerator(std::make_shared<PowerLaw>(std::move(coefficient), std::move(exponent), std::move(tag), conj));
}

OrliczGenerator exp_minus_one() { return OrliczGenerator(std::make_shared<ExpMinusOne>()); }
OrliczGenerator entropy() { return OrliczGenerator(std::make_shared<Entropy>()); }

OrliczGenerator linear(double slope) {
  if (!(slope > 0.0)) throw InputError("linear: slope must be positive");
  return piecewise_quadratic({{0.0, slope, 0.0, 0.0}}, ExtReal::infinity(), "linear");
}

OrliczGenerator indicator(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InputError("indicator: threshold must be a finite real > 0");
  return piecewise_quadratic({{0.0, 0.0, 0.0, 0.0}}, ExtReal::finite(c), "indicator");
}

OrliczGenerator piecewise_quadratic(std::vector<QuadPiece> pieces, ExtReal bound, std::string tag) {
  return OrliczGenerator(std::make_shared<PiecewiseQuadratic>(std::move(pieces), bound, std::move(tag)));
}

OrliczGenerator kinked_quadratic_linear() {
  return piecewise_quadratic({{0.0, 0.0, 1.0, 0.0}, {1.0, 2.0, 0.0, 0.0}});
}

OrliczGenerator kinked_quadratic() { return piecewise_quadratic({{0.0, 0.0, 1.0, 0.0}, {1.0, 2.0, 1.0, 0.0}}); }

OrliczGenerator truncated(const OrliczGenerator& base, double n) {
  return OrliczGenerator(std::make_shared<Truncated>(base.shared(), n));
}

OrliczGenerator restricted(const OrliczGenerator& base, double cap) {
  return OrliczGenerator(std::make_shared<Restricted>(base.shared(), cap));
}

}  // namespace gen
}  // namespace mo
