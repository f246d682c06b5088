#include "mo/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mo/conjugate.hpp"
#include "mo/core.hpp"
#include "mo/detail/search.hpp"
#include "mo/errors.hpp"
#include "mo/tolerance.hpp"

namespace mo {
namespace {

std::vector<double> abs_scaled(const SimpleFunction& u, double c) {
  std::vector<double> m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) m[i] = std::fabs(u[i]) * c;
  return m;
}

}  // namespace

double luxemburg_norm(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u) {
  require_same_space(space, u);
  if (u.is_zero()) return 0.0;
  auto feasible = [&](double lambda) { return modular_raw(gen, space, abs_scaled(u, 1.0 / lambda)) <= 1.0; };
  auto br = detail::find_bracket(feasible, 1.0, "luxemburg_norm");
  br = detail::bisect(feasible, br.below, br.above, kBisectRelTol);
  return br.above;
}

ExtReal derivative_modular(const OrliczGenerator& gen, const OrliczGenerator& star, const GridMeasureSpace& space,
                           const SimpleFunction& u, double k) {
  ExtReal sum{};
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!u.in_support(i)) continue;
    const double t = space[i].t;
    const ExtReal d = gen.right_derivative(t, k * std::fabs(u[i]));
    sum += space[i].w * star.value(t, d);
    if (sum.is_infinite()) break;
  }
  return sum;
}

KSet k_interval(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u) {
  require_same_space(space, u);
  if (u.is_zero()) throw DomainError("k_interval: undefined for u = 0");
  const OrliczGenerator star = conjugate(gen);

  // Degenerate branch: I_{Phi*}(b_{Phi*} chi_supp) <= 1.
  ExtReal at_bound{};
  double l1 = 0.0;
  for (std::size_t i = 0; i < u.size() && at_bound.is_finite(); ++i) {
    if (!u.in_support(i)) continue;
    const double t = space[i].t;
    const ExtReal bstar = star.domain_bound(t);
    if (bstar.is_infinite()) {
      at_bound = ExtReal::infinity();
      break;
    }
    at_bound += space[i].w * star.value(t, bstar.value());
    l1 += space[i].w * std::fabs(u[i]) * bstar.value();
  }
  if (at_bound <= 1.0) return KDegenerate{l1};

  auto reaches = [&](double k) { return derivative_modular(gen, star, space, u, k) >= 1.0; };
  auto exceeds = [&](double k) { return derivative_modular(gen, star, space, u, k) > 1.0; };
  auto b1 = detail::find_bracket(reaches, 1.0, "k_interval (k*)");
  b1 = detail::bisect(reaches, b1.below, b1.above, kBisectRelTol);
  auto b2 = detail::find_bracket(exceeds, 1.0, "k_interval (k**)");
  b2 = detail::bisect(exceeds, b2.below, b2.above, kBisectRelTol);
  // Both ends are taken on the side where I_{Phi*} has not yet passed the level, so k u stays inside the
  // effective domain of Phi.
  return KNonEmpty{std::min(b1.below, b2.below), std::max(b1.below, b2.below)};
}

ExtReal amemiya_objective(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u,
                          double k) {
  if (!(k > 0.0)) throw DomainError("amemiya_objective: k must be > 0");
  return (1.0 / k) * (ExtReal::finite(1.0) + modular_raw(gen, space, abs_scaled(u, k)));
}

AmemiyaResult orlicz_amemiya_norm(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u) {
  require_same_space(space, u);
  if (u.is_zero()) return {0.0, std::nullopt};
  KSet ks = k_interval(gen, space, u);
  if (const auto* d = std::get_if<KDegenerate>(&ks)) return {d->l1_value, ks};
  const auto& ne = std::get<KNonEmpty>(ks);
  ExtReal v = amemiya_objective(gen, space, u, ne.k_star);
  if (v.is_infinite()) v = amemiya_objective(gen, space, u, ne.k_star * (1.0 - 1e-12));
  if (v.is_infinite()) throw BracketError("orlicz_amemiya_norm: objective infinite at k*");
  return {v.value(), ks};
}

double theta(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u) {
  require_same_space(space, u);
  double th = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!u.in_support(i)) continue;
    const ExtReal b = gen.domain_bound(space[i].t);
    if (b.is_infinite()) continue;
    if (b.value() == 0.0) throw DomainError("theta: b_Phi = 0 on the support of u (atom " + std::to_string(i) + ")");
    th = std::max(th, std::fabs(u[i]) / b.value());
  }
  return th;
}

double theta_by_bisection(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u) {
  require_same_space(space, u);
  if (u.is_zero()) return 0.0;
  auto finite = [&](double lambda) { return modular_raw(gen, space, abs_scaled(u, 1.0 / lambda)).is_finite(); };
  // Finite at every scale: look for the threshold down to the smallest representable ratio.
  double lo = 1.0;
  for (int i = 0; i < 1000 && finite(lo); ++i) {
    lo *= 0.5;
    if (lo < 1e-300) return 0.0;
  }
  auto br = detail::find_bracket(finite, std::max(lo, 1e-300), "theta");
  br = detail::bisect(finite, br.below, br.above, kBisectRelTol);
  return br.above;
}

Delta2Verdict delta2_check(const OrliczGenerator& gen, const GridMeasureSpace& space, double K, const SimpleFunction& f,
                           const Delta2Options& options) {
  require_same_space(space, f);
  if (!(K > 1.0)) throw InputError("delta2_check: K must exceed 1");
  for (double x : f.values())
    if (!(x >= 0.0)) throw InputError("delta2_check: threshold f must be >= 0");
  if (modular(gen, space, f).is_infinite()) throw DomainError("delta2_check: I_Phi(f) is infinite");

  Delta2Verdict verdict;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double t = space[i].t;
    const double fi = f[i];
    std::vector<double> us{fi};
    for (int j = options.lowest_power;; ++j) {
      const double u = 1.5 * std::ldexp(1.0, j);
      if (u > options.horizon) break;
      if (u >= fi) us.push_back(u);
    }
    const ExtReal b = gen.domain_bound(t);
    if (b.is_finite()) {
      for (double u : {0.5 * b.value(), 0.5 * b.value() * (1.0 + 1e-9), b.value()})
        if (u >= fi) us.push_back(u);
    }
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    for (double u : us) {
      ++verdict.samples;
      const ExtReal pu = gen.value(t, u);
      if (pu.is_infinite()) continue;
      const ExtReal p2 = gen.value(t, 2.0 * u);
      const ExtReal rhs = K * pu;
      const bool bad = p2.is_infinite() || p2.value() > rhs.value() * (1.0 + 1e-12);
      if (bad) {
        verdict.holds = false;
        verdict.t = t;
        verdict.u = u;
        verdict.lhs = p2;
        verdict.rhs = rhs;
        verdict.ratio = (p2.is_infinite() || pu.value() == 0.0) ? std::numeric_limits<double>::infinity()
                                                                 : p2.value() / pu.value();
        return verdict;
      }
    }
  }
  return verdict;
}

}  // namespace mo
