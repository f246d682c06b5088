#include "mo/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mo/detail/conjugate_sup.hpp"
#include "mo/errors.hpp"

namespace mo {

OrliczGenerator conjugate(const OrliczGenerator& gen) {
  if (auto c = gen.analytic_conjugate()) return OrliczGenerator(std::move(c));
  return gen::numeric_conjugate(gen);
}

YoungGap young_gap(const OrliczGenerator& gen, double t, double u, double v) {
  if (!(u >= 0.0) || !(v >= 0.0)) throw DomainError("young_gap: arguments must be >= 0");
  const ExtReal a = gen.value(t, u);
  const ExtReal b = conjugate(gen).value(t, v);
  if (a.is_infinite() || b.is_infinite()) return {std::numeric_limits<double>::infinity(), true};
  return {a.value() + b.value() - u * v, false};
}

double biconjugate_residual(const OrliczGenerator& gen, double t, const std::vector<double>& u_grid) {
  const OrliczGenerator star = conjugate(gen);
  double worst = 0.0;
  for (double u : u_grid) {
    const ExtReal direct = gen.value(t, u);
    const ExtReal twice = detail::conjugate_sup(star.family(), t, u).value;
    if (direct.is_infinite() != twice.is_infinite()) return std::numeric_limits<double>::infinity();
    if (direct.is_finite()) worst = std::max(worst, std::fabs(direct.value() - twice.value()));
  }
  return worst;
}

}  // namespace mo
