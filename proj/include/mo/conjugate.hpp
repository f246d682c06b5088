#pragma once

#include <vector>

#include "mo/generator.hpp"

namespace mo {

/// Phi*. Closed form when the family has one, otherwise a numeric conjugate evaluated by golden section.
OrliczGenerator conjugate(const OrliczGenerator& gen);

/// Phi(t,u) + Phi*(t,v) - uv. Signed so rounding below zero stays visible; `infinite` when either term is.
struct YoungGap {
  double value = 0.0;
  bool infinite = false;
};
YoungGap young_gap(const OrliczGenerator& gen, double t, double u, double v);

/// max over the grid of |Phi**(t,u) - Phi(t,u)|, where Phi** is the numeric conjugate of conjugate(gen).
/// Infinite (IEEE) when finiteness disagrees at some grid point.
double biconjugate_residual(const OrliczGenerator& gen, double t, const std::vector<double>& u_grid);

}  // namespace mo
