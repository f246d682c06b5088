#pragma once

// Shared pieces of the grid searches over dual densities.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "mo/detail/search.hpp"
#include "mo/duality.hpp"
#include "mo/errors.hpp"
#include "mo/kernels.hpp"

namespace mo::dual_grid {

inline kernels::ScanBest scan(Execution exec, std::size_t count, const std::function<double(std::size_t)>& score) {
  return exec == Execution::parallel ? kernels::argmax_scan_parallel(count, score)
                                     : kernels::argmax_scan_serial(count, score);
}

inline std::vector<std::size_t> support_indices(const SimpleFunction& u) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.in_support(i)) s.push_back(i);
  return s;
}

inline void check_oracle_scale(const GridMeasureSpace& space, int resolution) {
  if (space.size() > kOracleMaxAtoms)
    throw InputError("oracle: " + std::to_string(space.size()) + " atoms exceed the oracle limit of " +
                     std::to_string(kOracleMaxAtoms));
  if (resolution < 2) throw InputError("oracle: resolution must be >= 2");
}

// One support atom of the modular-constrained search: magnitudes on a grid with precomputed costs
// w Phi*(t, v).
struct AtomGrid {
  double t = 0.0;
  double w = 0.0;
  double gain = 0.0;  ///< w |u|
  double vmax = 0.0;
  std::vector<double> mag;
  std::vector<double> cost;
};

inline double cost_of(const OrliczGenerator& star, const AtomGrid& a, double v) {
  const ExtReal c = star.value(a.t, v);
  return c.is_infinite() ? std::numeric_limits<double>::infinity() : a.w * c.value();
}

// Largest magnitude a single atom can carry with cost <= 1.
inline double single_atom_cap(const OrliczGenerator& star, const AtomGrid& a) {
  const ExtReal b = star.domain_bound(a.t);
  auto over = [&](double v) { return cost_of(star, a, v) > 1.0; };
  if (b.is_finite() && !over(b.value())) return b.value();
  detail::Bracket br;
  if (b.is_finite()) {
    br = {0.0, b.value()};
  } else {
    br = detail::find_bracket(over, 1.0, "oracle magnitude cap");
  }
  br = detail::bisect(over, br.below, br.above, 1e-14);
  return br.below;
}

// Largest v in [0, vmax] with cost <= budget (feasible end of a bisection).
inline double exact_slack(const OrliczGenerator& star, const AtomGrid& a, double budget) {
  if (budget < 0.0) return -1.0;
  if (cost_of(star, a, a.vmax) <= budget) return a.vmax;
  auto over = [&](double v) { return cost_of(star, a, v) > budget; };
  const auto br = detail::bisect(over, 0.0, a.vmax, 1e-14);
  return br.below;
}

// Grid estimate of exact_slack: chord interpolation of the convex cost stays feasible.
inline double grid_slack(const AtomGrid& a, double budget) {
  if (budget < 0.0) return -1.0;
  const auto it = std::upper_bound(a.cost.begin(), a.cost.end(), budget);
  const auto idx = static_cast<std::size_t>(it - a.cost.begin());
  if (idx == 0) return 0.0;
  if (idx == a.cost.size()) return a.mag.back();
  const double c0 = a.cost[idx - 1];
  const double c1 = a.cost[idx];
  if (!std::isfinite(c1) || c1 <= c0) return a.mag[idx - 1];
  return a.mag[idx - 1] + (a.mag[idx] - a.mag[idx - 1]) * (budget - c0) / (c1 - c0);
}

inline std::vector<double> magnitude_grid(double vmax, int resolution) {
  std::vector<double> g{0.0, vmax};
  const int half = std::max(1, resolution / 2);
  for (int j = 0; j < half; ++j) g.push_back(vmax * j / half);
  for (int j = 0; j < resolution - half; ++j) g.push_back(vmax * std::pow(1e-6, 1.0 - static_cast<double>(j) / (resolution - half)));
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

inline SimpleFunction density_from(const GridMeasureSpace& space, const SimpleFunction& u, const std::vector<std::size_t>& supp,
                            const std::vector<double>& mags) {
  std::vector<double> v(space.size(), 0.0);
  for (std::size_t j = 0; j < supp.size(); ++j) v[supp[j]] = sgn(u[supp[j]]) * mags[j];
  return SimpleFunction(space, std::move(v));
}

}  // namespace mo::dual_grid
