#include "mo/duality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mo/conjugate.hpp"
#include "mo/core.hpp"
#include "mo/detail/search.hpp"
#include "mo/errors.hpp"
#include "mo/kernels.hpp"
#include "mo/norms.hpp"
#include "mo/tolerance.hpp"
#include "dual_grid.hpp"

namespace mo {

using namespace dual_grid;

BruteForceResult orlicz_norm_bruteforce(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                        const SimpleFunction& u, int resolution, Execution exec) {
  require_same_space(space, u);
  check_oracle_scale(space, resolution);
  if (u.is_zero()) return {0.0, SimpleFunction::zero(space)};
  const OrliczGenerator star = conjugate(gen);
  const auto supp = support_indices(u);
  const std::size_t m = supp.size();

  std::vector<AtomGrid> atoms(m);
  for (std::size_t j = 0; j < m; ++j) {
    auto& a = atoms[j];
    a.t = space[supp[j]].t;
    a.w = space[supp[j]].w;
    a.gain = a.w * std::fabs(u[supp[j]]);
    a.vmax = single_atom_cap(star, a);
    a.mag = magnitude_grid(a.vmax, resolution);
    for (double v : a.mag) a.cost.push_back(cost_of(star, a, v));
  }

  // Enumerate every atom but the last; the last takes the largest feasible magnitude.
  std::size_t combos = 1;
  for (std::size_t j = 0; j + 1 < m; ++j) combos *= atoms[j].mag.size();
  auto decode = [&](std::size_t idx, std::vector<std::size_t>& pos) {
    for (std::size_t j = 0; j + 1 < m; ++j) {
      pos[j] = idx % atoms[j].mag.size();
      idx /= atoms[j].mag.size();
    }
  };
  auto score = [&](std::size_t idx) {
    std::vector<std::size_t> pos(m);
    decode(idx, pos);
    double used = 0.0;
    double gain = 0.0;
    for (std::size_t j = 0; j + 1 < m; ++j) {
      used += atoms[j].cost[pos[j]];
      gain += atoms[j].gain * atoms[j].mag[pos[j]];
    }
    if (!(used <= 1.0)) return -1.0;
    const double last = grid_slack(atoms[m - 1], 1.0 - used);
    return gain + atoms[m - 1].gain * last;
  };
  const auto best = scan(exec, combos, score);

  std::vector<std::size_t> pos(m);
  decode(best.index, pos);
  std::vector<double> mags(m);
  for (std::size_t j = 0; j + 1 < m; ++j) mags[j] = atoms[j].mag[pos[j]];

  auto evaluate = [&](const std::vector<double>& x) {
    double used = 0.0;
    double gain = 0.0;
    for (std::size_t j = 0; j + 1 < m; ++j) {
      used += cost_of(star, atoms[j], x[j]);
      gain += atoms[j].gain * x[j];
    }
    const double last = exact_slack(star, atoms[m - 1], 1.0 - used);
    if (last < 0.0) return std::pair{-1.0, 0.0};
    return std::pair{gain + atoms[m - 1].gain * last, last};
  };

  // Coordinatewise golden polish; the objective is concave along each coordinate.
  for (std::size_t j = 0; j + 1 < m; ++j) {
    auto along = [&](double x) {
      auto trial = mags;
      trial[j] = x;
      return evaluate(trial).first;
    };
    const auto [arg, val] = detail::golden_max(along, 0.0, atoms[j].vmax, 1e-12);
    if (val >= evaluate(mags).first) mags[j] = arg;
  }
  const auto [value, last] = evaluate(mags);
  mags[m - 1] = last;
  return {std::max(value, 0.0), density_from(space, u, supp, mags)};
}

BruteForceResult luxemburg_norm_bruteforce(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                           const SimpleFunction& u, int resolution, Execution exec) {
  require_same_space(space, u);
  check_oracle_scale(space, resolution);
  if (u.is_zero()) return {0.0, SimpleFunction::zero(space)};
  const OrliczGenerator star = conjugate(gen);
  const auto supp = support_indices(u);
  const std::size_t m = supp.size();
  const std::size_t per_angle = static_cast<std::size_t>(resolution) + 1;
  std::size_t combos = 1;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    combos *= per_angle;
    if (combos > 2000000) throw InputError("luxemburg oracle: resolution too high for this many support atoms");
  }

  // Direction on the positive orthant of the unit sphere from m-1 angles in [0, pi/2].
  auto direction = [&](const std::vector<double>& angles) {
    std::vector<double> x(m);
    double r = 1.0;
    for (std::size_t j = 0; j + 1 < m; ++j) {
      x[j] = r * std::cos(angles[j]);
      r *= std::sin(angles[j]);
    }
    x[m - 1] = r;
    for (auto& xi : x) xi = std::max(xi, 0.0);
    return x;
  };
  auto ratio = [&](const std::vector<double>& angles) {
    const auto x = direction(angles);
    const SimpleFunction v = density_from(space, u, supp, x);
    if (v.is_zero()) return -1.0;
    const double nv = orlicz_amemiya_norm(star, space, v).value;
    if (!(nv > 0.0)) return -1.0;
    return pairing(space, u, v) / nv;
  };
  auto angles_of = [&](std::size_t idx) {
    std::vector<double> a(m - 1);
    for (std::size_t j = 0; j + 1 < m; ++j) {
      a[j] = 0.5 * std::numbers::pi * static_cast<double>(idx % per_angle) / resolution;
      idx /= per_angle;
    }
    return a;
  };
  const auto best = scan(exec, combos, [&](std::size_t idx) { return ratio(angles_of(idx)); });
  auto angles = angles_of(best.index < combos ? best.index : 0);
  double value = best.value;

  const double step = 0.5 * std::numbers::pi / resolution;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    auto along = [&](double a) {
      auto trial = angles;
      trial[j] = a;
      return ratio(trial);
    };
    const double lo = std::max(0.0, angles[j] - step);
    const double hi = std::min(0.5 * std::numbers::pi, angles[j] + step);
    const auto [arg, val] = detail::golden_max(along, lo, hi, 1e-12);
    if (val > value) {
      value = val;
      angles[j] = arg;
    }
  }
  // Scale the maximizing direction onto the unit sphere of the conjugate Amemiya norm.
  const auto x = direction(angles);
  SimpleFunction v = density_from(space, u, supp, x);
  const double nv = orlicz_amemiya_norm(star, space, v).value;
  return {std::max(value, 0.0), v.scaled(1.0 / nv)};
}

double holder_gap(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u,
                  const SimpleFunction& v) {
  require_same_space(space, u);
  require_same_space(space, v);
  const double lu = luxemburg_norm(gen, space, u);
  const double nv = v.is_zero() ? 0.0 : orlicz_amemiya_norm(conjugate(gen), space, v).value;
  return lu * nv - std::fabs(pairing(space, u, v));
}

double dual_functional_norm(const OrliczGenerator& gen, const GridMeasureSpace& space, const DualDensity& d) {
  require_same_space(space, d.v);
  if (!(d.s_norm >= 0.0) || !std::isfinite(d.s_norm)) throw InputError("dual_functional_norm: s_norm must be >= 0");
  if (d.v.is_zero() && d.s_norm == 0.0) return 0.0;
  const OrliczGenerator star = conjugate(gen);
  auto feasible = [&](double lambda) {
    const ExtReal i = modular(star, space, d.v.scaled(1.0 / lambda));
    return i + ExtReal::finite(d.s_norm / lambda) <= 1.0;
  };
  auto br = detail::find_bracket(feasible, 1.0, "dual_functional_norm");
  br = detail::bisect(feasible, br.below, br.above, kBisectRelTol);
  return br.above;
}

TruncationSequence truncated_norm_sequence(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                           const SimpleFunction& u, const std::vector<double>& n_list) {
  require_same_space(space, u);
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    if (!(n_list[j] > 0.0)) throw InputError("truncated_norm_sequence: n values must be positive");
    if (j > 0 && !(n_list[j] > n_list[j - 1])) throw InputError("truncated_norm_sequence: n_list must be increasing");
  }
  TruncationSequence out;
  out.limit = luxemburg_norm(gen, space, u);
  for (double n : n_list) {
    const double v = luxemburg_norm(truncate(gen, n), space, u);
    if (!out.steps.empty() && v < out.steps.back().norm) out.nondecreasing = false;
    out.steps.push_back({n, v});
  }
  out.final_gap = out.steps.empty() ? out.limit : out.limit - out.steps.back().norm;
  return out;
}

}  // namespace mo
