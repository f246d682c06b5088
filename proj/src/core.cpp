#include "mo/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mo/errors.hpp"
#include "mo/kernels.hpp"

namespace mo {

ExtReal eval_phi(const OrliczGenerator& gen, double t, double u) {
  if (!(u >= 0.0)) throw DomainError("eval_phi: u must be >= 0");
  return gen.value(t, u);
}

Subdifferential subdiff(const OrliczGenerator& gen, double t, double u) {
  if (!(u >= 0.0)) throw DomainError("subdiff: u must be >= 0");
  const ExtReal b = gen.domain_bound(t);
  if (b < u) throw DomainError("subdiff: u = " + std::to_string(u) + " lies outside the effective domain [0, " + b.str() + "]");
  return {gen.left_derivative(t, u), gen.right_derivative(t, u)};
}

GeneratorBounds generator_bounds(const OrliczGenerator& gen, double t) {
  return {gen.zero_bound(t), gen.domain_bound(t)};
}

ExtReal modular_raw(const OrliczGenerator& gen, const GridMeasureSpace& space, const std::vector<double>& mags) {
  if (mags.size() != space.size()) throw InputError("modular: value count does not match atom count");
  if (space.size() >= kernels::kParallelThreshold) return kernels::weighted_phi_sum_parallel(gen, space, mags);
  return kernels::weighted_phi_sum_serial(gen, space, mags);
}

ExtReal modular(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u) {
  require_same_space(space, u);
  std::vector<double> mags(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) mags[i] = std::fabs(u[i]);
  return modular_raw(gen, space, mags);
}

OrliczGenerator truncate(const OrliczGenerator& gen, double n) { return gen::truncated(gen, n); }

std::vector<double> default_sample_grid(const OrliczGenerator& gen, const GridMeasureSpace& space) {
  double cap = std::numeric_limits<double>::infinity();
  for (const auto& a : space.atoms()) {
    const ExtReal b = gen.domain_bound(a.t);
    if (b.is_finite()) cap = std::min(cap, b.value());
  }
  std::vector<double> grid{0.0};
  for (int j = 0; j < 49; ++j) {
    const double u = 1e-3 * std::pow(1e5, j / 48.0);
    grid.push_back(std::isfinite(cap) ? cap * u / 1e2 : u);
  }
  return grid;
}

namespace {

std::string show(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::vector<Violation> validate_generator(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                          const std::vector<double>& sample_grid) {
  std::vector<Violation> out;
  std::vector<double> grid;
  for (double u : sample_grid)
    if (u >= 0.0 && std::isfinite(u)) grid.push_back(u);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  for (const auto& atom : space.atoms()) {
    const double t = atom.t;
    const ExtReal b = gen.domain_bound(t);
    std::vector<double> pts = grid;
    if (b.is_finite()) pts.push_back(b.value());
    std::sort(pts.begin(), pts.end());
    std::vector<ExtReal> val(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) val[j] = gen.value(t, pts[j]);

    if (!(gen.value(t, 0.0) == 0.0)) out.push_back({"zero", t, {0.0}, "Phi(t,0) != 0"});

    for (std::size_t j = 0; j + 1 < pts.size(); ++j)
      if (val[j + 1] < val[j])
        out.push_back({"monotone", t, {pts[j], pts[j + 1]}, "Phi decreases: " + val[j].str() + " > " + val[j + 1].str()});

    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (val[i].is_infinite() || val[j].is_infinite()) continue;
        const double m = 0.5 * (pts[i] + pts[j]);
        const ExtReal vm = gen.value(t, m);
        if (vm.is_infinite()) continue;
        const double avg = 0.5 * (val[i].value() + val[j].value());
        if (vm.value() > avg + 1e-12 * std::max(1.0, avg)) {
          out.push_back({"convexity", t, {pts[i], m, pts[j]},
                         "Phi(mid) = " + show(vm.value()) + " exceeds chord " + show(avg)});
          i = pts.size();
          break;
        }
      }
    }

    const ExtReal near0 = gen.value(t, 1e-12);
    if (near0.is_infinite() || near0.value() > 1e-4)
      out.push_back({"right-continuity", t, {1e-12}, "Phi(t,1e-12) = " + near0.str()});

    if (b.is_infinite()) {
      const ExtReal far = gen.value(t, 1e12);
      if (far.is_finite() && far.value() <= 0.0) out.push_back({"growth", t, {1e12}, "Phi stays 0"});
    } else {
      const double bb = b.value();
      const ExtReal at = gen.value(t, bb);
      const ExtReal before = gen.value(t, bb * (1.0 - 1e-9));
      if (at.is_finite()) {
        if (before.is_infinite() || std::fabs(before.value() - at.value()) > 1e-6 * (1.0 + at.value()))
          out.push_back({"lsc", t, {bb}, "left limit " + before.str() + " vs Phi(b) = " + at.str()});
      } else if (before.is_finite() && before.value() < 1e6) {
        out.push_back({"lsc", t, {bb}, "Phi(b) infinite but left limit " + before.str()});
      }
    }

    ExtReal prev_hi{};
    for (double u : pts) {
      if (b < u) break;
      const ExtReal lo = gen.left_derivative(t, u);
      const ExtReal hi = gen.right_derivative(t, u);
      const double slack = 1e-9 * std::max(1.0, lo.to_double() == lo.to_double() ? std::min(lo.to_double(), 1e300) : 1.0);
      if (lo.is_finite() && hi.is_finite() && lo.value() > hi.value() + slack)
        out.push_back({"derivative", t, {u}, "Phi'_- = " + lo.str() + " > Phi'_+ = " + hi.str()});
      else if (lo.is_infinite() && hi.is_finite())
        out.push_back({"derivative", t, {u}, "Phi'_- infinite but Phi'_+ finite"});
      if (prev_hi.is_finite() && lo.is_finite() && lo.value() + slack < prev_hi.value())
        out.push_back({"derivative", t, {u}, "derivative decreases"});
      prev_hi = hi;
    }
  }
  return out;
}

}  // namespace mo
