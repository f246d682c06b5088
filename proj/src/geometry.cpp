#include "mo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dual_grid.hpp"
#include "mo/conjugate.hpp"
#include "mo/core.hpp"
#include "mo/detail/search.hpp"
#include "mo/errors.hpp"
#include "mo/tolerance.hpp"

namespace mo {
namespace {

// Relative half-width of the neighbourhood of k* over which subdifferentials are collected; k* itself is
// only known to kBisectRelTol, and a kink or the end of the domain may sit right next to it.
constexpr double kSelectBand = 1e-9;

struct Band {
  double lo = 0.0;
  ExtReal hi;
};

Band subdiff_band(const OrliczGenerator& gen, double t, double x, double rel) {
  if (x == 0.0) return {0.0, gen.right_derivative(t, 0.0)};
  const ExtReal lo = gen.left_derivative(t, x * (1.0 - rel));
  const ExtReal hi = gen.right_derivative(t, x * (1.0 + rel));
  return {lo.is_finite() ? lo.value() : std::numeric_limits<double>::max(), hi};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// Point on the band: lo + theta (hi - lo), or lo + theta/(1-theta) when hi is infinite.
double along(const Band& b, double theta) {
  if (b.hi.is_finite()) return b.lo + theta * (b.hi.value() - b.lo);
  if (theta >= 1.0) return std::numeric_limits<double>::max();
  return b.lo + theta / (1.0 - theta);
}

// Fills the atoms listed in `free` with a common theta so that I_{Phi*}(v) reaches 1 from below, keeping the
// entries already in `mags` for the other atoms. Returns the modular reached.
double fill_to_level(const OrliczGenerator& star, const GridMeasureSpace& space, const SimpleFunction& u,
                     const std::vector<std::size_t>& free, const std::vector<Band>& bands, std::vector<double>& mags) {
  auto build = [&](double theta) {
    auto m = mags;
    for (std::size_t j : free) m[j] = along(bands[j], theta);
    return m;
  };
  auto level = [&](const std::vector<double>& m) {
    std::vector<double> v(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) v[i] = std::fabs(m[i]);
    return modular_raw(star, space, v);
  };
  (void)u;
  const auto top = build(1.0);
  if (level(top) <= 1.0) {
    mags = top;
    return level(top).value();
  }
  const auto bottom = build(0.0);
  if (level(bottom) >= 1.0) {
    mags = bottom;
    return level(bottom).to_double();
  }
  auto over = [&](double theta) { return level(build(theta)) > 1.0; };
  const auto br = detail::bisect(over, 0.0, 1.0, 1e-15);
  mags = build(br.below);
  return level(mags).value();
}

SimpleFunction signed_density(const GridMeasureSpace& space, const SimpleFunction& u, const std::vector<double>& mags) {
  std::vector<double> v(mags.size());
  for (std::size_t i = 0; i < mags.size(); ++i) v[i] = (u[i] < 0.0 ? -1.0 : 1.0) * mags[i];
  return SimpleFunction(space, std::move(v));
}

ClauseStatus combine(ClauseStatus a, ClauseStatus b) {
  if (a == ClauseStatus::fail || b == ClauseStatus::fail) return ClauseStatus::fail;
  if (a == ClauseStatus::unverifiable || b == ClauseStatus::unverifiable) return ClauseStatus::unverifiable;
  return ClauseStatus::pass;
}

}  // namespace

std::string to_string(ClauseStatus s) {
  switch (s) {
    case ClauseStatus::pass: return "pass";
    case ClauseStatus::fail: return "fail";
    case ClauseStatus::unverifiable: return "unverifiable";
  }
  return "?";
}
std::string to_string(SmoothVerdict v) { return v == SmoothVerdict::smooth ? "Smooth" : "NotSmooth"; }
std::string to_string(KBranch b) { return b == KBranch::nonempty ? "KuNonEmpty" : "KuEmpty"; }

ExtReal derivative_gap(const OrliczGenerator& gen, double t, double x) {
  const ExtReal hi = gen.right_derivative(t, x);
  const ExtReal lo = x == 0.0 ? ExtReal{} : gen.left_derivative(t, x);
  if (hi.is_infinite()) return ExtReal::infinity();
  if (lo.is_infinite()) return ExtReal{};
  return ExtReal::finite(std::max(0.0, hi.value() - lo.value()));
}

SupportFunctional construct_support_functional(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                               const SimpleFunction& u) {
  require_same_space(space, u);
  if (u.is_zero()) throw DomainError("construct_support_functional: u = 0");
  const OrliczGenerator star = conjugate(gen);
  const KSet ks = k_interval(gen, space, u);
  SupportFunctional out{SimpleFunction::zero(space)};

  if (const auto* d = std::get_if<KDegenerate>(&ks)) {
    std::vector<double> v(u.size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u.in_support(i)) v[i] = sgn(u[i]) * star.domain_bound(space[i].t).value();
    out.v = SimpleFunction(space, std::move(v));
    out.degenerate = true;
    out.achieved = pairing(space, u, out.v);
    out.norm_value = dual_functional_norm(gen, space, {out.v, 0.0});
    (void)d;
    return out;
  }

  const double k = std::get<KNonEmpty>(ks).k_star;
  std::vector<Band> bands(u.size());
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!u.in_support(i)) continue;
    bands[i] = subdiff_band(gen, space[i].t, k * std::fabs(u[i]), kSelectBand);
    free.push_back(i);
  }
  std::vector<double> mags(u.size(), 0.0);
  const double level = fill_to_level(star, space, u, free, bands, mags);
  out.v = signed_density(space, u, mags);
  out.k = k;
  const double slack = 1.0 - level;
  if (slack > 1e-10) {
    out.s_norm = slack;
    out.non_atomic_limit = true;
  }
  out.achieved = pairing(space, u, out.v);
  out.norm_value = dual_functional_norm(gen, space, {out.v, out.s_norm});
  return out;
}

SupportVerification verify_support_functional(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                              const SimpleFunction& u, const DualDensity& f) {
  require_same_space(space, u);
  require_same_space(space, f.v);
  if (u.is_zero()) throw DomainError("verify_support_functional: u = 0");
  const double eps = eps_eq();
  const OrliczGenerator star = conjugate(gen);
  const KSet ks = k_interval(gen, space, u);
  const ExtReal istar = modular(star, space, f.v);
  SupportVerification out;

  if (is_degenerate(ks)) {
    out.degenerate = true;
    const double total = istar.to_double() + f.s_norm;
    out.clauses.push_back({"(i') I*(v) + s <= 1", 0.0, total, 1.0,
                           total <= 1.0 + eps ? ClauseStatus::pass : ClauseStatus::fail, ""});
    double dev = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!u.in_support(i)) continue;
      const double bstar = star.domain_bound(space[i].t).value();
      dev = std::max(dev, std::fabs(f.v[i] - sgn(u[i]) * bstar) / std::max(1.0, bstar));
    }
    out.clauses.push_back({"(ii') v = sgn(u) b* on supp u", 0.0, dev, eps, dev <= eps ? ClauseStatus::pass : ClauseStatus::fail, ""});
    if (f.s_norm > 0.0)
      out.clauses.push_back({"singular part", 0.0, f.s_norm, 0.0, ClauseStatus::unverifiable,
                             "singular mass has no realization on a finite grid"});
  } else {
    const auto& ne = std::get<KNonEmpty>(ks);
    out.probed_k.push_back(ne.k_star);
    if (ne.k_double_star > ne.k_star * (1.0 + 1e-9)) {
      for (double s : {0.25, 0.5, 0.75}) out.probed_k.push_back(ne.k_star + s * (ne.k_double_star - ne.k_star));
    }
    out.probed_k.push_back(ne.k_double_star);
    for (double k : out.probed_k) {
      const double total = istar.to_double() + f.s_norm;
      out.clauses.push_back({"(i) I*(v) + s = 1", k, total, 1.0,
                             std::fabs(total - 1.0) <= eps ? ClauseStatus::pass : ClauseStatus::fail, ""});
      if (f.s_norm == 0.0)
        out.clauses.push_back({"(ii) s = f_s(ku)", k, 0.0, 0.0, ClauseStatus::pass, ""});
      else
        out.clauses.push_back({"(ii) s = f_s(ku)", k, f.s_norm, 0.0, ClauseStatus::unverifiable,
                               "non-atomic-limit construct: the singular action at ku has no grid realization"});
      double worst = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double vi = f.v[i];
        if (!u.in_support(i)) {
          worst = std::max(worst, std::fabs(vi));
          continue;
        }
        if (vi * u[i] < 0.0) {
          worst = std::max(worst, 1.0 + std::fabs(vi));
          continue;
        }
        const Band b = subdiff_band(gen, space[i].t, k * std::fabs(u[i]), eps);
        const double mag = std::fabs(vi);
        const double lo = b.lo - eps * std::max(1.0, b.lo);
        const double hi = b.hi.is_finite() ? b.hi.value() + eps * std::max(1.0, b.hi.value())
                                           : std::numeric_limits<double>::infinity();
        worst = std::max(worst, std::max(lo - mag, mag - hi) / std::max(1.0, mag));
      }
      out.clauses.push_back({"(iii) sgn v = sgn u, |v| in subdifferential at k|u|", k, std::max(worst, 0.0), 0.0,
                             worst <= 0.0 ? ClauseStatus::pass : ClauseStatus::fail, ""});
    }
  }
  for (const auto& c : out.clauses) out.overall = combine(out.overall, c.status);
  return out;
}

SmoothnessReport classify_smooth_point(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                       const SimpleFunction& u) {
  require_same_space(space, u);
  if (u.is_zero()) throw DomainError("classify_smooth_point: u = 0");
  const double eps = eps_eq();
  const OrliczGenerator star = conjugate(gen);
  const KSet ks = k_interval(gen, space, u);
  SmoothnessReport rep;

  if (is_degenerate(ks)) {
    rep.branch = KBranch::empty;
    ExtReal on_supp{};
    ExtReal everywhere{};
    double a_off = 0.0;
    double mass_off = 0.0;
    std::vector<std::size_t> off;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double t = space[i].t;
      const ExtReal bstar = star.domain_bound(t);
      const ExtReal at_b = bstar.is_finite() ? star.value(t, bstar.value()) : ExtReal::infinity();
      everywhere += space[i].w * at_b;
      if (u.in_support(i)) {
        on_supp += space[i].w * at_b;
      } else {
        a_off = std::max(a_off, star.zero_bound(t));
        mass_off += space[i].w;
        off.push_back(i);
      }
    }
    const bool i_level = std::fabs(on_supp.to_double() - 1.0) <= eps;
    const bool i_zero = a_off <= eps;
    const bool ii_level = everywhere < 1.0;
    const bool ii_mass = mass_off == 0.0;
    rep.conditions = {{"(i) I*(b* chi_supp) = 1", on_supp.to_double(), 1.0, i_level},
                      {"(i) a* = 0 off supp u", a_off, 0.0, i_zero},
                      {"(ii) I*(b*) < 1", everywhere.to_double(), 1.0, ii_level},
                      {"(ii) mu(T \\ supp u) = 0", mass_off, 0.0, ii_mass}};
    rep.verdict = ((i_level && i_zero) || (ii_level && ii_mass)) ? SmoothVerdict::smooth : SmoothVerdict::not_smooth;
    if (rep.verdict == SmoothVerdict::not_smooth && !off.empty()) {
      std::vector<double> base(u.size(), 0.0);
      for (std::size_t i = 0; i < u.size(); ++i)
        if (u.in_support(i)) base[i] = sgn(u[i]) * star.domain_bound(space[i].t).value();
      auto other = base;
      const std::size_t j = off.front();
      const double t = space[j].t;
      const double a = star.zero_bound(t);
      if (a > 0.0) {
        other[j] = std::min(a, star.domain_bound(t).to_double());
      } else {
        const double budget = 1.0 - on_supp.value();
        dual_grid::AtomGrid g{t, space[j].w, 0.0, 0.0, {}, {}};
        g.vmax = dual_grid::single_atom_cap(star, g);
        other[j] = dual_grid::exact_slack(star, g, budget);
      }
      SimpleFunction w1(space, base);
      SimpleFunction w2(space, other);
      const bool ok = other[j] > 0.0 && verify_support_functional(gen, space, u, {w1, 0.0}).overall == ClauseStatus::pass &&
                      verify_support_functional(gen, space, u, {w2, 0.0}).overall == ClauseStatus::pass;
      if (ok)
        rep.witness = std::pair{w1, w2};
      else
        rep.notes.push_back("no grid witness: off-support atoms carry no admissible density");
    }
    return rep;
  }

  rep.branch = KBranch::nonempty;
  const auto& ne = std::get<KNonEmpty>(ks);
  const double k = ne.k_star;
  std::vector<Band> bands(u.size());
  std::vector<double> lo_v(u.size(), 0.0);
  std::vector<double> hi_v(u.size(), 0.0);
  bool hi_infinite = false;
  std::vector<std::size_t> supp;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!u.in_support(i)) continue;
    supp.push_back(i);
    bands[i] = subdiff_band(gen, space[i].t, k * std::fabs(u[i]), kSelectBand);
    lo_v[i] = bands[i].lo;
    if (bands[i].hi.is_finite())
      hi_v[i] = bands[i].hi.value();
    else
      hi_infinite = true;
  }
  const ExtReal left = modular_raw(star, space, lo_v);
  const ExtReal right = hi_infinite ? ExtReal::infinity() : modular_raw(star, space, hi_v);
  const bool cond_i = std::fabs(left.to_double() - 1.0) <= eps;
  const bool right_level = std::fabs(right.to_double() - 1.0) <= eps;
  double lambda_found = 0.0;
  for (int j = 1; j <= 6; ++j) {
    const double lambda = k * (1.0 + std::pow(10.0, -j));
    if (modular(gen, space, u.scaled(lambda)).is_finite()) {
      lambda_found = lambda;
      break;
    }
  }
  const bool lambda_ok = lambda_found > 0.0;
  rep.conditions = {{"(i) I*(Phi'_-(k*|u|)) = 1", left.to_double(), 1.0, cond_i},
                    {"(ii) I*(Phi'_+(k*|u|)) = 1", right.to_double(), 1.0, right_level},
                    {"(ii) I(lambda u) < inf for some lambda > k*", lambda_found, k, lambda_ok}};
  rep.verdict = (cond_i || (right_level && lambda_ok)) ? SmoothVerdict::smooth : SmoothVerdict::not_smooth;
  if (rep.verdict == SmoothVerdict::smooth) return rep;

  std::vector<std::size_t> slack;
  for (std::size_t i : supp) {
    const double lo = bands[i].lo;
    if (bands[i].hi.is_infinite() || bands[i].hi.value() - lo > 1e-6 * std::max(1.0, lo)) slack.push_back(i);
  }
  if (slack.size() < 2) {
    rep.notes.push_back(slack.empty() ? "no subdifferential slack on supp u; non-smoothness comes from the modular condition"
                                      : "a single atom carries the subdifferential slack; distinct support functionals "
                                        "need set splitting (refine the space)");
    return rep;
  }
  auto witness = [&](std::size_t pinned) {
    std::vector<double> mags(u.size(), 0.0);
    std::vector<std::size_t> rest;
    for (std::size_t i : supp) {
      if (i == pinned)
        mags[i] = bands[i].lo;
      else
        rest.push_back(i);
    }
    const double level = fill_to_level(star, space, u, rest, bands, mags);
    return std::pair{signed_density(space, u, mags), level};
  };
  auto [w1, l1] = witness(slack.front());
  auto [w2, l2] = witness(slack.back());
  const bool ok = std::fabs(l1 - 1.0) <= eps && std::fabs(l2 - 1.0) <= eps &&
                  verify_support_functional(gen, space, u, {w1, 0.0}).overall == ClauseStatus::pass &&
                  verify_support_functional(gen, space, u, {w2, 0.0}).overall == ClauseStatus::pass;
  if (ok)
    rep.witness = std::pair{w1, w2};
  else
    rep.notes.push_back("witness construction did not reach I* = 1 with both densities");
  return rep;
}

DensityCount count_support_densities(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u,
                                     const DensityCountOptions& options) {
  using namespace dual_grid;
  require_same_space(space, u);
  check_oracle_scale(space, options.resolution);
  if (u.is_zero()) throw DomainError("count_support_densities: u = 0");
  const OrliczGenerator star = conjugate(gen);

  // Enumerated atoms first (every atom except the last support atom), then the slack atom.
  const auto supp = support_indices(u);
  const std::size_t slack_atom = supp.back();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (i != slack_atom) order.push_back(i);
  order.push_back(slack_atom);
  const std::size_t m = order.size();

  std::vector<AtomGrid> atoms(m);
  double scale = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    auto& a = atoms[j];
    const std::size_t i = order[j];
    a.t = space[i].t;
    a.w = space[i].w;
    a.gain = a.w * std::fabs(u[i]);
    a.vmax = single_atom_cap(star, a);
    a.mag = magnitude_grid(a.vmax, options.resolution);
    for (double v : a.mag) a.cost.push_back(cost_of(star, a, v));
    scale = std::max(scale, a.vmax);
  }
  std::size_t combos = 1;
  for (std::size_t j = 0; j + 1 < m; ++j) combos *= atoms[j].mag.size();
  auto point = [&](std::size_t idx, std::vector<double>& x) {
    double used = 0.0;
    double gain = 0.0;
    for (std::size_t j = 0; j + 1 < m; ++j) {
      const std::size_t p = idx % atoms[j].mag.size();
      idx /= atoms[j].mag.size();
      x[j] = atoms[j].mag[p];
      used += atoms[j].cost[p];
      gain += atoms[j].gain * x[j];
    }
    if (!(used <= 1.0)) return -1.0;
    x[m - 1] = grid_slack(atoms[m - 1], 1.0 - used);
    return gain + atoms[m - 1].gain * x[m - 1];
  };
  const auto best = scan(options.exec, combos, [&](std::size_t idx) {
    std::vector<double> x(m);
    return point(idx, x);
  });
  DensityCount out;
  if (best.index >= combos) return out;
  std::vector<double> xbest(m);
  point(best.index, xbest);
  const double floor_value = best.value - options.tolerance * std::max(1.0, best.value);
  const auto far = scan(options.exec, combos, [&](std::size_t idx) {
    std::vector<double> x(m);
    if (point(idx, x) < floor_value) return -1.0;
    double d = 0.0;
    for (std::size_t j = 0; j < m; ++j) d = std::max(d, std::fabs(x[j] - xbest[j]));
    return d;
  });
  auto to_density = [&](const std::vector<double>& x) {
    std::vector<double> v(u.size(), 0.0);
    for (std::size_t j = 0; j < m; ++j) v[order[j]] = (u[order[j]] < 0.0 ? -1.0 : 1.0) * x[j];
    return SimpleFunction(space, std::move(v));
  };
  out.best = best.value;
  out.first = to_density(xbest);
  out.classes = 1;
  if (far.index < combos && far.value > options.separation * scale) {
    std::vector<double> x(m);
    point(far.index, x);
    out.second = to_density(x);
    out.classes = 2;
  }
  return out;
}

std::vector<std::string> SpaceSmoothnessReport::failing() const {
  std::vector<std::string> f;
  if (!cond_a) f.push_back("a");
  if (!cond_b) f.push_back("b");
  if (!cond_c) f.push_back("c");
  return f;
}

SpaceSmoothnessReport check_space_smoothness(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                             const SpaceSmoothnessOptions& options) {
  const OrliczGenerator star = conjugate(gen);
  SpaceSmoothnessReport rep;

  rep.cond_a = true;
  for (const auto& atom : space.atoms()) {
    const double t = atom.t;
    const ExtReal bstar = star.domain_bound(t);
    AtomEvidence ev{t, false, ""};
    if (bstar.is_finite()) {
      const ExtReal at = star.value(t, bstar.value());
      ev.pass = at.is_infinite();
      ev.detail = "b* = " + bstar.str() + ", Phi*(b*) = " + at.str();
    } else {
      // Doubling toward b* = inf until the value passes 1e12 with growing increments.
      double v = 1.0;
      double prev = 0.0;
      double prev_step = 0.0;
      for (int j = 0; j < 1100 && v < 1e300; ++j, v *= 2.0) {
        const ExtReal x = star.value(t, v);
        if (x.is_infinite() || (x.value() > 1e12 && x.value() - prev > prev_step)) {
          ev.pass = true;
          ev.detail = "b* = inf, Phi*(" + fmt(v) + ") = " + x.str();
          break;
        }
        prev_step = x.value() - prev;
        prev = x.value();
      }
      if (!ev.pass) ev.detail = "b* = inf but Phi* stays bounded along doubling";
    }
    rep.cond_a = rep.cond_a && ev.pass;
    rep.evidence_a.push_back(ev);
  }

  const Delta2Info info = gen.delta2();
  std::vector<double> f(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) f[i] = 2.0 * gen.zero_bound(space[i].t);
  const SimpleFunction threshold(space, f);
  const bool f_ok = modular(gen, space, threshold).is_finite();
  if (info.holds) {
    rep.cond_b = *info.holds;
    std::ostringstream os;
    os << "analytic: " << (*info.holds ? "holds" : "fails");
    if (info.constant) os << " with K = " << *info.constant;
    if (f_ok) {
      const double K = info.constant.value_or(options.fallback_K);
      const auto sampled = delta2_check(gen, space, std::max(K, 1.0 + 1e-9), threshold, options.delta2);
      os << "; sampled at K = " << K << ": " << (sampled.holds ? "no violation" : "violated at u = " + fmt(sampled.u));
      if (*info.holds && !sampled.holds) os << " (inconsistent with the analytic flag)";
    }
    rep.evidence_b = os.str();
  } else {
    if (f_ok) {
      const auto sampled = delta2_check(gen, space, options.fallback_K, threshold, options.delta2);
      rep.cond_b = sampled.holds;
      rep.evidence_b = "no analytic flag; sampled at K = " + fmt(options.fallback_K) + ": " +
                       (sampled.holds ? "no violation on the sample" : "violated at u = " + fmt(sampled.u));
    } else {
      rep.cond_b = false;
      rep.evidence_b = "no analytic flag; threshold 2 a_Phi has infinite modular";
    }
  }

  rep.cond_c = true;
  std::vector<GapFunction> gaps;
  for (double delta : {1.0, 0.1, 0.01}) gaps.push_back(smoothness_gap_function(gen, space, delta));
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double t = space[i].t;
    AtomEvidence ev{t, true, ""};
    const ExtReal b = gen.domain_bound(t);
    const ExtReal d0 = gen.right_derivative(t, 0.0);
    if (b.is_finite()) {
      ev.pass = false;
      ev.detail = "finite domain, b = " + b.str();
    } else if (!(d0 <= 1e-12)) {
      ev.pass = false;
      ev.detail = "Phi'_+(0) = " + d0.str();
    } else {
      const double deltas[] = {1.0, 0.1, 0.01};
      for (std::size_t j = 0; j < gaps.size(); ++j) {
        if (gaps[j].h_mask[i]) {
          ev.pass = false;
          ev.detail = "gap >= " + fmt(deltas[j]) + " at u = " + gaps[j].u_delta[i].str();
          break;
        }
      }
      if (ev.pass) ev.detail = "no derivative gap >= 0.01";
    }
    rep.cond_c = rep.cond_c && ev.pass;
    rep.evidence_c.push_back(ev);
  }
  rep.verdict = rep.cond_a && rep.cond_b && rep.cond_c;
  return rep;
}

GapFunction smoothness_gap_function(const OrliczGenerator& gen, const GridMeasureSpace& space, double delta) {
  if (!(delta > 0.0)) throw InputError("smoothness_gap_function: delta must be > 0");
  GapFunction out;
  for (const auto& atom : space.atoms()) {
    const double t = atom.t;
    ExtReal where = ExtReal::infinity();
    if (auto kinks = gen.kinks(t)) {
      for (const auto& k : *kinks) {
        if (k.gap >= delta) {
          where = ExtReal::finite(k.x);
          break;
        }
      }
    } else {
      // Scan for a jump of the derivative between neighbouring points, then locate it by bisection.
      const ExtReal b = gen.domain_bound(t);
      const double top = b.is_finite() ? b.value() : 1e6;
      std::vector<double> xs{0.0};
      for (int j = 0; j <= 4000; ++j) xs.push_back(top * std::pow(1e-9, 1.0 - j / 4000.0));
      if (derivative_gap(gen, t, 0.0) >= delta) {
        where = ExtReal{};
      } else {
        for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
          const ExtReal base = gen.right_derivative(t, xs[j]);
          const ExtReal next = gen.left_derivative(t, xs[j + 1]);
          const bool jump = base.is_finite() && (next.is_infinite() || next.value() - base.value() >= delta);
          const bool at_end = j + 2 == xs.size() && b.is_finite();
          if (jump) {
            auto reached = [&](double x) {
              const ExtReal d = gen.left_derivative(t, x);
              return d.is_infinite() || d.value() - base.value() >= delta;
            };
            const auto br = detail::bisect(reached, xs[j], xs[j + 1], 1e-13);
            const double x = derivative_gap(gen, t, br.above) >= delta ? br.above : br.below;
            where = ExtReal::finite(x);
            break;
          }
          if (at_end) where = ExtReal::finite(xs[j + 1]);
        }
      }
    }
    if (where.is_finite()) {
      const ExtReal g = derivative_gap(gen, t, where.value());
      if (g < delta - 1e-9) out.postcondition = false;
    }
    out.u_delta.push_back(where);
    out.h_mask.push_back(where.is_finite());
  }
  return out;
}

}  // namespace mo
