#include "acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "fixtures.hpp"
#include "mo/conjugate.hpp"
#include "mo/core.hpp"
#include "mo/duality.hpp"
#include "mo/geometry.hpp"
#include "mo/norms.hpp"
#include "oracles.hpp"

namespace mo::acceptance {
namespace {

using mo::testing::builtin_pool;
using mo::testing::fn;
using mo::testing::Sampler;
using mo::testing::two_atoms;

// Collects the first failing observation and the worst deviation seen.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
    failures_ += ok ? 0 : 1;
  }
  void worst(double x) { worst_ = std::max(worst_, x); }

  Criterion finish(int id, std::string title) const {
    std::ostringstream os;
    os.precision(3);
    os << checks_ << " checks";
    if (worst_ > 0.0) os << ", worst deviation " << worst_;
    if (failures_ > 0) os << ", " << failures_ << " failed; first: " << first_failure_;
    return {id, std::move(title), failures_ == 0, os.str()};
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  double worst_ = 0.0;
  std::string first_failure_;
};

std::string str(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

double rel(double x) { return std::max(1.0, std::fabs(x)); }

const std::vector<std::vector<double>>& two_atom_functions() {
  static const std::vector<std::vector<double>> us{{1, 1}, {1, 2}, {0, 2}, {-1, 0.5}, {3, 0.2}};
  return us;
}

Criterion norm_equivalence() {
  Tally tally;
  Sampler rng(101);
  const auto pool = builtin_pool();
  for (int i = 0; i < 1000; ++i) {
    const auto& [label, g] = pool[static_cast<std::size_t>(i) % pool.size()];
    const auto s = rng.space(rng.integer(2, 8));
    const auto u = rng.function(s);
    const double lux = luxemburg_norm(g, s, u);
    const double am = orlicz_amemiya_norm(g, s, u).value;
    tally.worst(std::max(0.0, lux - am) / rel(am));
    tally.check(lux <= am + 1e-9 * rel(am) && am <= 2.0 * lux + 1e-9 * rel(am),
                label + ": lux " + str(lux) + " amemiya " + str(am));
  }
  const auto s = two_atoms();
  const auto u = fn(s, {1, 1});
  const double ratio = orlicz_amemiya_norm(gen::power(2.0), s, u).value / luxemburg_norm(gen::power(2.0), s, u);
  tally.check(std::fabs(ratio - 2.0) <= 1e-9, "power2 (1,1) ratio " + str(ratio));
  return tally.finish(1, "norm equivalence lux <= orlicz <= 2 lux");
}

Criterion orlicz_equals_amemiya() {
  Tally tally;
  const auto s = two_atoms();
  for (const auto& [label, g] : builtin_pool()) {
    for (const auto& uv : two_atom_functions()) {
      const auto u = fn(s, uv);
      const double oracle = orlicz_norm_bruteforce(g, s, u, 400).value;
      const double am = orlicz_amemiya_norm(g, s, u).value;
      tally.worst(std::fabs(oracle - am));
      tally.check(std::fabs(oracle - am) <= 5e-3, label + ": oracle " + str(oracle) + " amemiya " + str(am));
    }
  }
  return tally.finish(2, "Orlicz sup formula equals Amemiya formula");
}

Criterion power_closed_forms() {
  Tally tally;
  Sampler rng(103);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto g = gen::power(p);
    for (int i = 0; i < 100; ++i) {
      const auto s = rng.space(rng.integer(2, 8));
      const auto u = rng.function(s);
      const double lux = luxemburg_norm(g, s, u);
      const double orl = orlicz_amemiya_norm(g, s, u).value;
      const double lo = mo::oracle::power_luxemburg(s, u, p);
      const double oo = mo::oracle::power_orlicz(s, u, p);
      tally.worst(std::max(std::fabs(lux - lo), std::fabs(orl - oo)));
      tally.check(std::fabs(lux - lo) <= 1e-9 && std::fabs(orl - oo) <= 1e-9,
                  "p=" + str(p) + ": lux " + str(lux) + " vs " + str(lo) + ", orlicz " + str(orl) + " vs " + str(oo));
    }
  }
  return tally.finish(3, "power family closed forms");
}

Criterion conjugation() {
  Tally tally;
  Sampler rng(104);
  for (const auto& [label, g] : builtin_pool()) {
    std::vector<double> grid;
    const ExtReal b = g.domain_bound(0.5);
    const double top = b.is_finite() ? b.value() : 6.0;
    for (int j = 0; j < 25; ++j) grid.push_back(top * j / 25.0);
    const double r = biconjugate_residual(g, 0.5, grid);
    tally.worst(r);
    tally.check(r <= 1e-8, label + ": biconjugate residual " + str(r));

    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double t = rng.uniform(0.0, 1.0);
      const auto gap = young_gap(g, t, rng.uniform(0.0, 5.0), rng.uniform(0.0, 5.0));
      if (!gap.infinite) worst = std::min(worst, gap.value);
    }
    tally.check(worst >= -1e-12, label + ": young gap " + str(worst));

    for (int i = 0; i < 400; ++i) {
      const double t = rng.uniform(0.0, 1.0);
      const ExtReal bt = g.domain_bound(t);
      const double u = rng.uniform(0.0, bt.is_finite() ? bt.value() : 5.0);
      const ExtReal lo = g.left_derivative(t, u);
      const ExtReal hi = g.right_derivative(t, u);
      if (lo.is_infinite()) continue;
      const double up = hi.is_finite() ? hi.value() : lo.value() + 10.0;
      const double v = lo.value() + rng.uniform(0.0, 1.0) * (up - lo.value());
      const auto gap = young_gap(g, t, u, v);
      const double dev = gap.infinite ? HUGE_VAL : std::fabs(gap.value) / std::max(1.0, u * v);
      tally.check(dev <= 1e-9, label + ": equality case u=" + str(u) + " v=" + str(v));
    }
  }
  return tally.finish(4, "conjugation and Young inequality");
}

Criterion k_interval_attainment() {
  Tally tally;
  Sampler rng(105);
  struct Case {
    std::string label;
    GridMeasureSpace space;
    OrliczGenerator gen;
    SimpleFunction u;
  };
  std::vector<Case> cases;
  const auto s2 = two_atoms();
  cases.push_back({"flat", s2, mo::testing::flat_interval_generator(), fn(s2, {1, 1})});
  for (const auto& [label, g] : builtin_pool()) {
    for (int r = 0; r < 5; ++r) {
      auto sp = rng.space(rng.integer(2, 5));
      auto u = rng.function(sp);
      cases.push_back({label, sp, g, u});
    }
  }
  for (const auto& c : cases) {
    const auto r = orlicz_amemiya_norm(c.gen, c.space, c.u);
    const auto* ne = r.kset ? std::get_if<KNonEmpty>(&*r.kset) : nullptr;
    if (ne == nullptr) continue;
    for (int j = 1; j <= 20; ++j) {
      const double k = ne->k_star + (ne->k_double_star - ne->k_star) * j / 21.0;
      const ExtReal a = amemiya_objective(c.gen, c.space, c.u, k);
      const double dev = a.is_finite() ? std::fabs(a.value() - r.value) / rel(r.value) : HUGE_VAL;
      tally.worst(dev);
      tally.check(dev <= 1e-8, c.label + ": interior probe k=" + str(k));
    }
    for (double k : {ne->k_star * (1.0 - 1e-3), ne->k_double_star * (1.0 + 1e-3)})
      tally.check(amemiya_objective(c.gen, c.space, c.u, k) > r.value, c.label + ": exterior probe k=" + str(k));
  }
  for (int i = 0; i < 100; ++i) {
    const auto s = rng.space(rng.integer(2, 8));
    const auto u = rng.function(s);
    double l1 = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) l1 += s[j].w * std::fabs(u[j]);
    const auto k = k_interval(gen::linear(), s, u);
    const auto* d = std::get_if<KDegenerate>(&k);
    tally.check(d != nullptr && d->l1_value == l1 && orlicz_amemiya_norm(gen::linear(), s, u).value == l1,
                "linear degenerate value differs from the L1 sum");
  }
  return tally.finish(5, "K(u) attainment and degenerate branch");
}

// Holder equality pairs: a subgradient of Phi at |u| / ||u||_Phi, signed like u.
SimpleFunction luxemburg_support(const OrliczGenerator& g, const GridMeasureSpace& s, const SimpleFunction& u) {
  const double lambda = luxemburg_norm(g, s, u);
  std::vector<double> v(s.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (u[i] == 0.0) continue;
    const double x = std::fabs(u[i]) / lambda;
    const double lo = g.left_derivative(s[i].t, x).to_double();
    const ExtReal hi = g.right_derivative(s[i].t, x);
    v[i] = sgn(u[i]) * (hi.is_finite() ? 0.5 * (lo + hi.value()) : lo + 1.0);
  }
  return SimpleFunction(s, std::move(v));
}

Criterion duality_expressions() {
  Tally tally;
  const auto s = two_atoms();
  for (const auto& [label, g] : builtin_pool()) {
    for (const auto& uv : two_atom_functions()) {
      const auto u = fn(s, uv);
      const double oracle = luxemburg_norm_bruteforce(g, s, u, 400).value;
      const double lux = luxemburg_norm(g, s, u);
      tally.worst(std::fabs(oracle - lux));
      tally.check(std::fabs(oracle - lux) <= 5e-3, label + ": lux oracle " + str(oracle) + " vs " + str(lux));
    }
  }
  Sampler rng(106);
  const auto pool = builtin_pool();
  for (int i = 0; i < 1000; ++i) {
    const auto& [label, g] = pool[static_cast<std::size_t>(i) % pool.size()];
    const auto sp = rng.space(rng.integer(2, 6));
    const auto u = rng.function(sp);
    auto v = rng.function(sp);
    const auto star = conjugate(g);
    std::vector<double> clipped(v.values().begin(), v.values().end());
    for (std::size_t j = 0; j < sp.size(); ++j) {
      const ExtReal b = star.domain_bound(sp[j].t);
      if (b.is_finite()) clipped[j] = std::clamp(clipped[j], -b.value(), b.value());
    }
    v = SimpleFunction(sp, clipped);
    const double gap = holder_gap(g, sp, u, v);
    tally.check(gap >= -1e-9, label + ": holder gap " + str(gap));
  }
  for (const auto& [label, g] : pool) {
    for (int r = 0; r < 10; ++r) {
      const auto sp = rng.space(rng.integer(1, 5));
      const auto u = rng.function(sp);
      const auto v = luxemburg_support(g, sp, u);
      const double gap = holder_gap(g, sp, u, v);
      const double scale = rel(pairing(sp, u, v));
      tally.worst(std::fabs(gap) / scale);
      tally.check(std::fabs(gap) <= 1e-6 * scale, label + ": equality pair gap " + str(gap));
    }
  }
  return tally.finish(6, "Luxemburg dual expression and Holder inequality");
}

Criterion support_functionals() {
  Tally tally;
  Sampler rng(107);
  for (const auto& [label, g] : builtin_pool()) {
    for (int r = 0; r < 30; ++r) {
      const auto s = rng.space(rng.integer(1, 6));
      const auto u = rng.function(s);
      if (is_degenerate(k_interval(g, s, u))) continue;
      const auto f = construct_support_functional(g, s, u);
      if (f.s_norm != 0.0) continue;
      const double am = orlicz_amemiya_norm(g, s, u).value;
      const double dev = std::max(std::fabs(f.achieved - am) / rel(am), std::fabs(f.norm_value - 1.0));
      tally.worst(dev);
      tally.check(dev <= 1e-7, label + ": achieved " + str(f.achieved) + " norm " + str(am) + " dual norm " +
                                   str(f.norm_value));
      tally.check(verify_support_functional(g, s, u, {f.v, 0.0}).overall == ClauseStatus::pass,
                  label + ": constructed functional fails verification");
    }
  }
  return tally.finish(7, "support functional attains the norm with dual norm one");
}

Criterion classifier_vs_bruteforce() {
  Tally tally;
  const auto s = two_atoms();
  struct Case {
    std::string label;
    OrliczGenerator gen;
    std::vector<double> u;
    bool smooth;
  };
  const std::vector<Case> curated{{"power2 (1,1)", gen::power(2.0), {1, 1}, true},
                                  {"kinked (1,1)", gen::kinked_quadratic(), {1, 1}, false},
                                  {"linear (0,2)", gen::linear(), {0, 2}, false}};
  for (const auto& c : curated) {
    const auto u = fn(s, c.u);
    const auto r = classify_smooth_point(c.gen, s, u);
    const auto count = count_support_densities(c.gen, s, u, {.resolution = 400});
    const bool smooth = r.verdict == SmoothVerdict::smooth;
    tally.check(smooth == c.smooth, c.label + ": classifier says " + to_string(r.verdict));
    tally.check(smooth == (count.classes == 1), c.label + ": brute force found " + std::to_string(count.classes));
    if (!c.smooth) {
      tally.check(r.witness.has_value(), c.label + ": no witness pair");
      if (r.witness)
        for (const auto* w : {&r.witness->first, &r.witness->second})
          tally.check(verify_support_functional(c.gen, s, u, {*w, 0.0}).overall == ClauseStatus::pass,
                      c.label + ": witness fails verification");
    }
  }
  const auto kinked = classify_smooth_point(gen::kinked_quadratic(), s, fn(s, {1, 1}));
  if (kinked.witness)
    for (const auto* w : {&kinked.witness->first, &kinked.witness->second})
      tally.check(std::fabs((*w)[0] + (*w)[1] - 3.0) <= 1e-7, "kinked witness off the a+b=3 family");
  return tally.finish(8, "smooth-point classifier agrees with brute-force density count");
}

Criterion space_smoothness() {
  Tally tally;
  const auto s = GridMeasureSpace::uniform(4);
  using V = std::vector<std::string>;
  auto join = [](const V& v) {
    std::string out = "{";
    for (const auto& x : v) out += (out.size() > 1 ? "," : "") + x;
    return out + "}";
  };
  for (double p : {1.5, 2.0, 3.0}) {
    const auto r = check_space_smoothness(gen::power(p), s);
    tally.check(r.verdict && r.failing().empty(), "power " + str(p) + " failing " + join(r.failing()));
  }
  const std::vector<std::pair<std::string, std::pair<OrliczGenerator, V>>> expected{
      {"linear", {gen::linear(), {"a", "c"}}},
      {"indicator1", {gen::indicator(1.0), {"b", "c"}}},
      {"kinked", {gen::kinked_quadratic(), {"c"}}},
      {"expm1", {gen::exp_minus_one(), {"b"}}}};
  for (const auto& [label, e] : expected) {
    const auto r = check_space_smoothness(e.first, s);
    tally.check(!r.verdict && r.failing() == e.second, label + ": failing " + join(r.failing()));
  }
  return tally.finish(9, "space smoothness verdicts and failing conditions");
}

Criterion truncation_convergence() {
  Tally tally;
  const auto s = two_atoms();
  const auto seq = truncated_norm_sequence(gen::indicator(1.0), s, fn(s, {1, 2}), {1, 10, 100, 1000});
  tally.check(seq.nondecreasing, "sequence decreases somewhere");
  const double last = seq.steps.back().norm;
  tally.worst(std::fabs(2.0 - last));
  tally.check(std::fabs(2.0 - last) <= 2e-3, "n=1000 value " + str(last) + " is " + str(2.0 - last) + " below 2");
  return tally.finish(10, "truncated Luxemburg norms increase to the limit");
}

Criterion theta_functional() {
  Tally tally;
  const auto s = two_atoms();
  const double th = theta(gen::indicator(1.0), s, fn(s, {1, 2}));
  tally.worst(std::fabs(th - 2.0));
  tally.check(std::fabs(th - 2.0) <= 1e-10, "indicator theta " + str(th));
  Sampler rng(111);
  for (const auto& [label, g] : builtin_pool()) {
    if (!g.capabilities().finite_valued) continue;
    for (int r = 0; r < 20; ++r) {
      const auto sp = rng.space(rng.integer(2, 6));
      const double v = theta(g, sp, rng.function(sp));
      tally.check(v == 0.0, label + ": theta " + str(v));
    }
  }
  return tally.finish(11, "theta functional");
}

Criterion delta2_classification() {
  Tally tally;
  const auto s = GridMeasureSpace::uniform(4);
  const auto zero = SimpleFunction::zero(s);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto v = delta2_check(gen::power(p), s, std::pow(2.0, p), zero);
    tally.check(v.holds, "power " + str(p) + " violated at u=" + str(v.u));
  }
  const auto e = delta2_check(gen::exp_minus_one(), s, 100.0, zero);
  tally.check(!e.holds && e.ratio > 100.0, "expm1 ratio " + str(e.ratio));
  const auto ind = delta2_check(gen::indicator(1.0), s, 4.0, SimpleFunction::constant(s, 1.0));
  tally.check(!ind.holds && ind.u == 1.0, "indicator witness u=" + str(ind.u));
  return tally.finish(12, "Delta2 classification");
}

}  // namespace

std::vector<Criterion> run_all() {
  const std::vector<std::function<Criterion()>> all{
      norm_equivalence,    orlicz_equals_amemiya,    power_closed_forms, conjugation,
      k_interval_attainment, duality_expressions,    support_functionals, classifier_vs_bruteforce,
      space_smoothness,    truncation_convergence,   theta_functional,   delta2_classification};
  std::vector<Criterion> out;
  for (const auto& c : all) out.push_back(c());
  return out;
}

std::string format_line(const Criterion& c) {
  std::ostringstream os;
  os << (c.pass ? "PASS" : "FAIL") << "  " << (c.id < 10 ? " " : "") << c.id << "  " << c.title << ": " << c.detail;
  return os.str();
}

}  // namespace mo::acceptance
