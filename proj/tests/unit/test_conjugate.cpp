#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "mo/conjugate.hpp"
#include "mo/core.hpp"
#include "mo/detail/conjugate_sup.hpp"
#include "oracles.hpp"

using namespace mo;

namespace {

double finite_or_inf(ExtReal x) { return x.to_double(); }

// v grid inside the conjugate's finite domain.
std::vector<double> dual_grid(const OrliczGenerator& star, double t) {
  const ExtReal b = star.domain_bound(t);
  std::vector<double> vs;
  const double top = b.is_finite() ? b.value() : 8.0;
  for (int j = 0; j <= 40; ++j) vs.push_back(top * j / 40.0);
  return vs;
}

}  // namespace

TEST(Conjugate, PowerThreeAtOne) {
  const auto star = conjugate(gen::power(3.0));
  EXPECT_NEAR(star.value(0.5, 1.0).value(), 2.0 / 3.0, 1e-15);
  const double grid = oracle::grid_conjugate([](double u) { return u * u * u / 3.0; }, 1.0, 3.0);
  EXPECT_NEAR(star.value(0.5, 1.0).value(), grid, 1e-8);
}

TEST(Conjugate, IndicatorIsLinear) {
  const auto star = conjugate(gen::indicator(1.0));
  EXPECT_DOUBLE_EQ(star.value(0.5, 2.0).value(), 2.0);
  EXPECT_EQ(star.name(), "linear");
  const auto c3 = conjugate(gen::indicator(3.0));
  EXPECT_DOUBLE_EQ(c3.value(0.5, 2.0).value(), 6.0);
}

TEST(Conjugate, LinearIsIndicator) {
  const auto star = conjugate(gen::linear());
  EXPECT_EQ(star.name(), "indicator");
  EXPECT_EQ(star.zero_bound(0.5), 1.0);
  EXPECT_EQ(star.domain_bound(0.5), 1.0);
  EXPECT_EQ(star.value(0.5, 1.0), 0.0);
  EXPECT_TRUE(star.value(0.5, 1.0 + 1e-12).is_infinite());
}

TEST(Conjugate, ZeroArgumentGivesZero) {
  for (const auto& [label, g] : mo::testing::builtin_pool()) {
    EXPECT_EQ(conjugate(g).value(0.5, 0.0), 0.0) << label;
    EXPECT_EQ(gen::numeric_conjugate(g).value(0.5, 0.0), 0.0) << label;
  }
}

TEST(Conjugate, KinkedQuadraticHasFlatConjugatePiece) {
  const auto star = conjugate(gen::kinked_quadratic_linear());
  EXPECT_EQ(star.domain_bound(0.5), 2.0);
  EXPECT_DOUBLE_EQ(star.value(0.5, 0.5).value(), 0.125);
  EXPECT_DOUBLE_EQ(star.value(0.5, 1.5).value(), 1.0);
  EXPECT_DOUBLE_EQ(star.value(0.5, 2.0).value(), 1.5);
  EXPECT_TRUE(star.value(0.5, 2.5).is_infinite());
  // The conjugate of the conjugate is the original piecewise description.
  const auto back = conjugate(star);
  for (double u : {0.0, 0.3, 1.0, 1.7, 5.0})
    EXPECT_DOUBLE_EQ(back.value(0.5, u).value(), gen::kinked_quadratic_linear().value(0.5, u).value());
}

TEST(Conjugate, PiecewiseAgainstGridOracle) {
  const std::vector<OrliczGenerator> gens{gen::kinked_quadratic(), gen::kinked_quadratic_linear(),
                                          mo::testing::flat_interval_generator(),
                                          gen::piecewise_quadratic({{0.0, 0.0, 0.0, 0.0}, {0.5, 1.0, 2.0, 0.0}}, ExtReal::finite(3.0))};
  for (const auto& g : gens) {
    const auto star = conjugate(g);
    for (double v : {0.1, 0.7, 1.0, 1.3, 1.9, 2.6, 4.0}) {
      const ExtReal s = star.value(0.5, v);
      if (s.is_infinite()) continue;
      const double grid = oracle::grid_conjugate([&](double u) { return finite_or_inf(g.value(0.5, u)); }, v, 10.0);
      EXPECT_NEAR(s.value(), grid, 1e-6) << g.parameters() << " v=" << v;
    }
  }
}

TEST(Conjugate, VariableExponentClosedForm) {
  const auto g = gen::variable_exponent(mo::testing::exponent_two_plus_t());
  const auto star = conjugate(g);
  for (double t : {0.1, 0.5, 0.9})
    for (double v : {0.2, 1.0, 3.0}) {
      const double p = 2.0 + t;
      const double grid = oracle::grid_conjugate([p](double u) { return std::pow(u, p); }, v, 3.0);
      EXPECT_NEAR(star.value(t, v).value(), grid, 1e-8);
    }
}

TEST(YoungGap, Examples) {
  EXPECT_NEAR(young_gap(gen::power(2.0), 0.5, 3.0, 3.0).value, 0.0, 1e-15);
  EXPECT_NEAR(young_gap(gen::power(2.0), 0.5, 3.0, 2.0).value, 0.5, 1e-15);
  EXPECT_NEAR(young_gap(gen::indicator(1.0), 0.5, 1.0, 7.0).value, 0.0, 1e-15);
  EXPECT_TRUE(young_gap(gen::indicator(1.0), 0.5, 2.0, 7.0).infinite);
}

TEST(Biconjugate, Examples) {
  EXPECT_LE(biconjugate_residual(gen::power(2.0), 0.5, {0, 1, 2, 3}), 1e-9);
  EXPECT_LE(biconjugate_residual(gen::linear(), 0.5, {0, 0.5, 1}), 1e-9);
  EXPECT_LE(biconjugate_residual(gen::indicator(1.0), 0.5, {0.5, 1}), 1e-9);
}

TEST(Biconjugate, AllBuiltins) {
  for (const auto& [label, g] : mo::testing::builtin_pool()) {
    std::vector<double> grid;
    const ExtReal b = g.domain_bound(0.5);
    const double top = b.is_finite() ? b.value() : 6.0;
    for (int j = 0; j < 25; ++j) grid.push_back(top * j / 25.0);
    EXPECT_LE(biconjugate_residual(g, 0.5, grid), 1e-8) << label;
  }
}

TEST(Biconjugate, NumericGeneratorRoundTrip) {
  const auto g = gen::numeric([](double, double u) { return std::cosh(u) - 1.0; }, ExtReal::infinity(), "cosh-1");
  EXPECT_LE(biconjugate_residual(g, 0.5, {0.0, 0.5, 1.0, 2.0}), 1e-7);
}

TEST(Conjugate, NumericGeneratorMatchesClosedForm) {
  const auto g = gen::numeric([](double, double u) { return u * u / 2.0; }, ExtReal::infinity(), "u^2/2");
  const auto star = conjugate(g);
  EXPECT_EQ(star.name(), "numeric_conjugate");
  EXPECT_TRUE(star.domain_bound(0.5).is_infinite());
  for (double v : {0.5, 1.0, 2.5}) EXPECT_NEAR(star.value(0.5, v).value(), v * v / 2.0, 1e-8);
  const auto lin = gen::numeric([](double, double u) { return 2.0 * u; }, ExtReal::infinity(), "2u");
  const auto lstar = conjugate(lin);
  EXPECT_NEAR(lstar.domain_bound(0.5).value(), 2.0, 1e-9);
  EXPECT_EQ(lstar.value(0.5, 1.5), 0.0);
  EXPECT_TRUE(lstar.value(0.5, 2.5).is_infinite());
}

TEST(Conjugate, AsymptoticSlope) {
  EXPECT_EQ(detail::asymptotic_slope(gen::linear(3.0).family(), 0.5), 3.0);
  EXPECT_TRUE(detail::asymptotic_slope(gen::power(2.0).family(), 0.5).is_infinite());
  EXPECT_TRUE(detail::asymptotic_slope(gen::exp_minus_one().family(), 0.5).is_infinite());
  EXPECT_TRUE(detail::asymptotic_slope(gen::indicator(1.0).family(), 0.5).is_infinite());
  EXPECT_NEAR(detail::asymptotic_slope(gen::truncated(gen::power(2.0), 3.0).family(), 0.5).value(), 3.0, 1e-12);
}

TEST(Properties, YoungInequalityOnRandomPairs) {
  mo::testing::Sampler rnd(2024);
  for (const auto& [label, g] : mo::testing::builtin_pool()) {
    const auto star = conjugate(g);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double t = rnd.uniform(0.0, 1.0);
      const double u = rnd.uniform(0.0, 5.0);
      const double v = rnd.uniform(0.0, 5.0);
      const auto gap = young_gap(g, t, u, v);
      if (!gap.infinite) worst = std::min(worst, gap.value);
    }
    EXPECT_GE(worst, -1e-12) << label;
  }
}

TEST(Properties, YoungEqualityOnSubdifferential) {
  mo::testing::Sampler rnd(7);
  for (const auto& [label, g] : mo::testing::builtin_pool()) {
    for (int i = 0; i < 400; ++i) {
      const double t = rnd.uniform(0.0, 1.0);
      const ExtReal b = g.domain_bound(t);
      const double u = rnd.uniform(0.0, b.is_finite() ? b.value() : 5.0);
      const ExtReal lo = g.left_derivative(t, u);
      const ExtReal hi = g.right_derivative(t, u);
      if (lo.is_infinite()) continue;
      const double top = hi.is_finite() ? hi.value() : lo.value() + 10.0;
      const double v = lo.value() + rnd.uniform(0.0, 1.0) * (top - lo.value());
      const auto gap = young_gap(g, t, u, v);
      ASSERT_FALSE(gap.infinite) << label;
      EXPECT_NEAR(gap.value, 0.0, 1e-9 * std::max(1.0, u * v)) << label << " u=" << u << " v=" << v;
    }
  }
}

TEST(Properties, DerivativeInversion) {
  mo::testing::Sampler rnd(99);
  for (const auto& [label, g] : mo::testing::builtin_pool()) {
    const auto star = conjugate(g);
    for (int i = 0; i < 300; ++i) {
      const double t = rnd.uniform(0.0, 1.0);
      const ExtReal b = g.domain_bound(t);
      const double u = rnd.uniform(0.0, b.is_finite() ? b.value() : 4.0);
      const ExtReal lo = g.left_derivative(t, u);
      const ExtReal hi = g.right_derivative(t, u);
      if (lo.is_infinite()) continue;
      const double top = hi.is_finite() ? hi.value() : lo.value() + 3.0;
      const double v = lo.value() + rnd.uniform(0.0, 1.0) * (top - lo.value());
      const ExtReal slo = star.left_derivative(t, v);
      const ExtReal shi = star.right_derivative(t, v);
      EXPECT_LE(slo.to_double(), u + 1e-8) << label << " u=" << u << " v=" << v;
      EXPECT_GE(shi.to_double(), u - 1e-8) << label << " u=" << u << " v=" << v;
    }
  }
}

TEST(Properties, AnalyticAndNumericConjugatesAgree) {
  for (const auto& [label, g] : mo::testing::builtin_pool()) {
    const auto analytic = conjugate(g);
    const auto numeric = gen::numeric_conjugate(g);
    for (double t : {0.2, 0.7}) {
      const ExtReal ba = analytic.domain_bound(t);
      const ExtReal bn = numeric.domain_bound(t);
      ASSERT_EQ(ba.is_finite(), bn.is_finite()) << label;
      if (ba.is_finite()) EXPECT_NEAR(ba.value(), bn.value(), 1e-8 * std::max(1.0, ba.value())) << label;
      for (double v : dual_grid(analytic, t)) {
        const ExtReal a = analytic.value(t, v);
        const ExtReal n = numeric.value(t, v);
        ASSERT_EQ(a.is_finite(), n.is_finite()) << label << " v=" << v;
        if (a.is_finite()) EXPECT_NEAR(a.value(), n.value(), 1e-8 * std::max(1.0, a.value())) << label << " v=" << v;
      }
    }
  }
}
