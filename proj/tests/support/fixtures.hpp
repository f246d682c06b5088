#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mo/generator.hpp"
#include "mo/measure.hpp"

namespace mo::testing {

inline GridMeasureSpace two_atoms() { return GridMeasureSpace({{0.25, 0.5}, {0.75, 0.5}}); }

inline SimpleFunction fn(const GridMeasureSpace& s, std::vector<double> v) { return SimpleFunction(s, std::move(v)); }

struct NamedGenerator {
  std::string label;
  OrliczGenerator gen;
};

inline Profile exponent_two_plus_t() {
  return Profile{[](double t) { return 2.0 + t; }, 2.0, 3.0, "2+t"};
}

/// Every closed-form family, in a fixed order.
inline std::vector<NamedGenerator> builtin_pool() {
  return {
      {"power1.5", gen::power(1.5)},
      {"power2", gen::power(2.0)},
      {"power3", gen::power(3.0)},
      {"varexp", gen::variable_exponent(exponent_two_plus_t())},
      {"expm1", gen::exp_minus_one()},
      {"entropy", gen::entropy()},
      {"linear", gen::linear()},
      {"indicator1", gen::indicator(1.0)},
      {"plq_linear_tail", gen::kinked_quadratic_linear()},
      {"plq_quadratic_tail", gen::kinked_quadratic()},
      {"truncated_power2_n3", gen::truncated(gen::power(2.0), 3.0)},
      {"truncated_indicator_n5", gen::truncated(gen::indicator(1.0), 5.0)},
  };
}

/// u^2 on [0,1], 1 + 2(u-1) on [1,2], then curving up again. On two atoms of weight 1/2 with u = (1,1) the
/// Amemiya minimizer set is [1, 2] and every level-one comparison is exact in floating point.
inline OrliczGenerator flat_interval_generator() {
  return gen::piecewise_quadratic({{0.0, 0.0, 2.0, 0.0}, {1.0, 2.0, 0.0, 0.0}, {2.0, 2.0, 2.0, 0.0}});
}

/// Deterministic source of random instances.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// Random space with n atoms, coordinates in (0,1), weights in [0.05, 1].
  GridMeasureSpace space(int n) {
    std::vector<Atom> atoms;
    double t = 0.0;
    for (int i = 0; i < n; ++i) {
      t += uniform(0.05, 1.0) / n;
      atoms.push_back({t, uniform(0.05, 1.0)});
    }
    return GridMeasureSpace(std::move(atoms));
  }

  /// Random nonzero function with signed entries of magnitude up to `scale`; some entries are 0.
  SimpleFunction function(const GridMeasureSpace& s, double scale = 3.0) {
    std::vector<double> v(s.size());
    bool any = false;
    for (auto& x : v) {
      x = coin(0.15) ? 0.0 : uniform(-scale, scale);
      any = any || x != 0.0;
    }
    if (!any) v[0] = uniform(0.1, scale);
    return SimpleFunction(s, std::move(v));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace mo::testing
