#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mo/generator.hpp"
#include "mo/measure.hpp"

namespace mo {

struct KNonEmpty {
  double k_star = 0.0;
  double k_double_star = 0.0;
};
struct KDegenerate {
  double l1_value = 0.0;  ///< sum_i w_i |u_i| b_{Phi*}(t_i)
};
/// Minimizer set of the Amemiya formula.
using KSet = std::variant<KNonEmpty, KDegenerate>;

inline bool is_degenerate(const KSet& k) { return std::holds_alternative<KDegenerate>(k); }

/// inf{lambda > 0 : I_Phi(u/lambda) <= 1}; the returned value is the feasible end of the final bracket.
double luxemburg_norm(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u);

/// I_{Phi*}(Phi'_+(t, k|u(t)|)) restricted to supp u.
ExtReal derivative_modular(const OrliczGenerator& gen, const OrliczGenerator& star, const GridMeasureSpace& space,
                           const SimpleFunction& u, double k);

/// Throws DomainError for u = 0.
KSet k_interval(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u);

/// (1 + I_Phi(k u)) / k.
ExtReal amemiya_objective(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u, double k);

struct AmemiyaResult {
  double value = 0.0;
  std::optional<KSet> kset;  ///< empty for u = 0
};
AmemiyaResult orlicz_amemiya_norm(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u);

/// inf{lambda > 0 : I_Phi(u/lambda) < inf}, atomwise max |u_i| / b_Phi(t_i).
double theta(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u);
/// The same quantity by bisection on finiteness of the modular.
double theta_by_bisection(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u);

struct Delta2Options {
  double horizon = 1e6;  ///< largest sampled u
  int lowest_power = -30;  ///< ladder 1.5 * 2^j starts at this j
};

struct Delta2Verdict {
  bool holds = true;
  /// Witness when violated.
  double t = 0.0;
  double u = 0.0;
  ExtReal lhs;  ///< Phi(t, 2u)
  ExtReal rhs;  ///< K Phi(t, u)
  double ratio = 0.0;  ///< Phi(t,2u) / Phi(t,u), IEEE inf when the numerator is infinite or Phi(t,u) = 0
  std::size_t samples = 0;
};

/// Searches sampled u >= f(t_i) for a violation of Phi(t,2u) <= K Phi(t,u). A `holds` verdict covers the
/// sample only. Throws InputError for K <= 1 or negative f, DomainError when I_Phi(f) is infinite.
Delta2Verdict delta2_check(const OrliczGenerator& gen, const GridMeasureSpace& space, double K, const SimpleFunction& f,
                           const Delta2Options& options = {});

}  // namespace mo
