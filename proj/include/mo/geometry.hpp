#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mo/duality.hpp"
#include "mo/generator.hpp"
#include "mo/measure.hpp"
#include "mo/norms.hpp"

namespace mo {

struct SupportFunctional {
  SimpleFunction v;
  double s_norm = 0.0;
  double norm_value = 0.0;  ///< dual_functional_norm of (v, s_norm)
  double achieved = 0.0;    ///< sum w u v
  double k = 0.0;           ///< k_u* used for the selection; 0 on the degenerate branch
  bool degenerate = false;
  /// s_norm > 0: a singular part is needed, which has no realization on a finite grid.
  bool non_atomic_limit = false;
};

/// Throws DomainError for u = 0.
SupportFunctional construct_support_functional(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                               const SimpleFunction& u);

enum class ClauseStatus { pass, fail, unverifiable };
std::string to_string(ClauseStatus s);

struct ClauseResult {
  std::string name;
  double k = 0.0;  ///< probed k (0 on the degenerate branch)
  double value = 0.0;
  double threshold = 0.0;
  ClauseStatus status = ClauseStatus::pass;
  std::string note;
};

struct SupportVerification {
  bool degenerate = false;
  std::vector<double> probed_k;
  std::vector<ClauseResult> clauses;
  ClauseStatus overall = ClauseStatus::pass;
};

/// Checks the support-functional clauses for f = (v, s_norm) with band eps_eq, at k*, k** and interior
/// points of K(u) when it is a proper interval.
SupportVerification verify_support_functional(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                              const SimpleFunction& u, const DualDensity& f);

enum class SmoothVerdict { smooth, not_smooth };
enum class KBranch { nonempty, empty };
std::string to_string(SmoothVerdict v);
std::string to_string(KBranch b);

struct Condition {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct SmoothnessReport {
  SmoothVerdict verdict = SmoothVerdict::smooth;
  KBranch branch = KBranch::nonempty;
  std::vector<Condition> conditions;
  std::optional<std::pair<SimpleFunction, SimpleFunction>> witness;
  std::vector<std::string> notes;
};

/// Throws DomainError for u = 0.
SmoothnessReport classify_smooth_point(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                       const SimpleFunction& u);

struct DensityCountOptions {
  int resolution = 400;
  double tolerance = 1e-7;   ///< relative slack on the pairing for near-maximizers
  double separation = 1e-2;  ///< sup-distance, relative to max(1, largest magnitude), for distinct classes
  Execution exec = Execution::parallel;
};

struct DensityCount {
  int classes = 0;  ///< 1 or 2 (the search stops at two)
  double best = 0.0;
  std::optional<SimpleFunction> first;
  std::optional<SimpleFunction> second;
};

/// Brute-force count of densities attaining sup{sum w u v : I_{Phi*}(v) <= 1}: per-atom grids on every atom
/// except the last support atom, which takes the largest feasible magnitude. At most kOracleMaxAtoms atoms.
DensityCount count_support_densities(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u,
                                     const DensityCountOptions& options = {});

struct AtomEvidence {
  double t = 0.0;
  bool pass = false;
  std::string detail;
};

struct SpaceSmoothnessReport {
  bool cond_a = false;  ///< Phi*(t, b_{Phi*}(t)) infinite
  bool cond_b = false;  ///< Delta_2
  bool cond_c = false;  ///< C^1 with Phi'_+(t,0) = 0
  std::vector<AtomEvidence> evidence_a;
  std::vector<AtomEvidence> evidence_c;
  std::string evidence_b;
  bool verdict = false;

  /// Names of the failing conditions, e.g. {"a", "c"}.
  std::vector<std::string> failing() const;
};

struct SpaceSmoothnessOptions {
  /// Constant used to sample Delta_2 when the family carries no analytic information.
  double fallback_K = 64.0;
  Delta2Options delta2;
};

SpaceSmoothnessReport check_space_smoothness(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                             const SpaceSmoothnessOptions& options = {});

struct GapFunction {
  std::vector<ExtReal> u_delta;
  std::vector<bool> h_mask;  ///< u_delta finite
  bool postcondition = true;  ///< gap at every finite u_delta is >= delta - 1e-9
};

/// u_delta(t) = sup{u >= 0 : Phi'_+(t,x) - Phi'_-(t,x) < delta for all 0 <= x <= u}. Throws InputError for
/// delta <= 0.
GapFunction smoothness_gap_function(const OrliczGenerator& gen, const GridMeasureSpace& space, double delta);

/// Phi'_+(t,x) - Phi'_-(t,x), infinite at a finite b_Phi(t).
ExtReal derivative_gap(const OrliczGenerator& gen, double t, double x);

}  // namespace mo
