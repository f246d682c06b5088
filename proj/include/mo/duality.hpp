#pragma once

#include <vector>

#include "mo/generator.hpp"
#include "mo/measure.hpp"

namespace mo {

/// Order-continuous density v plus the norm of an abstract singular part.
struct DualDensity {
  SimpleFunction v;
  double s_norm = 0.0;
};

enum class Execution { serial, parallel };

inline constexpr std::size_t kOracleMaxAtoms = 4;

struct BruteForceResult {
  double value = 0.0;  ///< pairing achieved by `density`, a lower bound of the supremum
  SimpleFunction density;
};

/// sup{ sum w u v : I_{Phi*}(v) <= 1 } by grid enumeration over per-atom magnitudes (sign of v follows u),
/// the last support atom absorbing the remaining modular budget, then one round of coordinatewise golden
/// polish. Throws InputError for more than kOracleMaxAtoms atoms.
BruteForceResult orlicz_norm_bruteforce(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                        const SimpleFunction& u, int resolution,
                                        Execution exec = Execution::parallel);

/// sup{ sum w u v : ||v||_{Phi*,0} <= 1 }, searched over directions of v with the Amemiya norm of the
/// conjugate as the constraint. Throws InputError when resolution^(m-1) exceeds 2e6 for m support atoms.
BruteForceResult luxemburg_norm_bruteforce(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                           const SimpleFunction& u, int resolution,
                                           Execution exec = Execution::parallel);

/// ||u||_Phi ||v||_{Phi*,0} - |sum w u v|.
double holder_gap(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u,
                  const SimpleFunction& v);

/// inf{lambda > 0 : I_{Phi*}(v/lambda) + s_norm/lambda <= 1}.
double dual_functional_norm(const OrliczGenerator& gen, const GridMeasureSpace& space, const DualDensity& d);

struct TruncationStep {
  double n = 0.0;
  double norm = 0.0;  ///< Luxemburg norm under Phi_n
};

struct TruncationSequence {
  std::vector<TruncationStep> steps;
  double limit = 0.0;      ///< Luxemburg norm under Phi
  double final_gap = 0.0;  ///< limit - last norm
  bool nondecreasing = true;
};

/// Throws InputError unless n_list is strictly increasing and positive.
TruncationSequence truncated_norm_sequence(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                           const SimpleFunction& u, const std::vector<double>& n_list);

}  // namespace mo
