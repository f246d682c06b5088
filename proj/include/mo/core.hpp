#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mo/ext_real.hpp"
#include "mo/generator.hpp"
#include "mo/measure.hpp"

namespace mo {

/// Phi(t,u). Throws DomainError for u < 0 or NaN.
ExtReal eval_phi(const OrliczGenerator& gen, double t, double u);

struct Subdifferential {
  ExtReal lo;
  ExtReal hi;
};

/// [Phi'_-(t,u), Phi'_+(t,u)], lo = 0 at u = 0. Throws DomainError when u lies beyond b_Phi(t).
Subdifferential subdiff(const OrliczGenerator& gen, double t, double u);

struct GeneratorBounds {
  double a = 0.0;
  ExtReal b;
};

/// a_Phi(t) (largest zero) and b_Phi(t) (end of the finite domain).
GeneratorBounds generator_bounds(const OrliczGenerator& gen, double t);

/// I_Phi(u) = sum_i w_i Phi(t_i, |u_i|). Throws InputError on a space mismatch.
ExtReal modular(const OrliczGenerator& gen, const GridMeasureSpace& space, const SimpleFunction& u);
/// Same sum evaluated on raw per-atom magnitudes (no space check, no sign handling).
ExtReal modular_raw(const OrliczGenerator& gen, const GridMeasureSpace& space, const std::vector<double>& mags);

/// Phi_n(t,u) = int_0^u min(Phi'_-(t,x), n) dx.
OrliczGenerator truncate(const OrliczGenerator& gen, double n);

struct Violation {
  std::string invariant;  ///< "zero", "monotone", "convexity", "right-continuity", "growth", "lsc", "derivative"
  double t = 0.0;
  std::vector<double> points;  ///< witness arguments
  std::string detail;
};

/// Samples the defining conditions of a Musielak-Orlicz function on every atom of `space` against the
/// u values of `sample_grid`. Empty result means no violation on the sample.
std::vector<Violation> validate_generator(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                          const std::vector<double>& sample_grid);

/// 50 points: 0, then log-spaced in [1e-3, 1e2]; clipped to [0, b] when b is finite at every atom.
std::vector<double> default_sample_grid(const OrliczGenerator& gen, const GridMeasureSpace& space);

}  // namespace mo
