#pragma once

namespace mo {

/// Relative width at which bisections stop.
inline constexpr double kBisectRelTol = 1e-12;
/// Golden-section tolerance of numeric conjugates.
inline constexpr double kConjugateRelTol = 1e-10;
/// Base band for "= 1" / "= 0" clause checks.
inline constexpr double kEpsEqBase = 1e-7;

/// kEpsEqBase scaled by the MO_TOL_OVERRIDE environment variable when it holds a positive number.
double eps_eq();

}  // namespace mo
