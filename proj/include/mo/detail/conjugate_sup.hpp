#pragma once

#include "mo/generator.hpp"

namespace mo::detail {

struct SupResult {
  ExtReal value;
  double argmax = 0.0;
};

/// sup_{u >= 0} (u v - Phi(t,u)) by golden-section search on the concave objective. The search interval
/// is [0, U] where U doubles from 1 until the right slope v - Phi'_-(t,U) is <= 0 or b_Phi is reached;
/// the boundary point b_Phi is evaluated explicitly. Infinite when the objective is unbounded.
SupResult conjugate_sup(const Family& phi, double t, double v, double rel_tol = 1e-10);

/// lim_{u -> inf} Phi'_-(t,u), the slope at infinity (= b_{Phi*}(t) for finite-valued Phi). Doubling stops
/// once two successive slopes agree to 1e-10 relative.
ExtReal asymptotic_slope(const Family& phi, double t);

}  // namespace mo::detail
