#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "mo/errors.hpp"

namespace mo::detail {

inline constexpr int kMaxBracketSteps = 200;

/// Final bracket of a monotone predicate: pred(below) == false, pred(above) == true.
struct Bracket {
  double below = 0.0;
  double above = 0.0;
};

/// Bisects a predicate that is false on (0, x*) and true on (x*, inf) (or the reverse ordering of a
/// nondecreasing truth value) until above - below <= rel_tol * above. Both endpoints must already bracket.
template <class Pred>
Bracket bisect(Pred&& pred, double below, double above, double rel_tol) {
  for (int it = 0; it < 400 && above - below > rel_tol * above; ++it) {
    const double mid = 0.5 * (below + above);
    if (mid <= below || mid >= above) break;
    if (pred(mid))
      above = mid;
    else
      below = mid;
  }
  return {below, above};
}

/// Starting from x0 > 0, doubles/halves until the predicate (false below x*, true above) is bracketed.
/// Throws BracketError after kMaxBracketSteps steps in one direction.
template <class Pred>
Bracket find_bracket(Pred&& pred, double x0, const char* what) {
  double lo = x0;
  double hi = x0;
  if (pred(x0)) {
    lo = 0.5 * x0;
    int steps = 0;
    while (pred(lo)) {
      hi = lo;
      lo *= 0.5;
      if (++steps > kMaxBracketSteps || lo == 0.0)
        throw BracketError(std::string(what) + ": predicate still true after halving " +
                           std::to_string(kMaxBracketSteps) + " times");
    }
  } else {
    hi = 2.0 * x0;
    int steps = 0;
    while (!pred(hi)) {
      lo = hi;
      hi *= 2.0;
      if (++steps > kMaxBracketSteps || !std::isfinite(hi))
        throw BracketError(std::string(what) + ": predicate still false after doubling " +
                           std::to_string(kMaxBracketSteps) + " times");
    }
  }
  return {lo, hi};
}

/// Golden-section maximization of a unimodal objective on [a, b]. Returns (argmax, value); the endpoints
/// are compared explicitly so boundary maxima are returned exactly.
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double rel_tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  const double fa = f(a);
  const double fb = f(b);
  double lo = a;
  double hi = b;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  const double scale = std::fmax(std::fabs(b), 1e-300);
  for (int it = 0; it < 300 && hi - lo > rel_tol * scale; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    }
  }
  std::pair<double, double> best = (f1 >= f2) ? std::pair{x1, f1} : std::pair{x2, f2};
  if (fa >= best.second) best = {a, fa};
  if (fb > best.second) best = {b, fb};
  return best;
}

}  // namespace mo::detail
