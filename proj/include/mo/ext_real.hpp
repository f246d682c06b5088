#pragma once

#include <compare>
#include <iosfwd>
#include <limits>
#include <string>

#include "mo/errors.hpp"

namespace mo {

/// Nonnegative extended real: either a finite payload >= 0 or +infinity.
///
/// The infinite state is an explicit tag; the payload never holds an IEEE infinity. Multiplication follows
/// the integration convention 0 * inf = 0, so the modular of the zero function vanishes even for
/// generators that jump to infinity.
class ExtReal {
 public:
  constexpr ExtReal() = default;

  static ExtReal finite(double x) {
    if (x != x) throw DomainError("ExtReal: NaN payload");
    if (x < 0.0) throw DomainError("ExtReal: negative payload " + std::to_string(x));
    if (x == std::numeric_limits<double>::infinity()) throw DomainError("ExtReal: IEEE infinity as finite payload");
    return ExtReal(x, false);
  }

  /// Clamps an overflowed IEEE result to the largest finite double. Used by closed-form families whose
  /// mathematical value is finite but exceeds double range.
  static ExtReal saturating(double x) {
    if (x == std::numeric_limits<double>::infinity()) return ExtReal(std::numeric_limits<double>::max(), false);
    return finite(x);
  }

  static constexpr ExtReal infinity() { return ExtReal(0.0, true); }

  constexpr bool is_finite() const { return !inf_; }
  constexpr bool is_infinite() const { return inf_; }

  /// Finite payload. Throws on the infinite tag.
  double value() const {
    if (inf_) throw DomainError("ExtReal: value() of infinity");
    return v_;
  }

  /// IEEE view for printing and plotting only.
  double to_double() const { return inf_ ? std::numeric_limits<double>::infinity() : v_; }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.inf_ || b.inf_) return infinity();
    return saturating(a.v_ + b.v_);
  }
  ExtReal& operator+=(ExtReal o) { return *this = *this + o; }

  /// Scaling by a nonnegative real; 0 * inf = 0.
  friend ExtReal operator*(double c, ExtReal a) {
    if (c < 0.0 || c != c) throw DomainError("ExtReal: scale must be a nonnegative real");
    if (c == 0.0) return ExtReal{};
    if (a.inf_) return infinity();
    return saturating(c * a.v_);
  }
  friend ExtReal operator*(ExtReal a, double c) { return c * a; }

  friend bool operator==(ExtReal a, ExtReal b) { return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_); }
  friend std::partial_ordering operator<=>(ExtReal a, ExtReal b) {
    if (a.inf_ && b.inf_) return std::partial_ordering::equivalent;
    if (a.inf_) return std::partial_ordering::greater;
    if (b.inf_) return std::partial_ordering::less;
    return a.v_ <=> b.v_;
  }
  friend bool operator==(ExtReal a, double x) { return !a.inf_ && a.v_ == x; }
  friend std::partial_ordering operator<=>(ExtReal a, double x) {
    if (a.inf_) return std::partial_ordering::greater;
    return a.v_ <=> x;
  }

  std::string str() const;

 private:
  constexpr ExtReal(double v, bool inf) : v_(v), inf_(inf) {}

  double v_ = 0.0;
  bool inf_ = false;
};

inline ExtReal min(ExtReal a, ExtReal b) { return (b < a) ? b : a; }
inline ExtReal max(ExtReal a, ExtReal b) { return (a < b) ? b : a; }

std::ostream& operator<<(std::ostream& os, ExtReal x);

}  // namespace mo
