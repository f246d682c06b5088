#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mo {

struct Atom {
  double t = 0.0;  ///< coordinate
  double w = 0.0;  ///< weight (mass), > 0
};

/// Finite list of weighted atoms standing in for a non-atomic measure space. Theorems that need
/// non-atomicity are exercised along refine() sequences.
class GridMeasureSpace {
 public:
  /// Throws InputError unless the list is non-empty, weights are positive and coordinates strictly
  /// increasing.
  explicit GridMeasureSpace(std::vector<Atom> atoms);

  /// Midpoints of a uniform partition of [0,1] into n cells, each of weight 1/n.
  static GridMeasureSpace uniform(std::size_t n);

  /// Splits every atom into k sub-atoms of weight w/k spread over the atom's cell.
  GridMeasureSpace refine(std::size_t k) const;

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }
  double total_mass() const { return total_mass_; }
  std::uint64_t fingerprint() const { return fingerprint_; }

  /// Half-open cell [lo, hi) represented by atom i: centred on t_i, width min(w_i, distance to neighbours).
  std::pair<double, double> cell(std::size_t i) const;

  friend bool operator==(const GridMeasureSpace& a, const GridMeasureSpace& b) {
    return a.fingerprint_ == b.fingerprint_ && a.atoms_.size() == b.atoms_.size();
  }

 private:
  std::vector<Atom> atoms_;
  double total_mass_ = 0.0;
  std::uint64_t fingerprint_ = 0;
};

/// Real values on the atoms of one GridMeasureSpace.
class SimpleFunction {
 public:
  SimpleFunction(const GridMeasureSpace& space, std::vector<double> values);
  static SimpleFunction zero(const GridMeasureSpace& space);
  static SimpleFunction constant(const GridMeasureSpace& space, double c);

  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  std::uint64_t space_fingerprint() const { return fingerprint_; }

  bool is_zero() const;
  /// supp u = atoms with |u(t_i)| > 0.
  std::vector<bool> support() const;
  bool in_support(std::size_t i) const { return values_[i] != 0.0; }

  SimpleFunction scaled(double c) const;
  SimpleFunction abs() const;
  /// u * chi_A for a boolean mask A.
  SimpleFunction restricted(const std::vector<bool>& mask) const;
  /// Values repeated k times each, matching space.refine(k).
  SimpleFunction refined(const GridMeasureSpace& refined_space, std::size_t k) const;

  friend SimpleFunction operator+(const SimpleFunction& a, const SimpleFunction& b);

 private:
  SimpleFunction(std::uint64_t fp, std::vector<double> values) : values_(std::move(values)), fingerprint_(fp) {}

  std::vector<double> values_;
  std::uint64_t fingerprint_ = 0;
};

/// Throws InputError if u was not built on `space`.
void require_same_space(const GridMeasureSpace& space, const SimpleFunction& u);

/// sgn with sgn(0) = 0.
inline double sgn(double x) { return (x > 0.0) ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// Sum of w_i * u_i * v_i.
double pairing(const GridMeasureSpace& space, const SimpleFunction& u, const SimpleFunction& v);

}  // namespace mo
