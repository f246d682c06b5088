#include "mo/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "mo/errors.hpp"

namespace mo {
namespace {

// FNV-1a over the raw bit patterns of (t, w).
std::uint64_t fingerprint_of(const std::vector<Atom>& atoms) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(atoms.size());
  for (const auto& a : atoms) {
    mix(std::bit_cast<std::uint64_t>(a.t));
    mix(std::bit_cast<std::uint64_t>(a.w));
  }
  return h;
}

}  // namespace

GridMeasureSpace::GridMeasureSpace(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InputError("measure space: atom list is empty");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    if (!std::isfinite(a.t)) throw InputError("measure space: atom " + std::to_string(i) + " has non-finite t");
    if (!(a.w > 0.0) || !std::isfinite(a.w))
      throw InputError("measure space: atom " + std::to_string(i) + " has non-positive weight w=" + std::to_string(a.w));
    if (i > 0 && !(atoms_[i - 1].t < a.t))
      throw InputError("measure space: atom " + std::to_string(i) + " coordinate not strictly increasing");
    total_mass_ += a.w;
  }
  fingerprint_ = fingerprint_of(atoms_);
}

GridMeasureSpace GridMeasureSpace::uniform(std::size_t n) {
  if (n == 0) throw InputError("measure space: uniform grid needs n > 0");
  std::vector<Atom> atoms(n);
  const double w = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) atoms[i] = {(static_cast<double>(i) + 0.5) * w, w};
  return GridMeasureSpace(std::move(atoms));
}

std::pair<double, double> GridMeasureSpace::cell(std::size_t i) const {
  double width = atoms_[i].w;
  if (i > 0) width = std::min(width, atoms_[i].t - atoms_[i - 1].t);
  if (i + 1 < atoms_.size()) width = std::min(width, atoms_[i + 1].t - atoms_[i].t);
  return {atoms_[i].t - 0.5 * width, atoms_[i].t + 0.5 * width};
}

GridMeasureSpace GridMeasureSpace::refine(std::size_t k) const {
  if (k == 0) throw InputError("measure space: refine factor must be positive");
  std::vector<Atom> out;
  out.reserve(atoms_.size() * k);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto [lo, hi] = cell(i);
    const double sub = (hi - lo) / static_cast<double>(k);
    const double w = atoms_[i].w / static_cast<double>(k);
    for (std::size_t j = 0; j < k; ++j) out.push_back({lo + (static_cast<double>(j) + 0.5) * sub, w});
  }
  return GridMeasureSpace(std::move(out));
}

SimpleFunction::SimpleFunction(const GridMeasureSpace& space, std::vector<double> values)
    : values_(std::move(values)), fingerprint_(space.fingerprint()) {
  if (values_.size() != space.size())
    throw InputError("simple function: " + std::to_string(values_.size()) + " values for " +
                     std::to_string(space.size()) + " atoms");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i])) throw InputError("simple function: non-finite value at atom " + std::to_string(i));
}

SimpleFunction SimpleFunction::zero(const GridMeasureSpace& space) {
  return SimpleFunction(space, std::vector<double>(space.size(), 0.0));
}

SimpleFunction SimpleFunction::constant(const GridMeasureSpace& space, double c) {
  return SimpleFunction(space, std::vector<double>(space.size(), c));
}

bool SimpleFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

std::vector<bool> SimpleFunction::support() const {
  std::vector<bool> s(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) s[i] = std::fabs(values_[i]) > 0.0;
  return s;
}

SimpleFunction SimpleFunction::scaled(double c) const {
  std::vector<double> v(values_);
  for (auto& x : v) x *= c;
  return SimpleFunction(fingerprint_, std::move(v));
}

SimpleFunction SimpleFunction::abs() const {
  std::vector<double> v(values_);
  for (auto& x : v) x = std::fabs(x);
  return SimpleFunction(fingerprint_, std::move(v));
}

SimpleFunction SimpleFunction::restricted(const std::vector<bool>& mask) const {
  if (mask.size() != values_.size()) throw InputError("simple function: mask length mismatch");
  std::vector<double> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!mask[i]) v[i] = 0.0;
  return SimpleFunction(fingerprint_, std::move(v));
}

SimpleFunction SimpleFunction::refined(const GridMeasureSpace& refined_space, std::size_t k) const {
  std::vector<double> v;
  v.reserve(values_.size() * k);
  for (double x : values_)
    for (std::size_t j = 0; j < k; ++j) v.push_back(x);
  return SimpleFunction(refined_space, std::move(v));
}

SimpleFunction operator+(const SimpleFunction& a, const SimpleFunction& b) {
  if (a.fingerprint_ != b.fingerprint_ || a.size() != b.size())
    throw InputError("simple function: sum of functions on different spaces");
  std::vector<double> v(a.values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.values_[i];
  return SimpleFunction(a.fingerprint_, std::move(v));
}

void require_same_space(const GridMeasureSpace& space, const SimpleFunction& u) {
  if (u.space_fingerprint() != space.fingerprint() || u.size() != space.size())
    throw InputError("simple function does not belong to this measure space");
}

double pairing(const GridMeasureSpace& space, const SimpleFunction& u, const SimpleFunction& v) {
  require_same_space(space, u);
  require_same_space(space, v);
  double s = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) s += space[i].w * u[i] * v[i];
  return s;
}

}  // namespace mo
