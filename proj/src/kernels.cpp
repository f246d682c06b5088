#include "mo/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include <omp.h>

#include "mo/tolerance.hpp"

namespace mo {

double eps_eq() {
  static const double value = [] {
    const char* env = std::getenv("MO_TOL_OVERRIDE");
    if (env == nullptr) return kEpsEqBase;
    char* end = nullptr;
    const double s = std::strtod(env, &end);
    if (end == env || !(s > 0.0) || !std::isfinite(s)) return kEpsEqBase;
    return kEpsEqBase * s;
  }();
  return value;
}

namespace kernels {
namespace {

// Neumaier summation over terms in index order. A negative entry marks an infinite term.
ExtReal ordered_sum(const std::vector<double>& terms) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : terms) {
    if (x < 0.0) return ExtReal::infinity();
    const double s = sum + x;
    if (std::isinf(s)) return ExtReal::saturating(s);
    comp += (std::fabs(sum) >= std::fabs(x)) ? (sum - s) + x : (x - s) + sum;
    sum = s;
  }
  const double total = sum + comp;
  return ExtReal::saturating(std::isnan(total) ? sum : total);
}

double term(const OrliczGenerator& gen, const Atom& a, double mag) {
  if (mag == 0.0) return 0.0;
  const ExtReal v = gen.value(a.t, mag);
  if (v.is_infinite()) return -1.0;
  return a.w * v.value();
}

}  // namespace

ExtReal weighted_phi_sum_serial(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                std::span<const double> mags) {
  std::vector<double> terms(mags.size());
  for (std::size_t i = 0; i < mags.size(); ++i) terms[i] = term(gen, space[i], mags[i]);
  return ordered_sum(terms);
}

ExtReal weighted_phi_sum_parallel(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                  std::span<const double> mags) {
  const auto n = static_cast<std::ptrdiff_t>(mags.size());
  std::vector<double> terms(mags.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      terms[i] = term(gen, space[i], mags[i]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return ordered_sum(terms);
}

ScanBest argmax_scan_serial(std::size_t count, const std::function<double(std::size_t)>& score) {
  ScanBest best{-1.0, count};
  for (std::size_t i = 0; i < count; ++i) {
    const double s = score(i);
    if (s >= 0.0 && s > best.value) best = {s, i};
  }
  return best;
}

ScanBest argmax_scan_parallel(std::size_t count, const std::function<double(std::size_t)>& score) {
  const int nthreads = omp_get_max_threads();
  std::vector<ScanBest> partial(static_cast<std::size_t>(nthreads), ScanBest{-1.0, count});
  std::exception_ptr failure;
#pragma omp parallel num_threads(nthreads)
  {
    ScanBest local{-1.0, count};
    const int tid = omp_get_thread_num();
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
      try {
        const double s = score(static_cast<std::size_t>(i));
        if (s >= 0.0 && s > local.value) local = {s, static_cast<std::size_t>(i)};
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    partial[static_cast<std::size_t>(tid)] = local;
  }
  if (failure) std::rethrow_exception(failure);
  // Static schedule gives each thread an increasing index range, so scanning threads in order keeps the
  // smallest index among equal values.
  ScanBest best{-1.0, count};
  for (const auto& p : partial)
    if (p.index < count && (p.value > best.value || (p.value == best.value && p.index < best.index))) best = p;
  return best;
}

}  // namespace kernels
}  // namespace mo
