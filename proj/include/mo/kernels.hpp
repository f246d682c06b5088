#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mo/ext_real.hpp"
#include "mo/generator.hpp"
#include "mo/measure.hpp"

namespace mo::kernels {

/// Atom count at which modular() switches to the OpenMP kernel.
inline constexpr std::size_t kParallelThreshold = 2048;

/// Weighted generator sum, single thread. Terms are accumulated in atom order with compensated summation.
ExtReal weighted_phi_sum_serial(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                std::span<const double> mags);
/// Same sum; per-atom evaluation is spread over OpenMP threads, the reduction runs in atom order, so the
/// result is bitwise identical to the serial kernel.
ExtReal weighted_phi_sum_parallel(const OrliczGenerator& gen, const GridMeasureSpace& space,
                                  std::span<const double> mags);

struct ScanBest {
  double value = -1.0;
  std::size_t index = 0;  ///< smallest index attaining value; count when nothing is feasible
};

/// max over i < count of score(i), ignoring negative scores (infeasible points). Ties go to the smaller index.
ScanBest argmax_scan_serial(std::size_t count, const std::function<double(std::size_t)>& score);
/// OpenMP version with a deterministic tie-break; same result as the serial scan.
ScanBest argmax_scan_parallel(std::size_t count, const std::function<double(std::size_t)>& score);

}  // namespace mo::kernels
