#pragma once

#include <cstddef>
#include <vector>

#include "mo/ext_real.hpp"
#include "mo/generator.hpp"
#include "mo/measure.hpp"

namespace mo::cli {

/// Phi(t,u) = u^{1+1/t}: no Delta_2, finite everywhere.
OrliczGenerator gallery_generator();

/// Grid analogues of u_* and u^* on the uniform grid with `resolution` cells. Cells are grouped into dyadic
/// blocks A_n = {t in (2^-n, 2^-(n-1)]}; on A_n the level c_n gives I(c_n chi_{A_n}) = 1 and lambda_n is the
/// largest scale with I(lambda_n c_n chi_{A_n}) <= 2^-n. u_* = sum lambda_n c_n chi_{A_n}, u^* = sum c_n chi_{A_n}.
struct GalleryFunctions {
  GridMeasureSpace space;
  SimpleFunction lower;  ///< u_*
  SimpleFunction upper;  ///< u^*
  std::vector<double> levels;   ///< c_n
  std::vector<double> lambdas;  ///< lambda_n
};
GalleryFunctions gallery_functions(std::size_t resolution);

inline const std::vector<double> kGalleryScales{0.5, 0.99, 1.0, 1.01};

struct GalleryRow {
  std::size_t resolution = 0;
  std::size_t blocks = 0;
  std::vector<ExtReal> lower;  ///< I(lambda u_*) for kGalleryScales
  std::vector<ExtReal> upper;  ///< I(lambda u^*) for kGalleryScales
};

struct GalleryReport {
  std::vector<GalleryRow> rows;
  /// I(1.01 u_*) nondecreasing along the ladder.
  bool monotone = true;
};

GalleryReport gallery(const std::vector<std::size_t>& ladder);

}  // namespace mo::cli
