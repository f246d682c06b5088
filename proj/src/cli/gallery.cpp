#include "mo/cli/gallery.hpp"

#include <cmath>
#include <limits>

#include "mo/core.hpp"
#include "mo/detail/search.hpp"
#include "mo/errors.hpp"

namespace mo::cli {

OrliczGenerator gallery_generator() {
  return gen::variable_exponent(
      Profile{[](double t) { return 1.0 + 1.0 / t; }, 2.0, std::numeric_limits<double>::infinity(), "1+1/t"});
}

GalleryFunctions gallery_functions(std::size_t resolution) {
  if (resolution < 2) throw InputError("gallery: resolution must be >= 2");
  const auto phi = gallery_generator();
  auto space = GridMeasureSpace::uniform(resolution);
  const std::size_t m = space.size();

  std::vector<int> block(m);
  int blocks = 0;
  for (std::size_t i = 0; i < m; ++i) {
    block[i] = static_cast<int>(std::ceil(-std::log2(space[i].t)));
    blocks = std::max(blocks, block[i]);
  }
  std::vector<double> lower(m, 0.0);
  std::vector<double> upper(m, 0.0);
  GalleryFunctions out{space, SimpleFunction::zero(space), SimpleFunction::zero(space), {}, {}};
  for (int n = 1; n <= blocks; ++n) {
    auto level = [&](double c) {
      std::vector<double> mags(m, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        if (block[i] == n) mags[i] = c;
      return modular_raw(phi, space, mags);
    };
    if (level(1.0).value() == 0.0) continue;
    auto above_one = [&](double c) { return level(c) > 1.0; };
    auto br = detail::find_bracket(above_one, 1.0, "gallery level");
    br = detail::bisect(above_one, br.below, br.above, 1e-14);
    const double c = br.below;
    const double target = std::ldexp(1.0, -n);
    auto too_big = [&](double lambda) { return level(lambda * c) > target; };
    const auto lb = detail::bisect(too_big, 0.0, 1.0, 1e-14);
    out.levels.push_back(c);
    out.lambdas.push_back(lb.below);
    for (std::size_t i = 0; i < m; ++i) {
      if (block[i] != n) continue;
      upper[i] = c;
      lower[i] = lb.below * c;
    }
  }
  out.lower = SimpleFunction(space, std::move(lower));
  out.upper = SimpleFunction(space, std::move(upper));
  return out;
}

GalleryReport gallery(const std::vector<std::size_t>& ladder) {
  const auto phi = gallery_generator();
  GalleryReport rep;
  ExtReal previous{};
  for (std::size_t n : ladder) {
    const auto f = gallery_functions(n);
    GalleryRow row{n, f.levels.size(), {}, {}};
    for (double lambda : kGalleryScales) {
      row.lower.push_back(modular(phi, f.space, f.lower.scaled(lambda)));
      row.upper.push_back(modular(phi, f.space, f.upper.scaled(lambda)));
    }
    const ExtReal at = row.lower.back();
    if (!rep.rows.empty() && at < previous) rep.monotone = false;
    previous = at;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace mo::cli
