#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mo/generator.hpp"
#include "mo/measure.hpp"

namespace mo::cli {

struct Instance {
  GridMeasureSpace space;
  OrliczGenerator phi;
  std::vector<std::pair<std::string, SimpleFunction>> functions;  ///< file order
  std::string source;  ///< raw text the instance was parsed from

  const SimpleFunction& function(const std::string& name) const;
};

/// Throws InputError with a field path, e.g. "space.atoms[1].w: weight must be > 0".
Instance parse_instance_text(const std::string& text);
Instance parse_instance(const std::string& path);

/// The "phi" object alone; `space` supplies the atom coordinates for per-atom parameter arrays.
OrliczGenerator parse_generator(const nlohmann::ordered_json& phi, const GridMeasureSpace& space, const std::string& where = "phi");

}  // namespace mo::cli
