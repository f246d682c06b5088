#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mo/ext_real.hpp"
#include "mo/measure.hpp"

namespace mo::cli {

using Json = nlohmann::ordered_json;

struct Report {
  std::string command;
  std::string inputs_digest;
  Json results = Json::object();
  Json tolerances = Json::object();
  std::optional<double> wall_time;  ///< seconds; only with --timing
};

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Non-finite doubles become the strings "inf" / "-inf" / "nan".
Json num(double x);
Json num(ExtReal x);
Json values(const SimpleFunction& f);
Json values(const std::vector<ExtReal>& f);

/// Inverse of num(): accepts numbers and the "inf" strings.
double read_num(const Json& j);

Json to_json(const Report& r);
std::string render_json(const Report& r);
/// Aligned "key  value" lines; nested values are printed as compact JSON.
std::string render_text(const Report& r);

}  // namespace mo::cli
