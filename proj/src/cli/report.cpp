#include "mo/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "mo/errors.hpp"

namespace mo::cli {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json num(ExtReal x) { return x.is_infinite() ? Json("inf") : Json(x.value()); }

Json values(const SimpleFunction& f) {
  Json a = Json::array();
  for (double x : f.values()) a.push_back(num(x));
  return a;
}

Json values(const std::vector<ExtReal>& f) {
  Json a = Json::array();
  for (const auto& x : f) a.push_back(num(x));
  return a;
}

double read_num(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InputError("report: expected a number, got " + j.dump());
}

Json to_json(const Report& r) {
  Json j;
  j["command"] = r.command;
  j["inputs_digest"] = r.inputs_digest;
  j["results"] = r.results;
  j["tolerances"] = r.tolerances;
  if (r.wall_time) j["wall_time_s"] = *r.wall_time;
  return j;
}

std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

namespace {

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    return;
  }
  if (j.is_array() && !j.empty() && (j.front().is_object())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    return;
  }
  rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
}

}  // namespace

std::string render_text(const Report& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("command", r.command);
  rows.emplace_back("inputs_digest", r.inputs_digest);
  flatten(r.results, "", rows);
  flatten(r.tolerances, "tolerance", rows);
  if (r.wall_time) rows.emplace_back("wall_time_s", Json(*r.wall_time).dump());
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  return os.str();
}

}  // namespace mo::cli
