#include "mo/cli/instance.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "mo/core.hpp"
#include "mo/errors.hpp"

namespace mo::cli {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + "." + key, "missing");
  return *it;
}

// Numbers, or the strings "inf" / "infinity".
double number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  }
  fail(where, "expected a number");
}

double number_field(const json& obj, const std::string& key, const std::string& where) {
  return number(field(obj, key, where), where + "." + key);
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? number_field(obj, key, where) : fallback;
}

std::vector<double> array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> per_atom(const json& obj, const std::string& key, const GridMeasureSpace& space,
                             const std::string& where) {
  auto v = array(field(obj, key, where), where + "." + key);
  if (v.size() != space.size())
    fail(where + "." + key, "has " + std::to_string(v.size()) + " entries for " + std::to_string(space.size()) + " atoms");
  return v;
}

Profile atom_profile(const GridMeasureSpace& space, std::vector<double> values) {
  std::vector<double> nodes;
  for (const auto& a : space.atoms()) nodes.push_back(a.t);
  return Profile::table(std::move(nodes), std::move(values));
}

GridMeasureSpace parse_space(const json& s) {
  if (!s.is_object()) fail("space", "expected an object");
  GridMeasureSpace space = [&] {
    if (s.contains("uniform")) {
      const double n = number_field(s, "uniform", "space");
      if (!(n >= 1.0) || n != std::floor(n) || n > 1e7) fail("space.uniform", "expected a positive integer");
      return GridMeasureSpace::uniform(static_cast<std::size_t>(n));
    }
    const json& atoms = field(s, "atoms", "space");
    if (!atoms.is_array() || atoms.empty()) fail("space.atoms", "expected a non-empty array");
    std::vector<Atom> out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string where = "space.atoms[" + std::to_string(i) + "]";
      const double t = number_field(atoms[i], "t", where);
      const double w = number_field(atoms[i], "w", where);
      if (!std::isfinite(t)) fail(where + ".t", "must be finite");
      if (!(w > 0.0) || !std::isfinite(w)) fail(where + ".w", "weight must be finite and > 0");
      if (!out.empty() && !(t > out.back().t)) fail(where + ".t", "coordinates must be strictly increasing");
      out.push_back({t, w});
    }
    return GridMeasureSpace(std::move(out));
  }();
  if (s.contains("refine")) {
    const double k = number_field(s, "refine", "space");
    if (!(k >= 1.0) || k != std::floor(k) || k > 1e6) fail("space.refine", "expected a positive integer");
    space = space.refine(static_cast<std::size_t>(k));
  }
  return space;
}

std::vector<QuadPiece> parse_pieces(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of pieces");
  std::vector<QuadPiece> pieces;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    QuadPiece p;
    if (j[i].is_array()) {
      const auto v = array(j[i], w);
      if (v.size() != 3) fail(w, "expected [start, slope, curvature]");
      p.start = v[0];
      p.slope = v[1];
      p.curvature = v[2];
    } else {
      p.start = number_field(j[i], "start", w);
      p.slope = number_field(j[i], "slope", w);
      p.curvature = number_or(j[i], "curvature", 0.0, w);
    }
    pieces.push_back(p);
  }
  return pieces;
}

}  // namespace

const SimpleFunction& Instance::function(const std::string& name) const {
  for (const auto& [n, f] : functions)
    if (n == name) return f;
  throw InputError("functions." + name + ": no such function in the instance");
}

OrliczGenerator parse_generator(const json& phi, const GridMeasureSpace& space, const std::string& where) {
  if (!phi.is_object()) fail(where, "expected an object");
  const json& fam = field(phi, "family", where);
  if (!fam.is_string()) fail(where + ".family", "expected a string");
  const std::string family = fam.get<std::string>();
  try {
    if (family == "power") {
      const double p = number_field(phi, "p", where);
      if (!(p > 1.0) || !std::isfinite(p)) fail(where + ".p", "exponent must be finite and > 1");
      return gen::power(p);
    }
    if (family == "varexp") {
      auto p = per_atom(phi, "p_values", space, where);
      for (std::size_t i = 0; i < p.size(); ++i)
        if (!(p[i] > 1.0) || !std::isfinite(p[i]))
          fail(where + ".p_values[" + std::to_string(i) + "]", "exponent must be finite and > 1");
      return gen::variable_exponent(atom_profile(space, std::move(p)));
    }
    if (family == "power_law") {
      auto c = per_atom(phi, "c_values", space, where);
      auto p = per_atom(phi, "p_values", space, where);
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 1.0) || !std::isfinite(p[i]))
          fail(where + ".p_values[" + std::to_string(i) + "]", "exponent must be finite and > 1");
        if (!(c[i] > 0.0) || !std::isfinite(c[i]))
          fail(where + ".c_values[" + std::to_string(i) + "]", "coefficient must be finite and > 0");
      }
      return gen::power_law(atom_profile(space, std::move(c)), atom_profile(space, std::move(p)));
    }
    if (family == "expm1") return gen::exp_minus_one();
    if (family == "entropy") return gen::entropy();
    if (family == "linear") {
      const double slope = number_or(phi, "slope", 1.0, where);
      if (!(slope > 0.0) || !std::isfinite(slope)) fail(where + ".slope", "must be finite and > 0");
      return gen::linear(slope);
    }
    if (family == "indicator") {
      const double c = number_field(phi, "c", where);
      if (!(c > 0.0) || !std::isfinite(c)) fail(where + ".c", "threshold must be finite and > 0");
      return gen::indicator(c);
    }
    if (family == "kinked_quadratic") return gen::kinked_quadratic();
    if (family == "kinked_quadratic_linear") return gen::kinked_quadratic_linear();
    if (family == "plq") {
      const double b = number_or(phi, "bound", std::numeric_limits<double>::infinity(), where);
      if (!(b > 0.0)) fail(where + ".bound", "must be > 0");
      const ExtReal bound = std::isfinite(b) ? ExtReal::finite(b) : ExtReal::infinity();
      return gen::piecewise_quadratic(parse_pieces(field(phi, "pieces", where), where + ".pieces"), bound);
    }
    if (family == "truncated") {
      const double n = number_field(phi, "n", where);
      if (!(n > 0.0) || !std::isfinite(n)) fail(where + ".n", "level must be finite and > 0");
      return gen::truncated(parse_generator(field(phi, "base", where), space, where + ".base"), n);
    }
  } catch (const DomainError& e) {
    fail(where, e.what());
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (what.rfind(where, 0) == 0) throw;
    fail(where, what);
  }
  fail(where + ".family", "unknown family '" + family + "'");
}

Instance parse_instance_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
  if (!root.is_object()) fail("instance", "expected a JSON object");
  GridMeasureSpace space = parse_space(field(root, "space", "instance"));
  OrliczGenerator phi = parse_generator(field(root, "phi", "instance"), space);

  const auto violations = validate_generator(phi, space, default_sample_grid(phi, space));
  if (!violations.empty()) {
    const auto& v = violations.front();
    std::size_t atom = 0;
    while (atom + 1 < space.size() && space[atom].t != v.t) ++atom;
    std::ostringstream os;
    os << "generator violates '" << v.invariant << "' at atom " << atom << " (t=" << v.t << ")";
    if (!v.detail.empty()) os << ": " << v.detail;
    fail("phi", os.str());
  }

  std::vector<std::pair<std::string, SimpleFunction>> functions;
  if (root.contains("functions")) {
    const json& fs = root["functions"];
    if (!fs.is_object()) fail("functions", "expected an object of named arrays");
    for (auto it = fs.begin(); it != fs.end(); ++it) {
      const std::string where = "functions." + it.key();
      auto v = array(it.value(), where);
      if (v.size() != space.size())
        fail(where, "has " + std::to_string(v.size()) + " values for " + std::to_string(space.size()) + " atoms");
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i])) fail(where + "[" + std::to_string(i) + "]", "must be finite");
      functions.emplace_back(it.key(), SimpleFunction(space, std::move(v)));
    }
  }
  return Instance{std::move(space), std::move(phi), std::move(functions), text};
}

Instance parse_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open instance file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str());
}

}  // namespace mo::cli
