#include "mo/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>

#include "acceptance.hpp"
#include "mo/cli/gallery.hpp"
#include "mo/cli/instance.hpp"
#include "mo/cli/report.hpp"
#include "mo/conjugate.hpp"
#include "mo/core.hpp"
#include "mo/duality.hpp"
#include "mo/errors.hpp"
#include "mo/geometry.hpp"
#include "mo/norms.hpp"
#include "mo/tolerance.hpp"

namespace mo::cli {
namespace {

struct Options {
  std::string instance;
  std::string function = "u1";
  bool json = false;
  bool timing = false;

  // per-subcommand
  std::string which = "all";
  std::size_t atom = 0;
  std::vector<double> v_grid;
  std::string density;
  double singular = 0.0;
  int resolution = 400;
  bool serial = false;
  double K = 2.0;
  std::string threshold;
  double horizon = 1e6;
  double delta = 0.5;
  std::vector<std::size_t> ladder{64, 256, 1024, 4096};
};

Json tolerances() {
  Json t;
  t["eps_eq"] = eps_eq();
  t["bisect_rel"] = kBisectRelTol;
  t["conjugate_rel"] = kConjugateRelTol;
  return t;
}

Json kset_json(const KSet& k) {
  Json j;
  if (const auto* d = std::get_if<KDegenerate>(&k)) {
    j["degenerate"] = true;
    j["l1_value"] = num(d->l1_value);
  } else {
    const auto& ne = std::get<KNonEmpty>(k);
    j["degenerate"] = false;
    j["k_star"] = num(ne.k_star);
    j["k_double_star"] = num(ne.k_double_star);
  }
  return j;
}

Json norm_results(const Instance& in, const SimpleFunction& u, const std::string& which) {
  Json r;
  const bool all = which == "all";
  if (all || which == "luxemburg") r["luxemburg"] = num(luxemburg_norm(in.phi, in.space, u));
  if (all || which == "orlicz" || which == "amemiya") {
    const auto a = orlicz_amemiya_norm(in.phi, in.space, u);
    r["orlicz"] = num(a.value);
    if (which != "orlicz") {
      if (a.kset) {
        const Json ks = kset_json(*a.kset);
        for (auto it = ks.begin(); it != ks.end(); ++it) r[it.key()] = it.value();
      } else {
        r["degenerate"] = false;
        r["k_star"] = nullptr;
        r["k_double_star"] = nullptr;
      }
    }
  }
  if (all) r["theta"] = num(theta(in.phi, in.space, u));
  return r;
}

Json cmd_norm(const Options& o, const Instance& in) {
  if (o.which != "all" && o.which != "luxemburg" && o.which != "orlicz" && o.which != "amemiya")
    throw InputError("--which: expected luxemburg, orlicz, amemiya or all");
  if (o.function != "all") return norm_results(in, in.function(o.function), o.which);
  Json r;
  for (const auto& [name, u] : in.functions) r[name] = norm_results(in, u, o.which);
  return r;
}

Json cmd_conjugate(const Options& o, const Instance& in) {
  if (o.atom >= in.space.size())
    throw InputError("--atom: index " + std::to_string(o.atom) + " out of range for " + std::to_string(in.space.size()) +
                     " atoms");
  const double t = in.space[o.atom].t;
  const auto star = conjugate(in.phi);
  std::vector<double> grid = o.v_grid;
  if (grid.empty())
    for (int j = 0; j <= 8; ++j) grid.push_back(0.5 * j);
  Json rows = Json::array();
  for (double v : grid) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("--v: values must be finite and >= 0");
    Json row;
    row["v"] = num(v);
    row["phi_star"] = num(star.value(t, v));
    rows.push_back(row);
  }
  Json r;
  r["atom"] = o.atom;
  r["t"] = num(t);
  r["conjugate_family"] = star.name();
  r["a_star"] = num(star.zero_bound(t));
  r["b_star"] = num(star.domain_bound(t));
  r["table"] = rows;
  return r;
}

Json cmd_dual(const Options& o, const Instance& in) {
  if (o.density.empty()) throw InputError("--density: required");
  if (!(o.singular >= 0.0) || !std::isfinite(o.singular)) throw InputError("--singular: must be finite and >= 0");
  const auto& v = in.function(o.density);
  Json r;
  r["density"] = o.density;
  r["s_norm"] = num(o.singular);
  r["conjugate_modular"] = num(modular(conjugate(in.phi), in.space, v));
  r["norm"] = num(dual_functional_norm(in.phi, in.space, {v, o.singular}));
  return r;
}

Json cmd_oracle(const Options& o, const Instance& in) {
  const auto& u = in.function(o.function);
  const Execution exec = o.serial ? Execution::serial : Execution::parallel;
  const auto orl = orlicz_norm_bruteforce(in.phi, in.space, u, o.resolution, exec);
  const auto lux = luxemburg_norm_bruteforce(in.phi, in.space, u, o.resolution, exec);
  const double am = orlicz_amemiya_norm(in.phi, in.space, u).value;
  const double ln = luxemburg_norm(in.phi, in.space, u);
  Json r;
  r["resolution"] = o.resolution;
  r["orlicz_bruteforce"] = num(orl.value);
  r["orlicz_amemiya"] = num(am);
  r["orlicz_difference"] = num(am - orl.value);
  r["orlicz_density"] = values(orl.density);
  r["luxemburg_bruteforce"] = num(lux.value);
  r["luxemburg"] = num(ln);
  r["luxemburg_difference"] = num(ln - lux.value);
  return r;
}

Json clauses_json(const SupportVerification& v) {
  Json r;
  r["overall"] = to_string(v.overall);
  r["degenerate"] = v.degenerate;
  Json ks = Json::array();
  for (double k : v.probed_k) ks.push_back(num(k));
  r["probed_k"] = ks;
  Json cs = Json::array();
  for (const auto& c : v.clauses) {
    Json j;
    j["name"] = c.name;
    j["k"] = num(c.k);
    j["value"] = num(c.value);
    j["threshold"] = num(c.threshold);
    j["status"] = to_string(c.status);
    if (!c.note.empty()) j["note"] = c.note;
    cs.push_back(j);
  }
  r["clauses"] = cs;
  return r;
}

Json cmd_support(const Options& o, const Instance& in) {
  const auto& u = in.function(o.function);
  const auto f = construct_support_functional(in.phi, in.space, u);
  Json r;
  r["v"] = values(f.v);
  r["s_norm"] = num(f.s_norm);
  r["norm_value"] = num(f.norm_value);
  r["achieved"] = num(f.achieved);
  r["k"] = num(f.k);
  r["degenerate"] = f.degenerate;
  r["non_atomic_limit"] = f.non_atomic_limit;
  r["verification"] = clauses_json(verify_support_functional(in.phi, in.space, u, {f.v, f.s_norm}));
  return r;
}

Json cmd_smooth_point(const Options& o, const Instance& in) {
  const auto rep = classify_smooth_point(in.phi, in.space, in.function(o.function));
  Json r;
  r["verdict"] = to_string(rep.verdict);
  r["branch"] = to_string(rep.branch);
  Json cs = Json::array();
  for (const auto& c : rep.conditions) {
    Json j;
    j["name"] = c.name;
    j["value"] = num(c.value);
    j["threshold"] = num(c.threshold);
    j["pass"] = c.pass;
    cs.push_back(j);
  }
  r["conditions"] = cs;
  if (rep.witness)
    r["witness"] = Json::array({values(rep.witness->first), values(rep.witness->second)});
  else
    r["witness"] = nullptr;
  r["notes"] = rep.notes;
  return r;
}

Json evidence_json(const std::vector<AtomEvidence>& ev) {
  Json a = Json::array();
  for (const auto& e : ev) {
    Json j;
    j["t"] = num(e.t);
    j["pass"] = e.pass;
    j["detail"] = e.detail;
    a.push_back(j);
  }
  return a;
}

Json cmd_smooth_space(const Options&, const Instance& in) {
  const auto rep = check_space_smoothness(in.phi, in.space);
  Json r;
  r["verdict"] = rep.verdict ? "Smooth" : "NotSmooth";
  r["failing"] = rep.failing();
  r["a"] = {{"pass", rep.cond_a}, {"atoms", evidence_json(rep.evidence_a)}};
  r["b"] = {{"pass", rep.cond_b}, {"evidence", rep.evidence_b}};
  r["c"] = {{"pass", rep.cond_c}, {"atoms", evidence_json(rep.evidence_c)}};
  return r;
}

Json cmd_delta2(const Options& o, const Instance& in) {
  const auto f = o.threshold.empty() ? SimpleFunction::zero(in.space) : in.function(o.threshold);
  Delta2Options opt;
  opt.horizon = o.horizon;
  const auto v = delta2_check(in.phi, in.space, o.K, f, opt);
  Json r;
  r["K"] = num(o.K);
  r["holds"] = v.holds;
  if (!v.holds) {
    r["t"] = num(v.t);
    r["u"] = num(v.u);
    r["lhs"] = num(v.lhs);
    r["rhs"] = num(v.rhs);
    r["ratio"] = num(v.ratio);
  }
  r["samples"] = v.samples;
  const auto info = in.phi.delta2();
  r["analytic"] = info.holds ? Json(*info.holds) : Json(nullptr);
  return r;
}

Json cmd_gap(const Options& o, const Instance& in) {
  const auto g = smoothness_gap_function(in.phi, in.space, o.delta);
  Json r;
  r["delta"] = num(o.delta);
  r["u_delta"] = values(g.u_delta);
  r["h_mask"] = g.h_mask;
  r["postcondition"] = g.postcondition;
  return r;
}

Json cmd_gallery(const Options& o) {
  if (o.ladder.empty()) throw InputError("--ladder: needs at least one resolution");
  const auto rep = gallery(o.ladder);
  Json r;
  r["label"] = "heuristic grid analogue of u_* and u^* for Phi(t,u) = u^(1+1/t)";
  r["scales"] = kGalleryScales;
  Json rows = Json::array();
  for (const auto& row : rep.rows) {
    Json j;
    j["resolution"] = row.resolution;
    j["blocks"] = row.blocks;
    j["lower"] = values(row.lower);
    j["upper"] = values(row.upper);
    rows.push_back(j);
  }
  r["rows"] = rows;
  r["lower_at_1.01_nondecreasing"] = rep.monotone;
  return r;
}

std::string joined(const std::vector<std::string>& args) {
  std::string s = "mo";
  for (const auto& a : args) s += " " + a;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Musielak-Orlicz norms, conjugates and smoothness on discretized measure spaces", "mo"};
  app.require_subcommand(1);
  Options o;

  auto with_common = [&](CLI::App* sub, bool needs_instance, bool needs_function) {
    if (needs_instance) sub->add_option("--instance", o.instance, "instance JSON file")->required();
    if (needs_function) sub->add_option("--function", o.function, "function name in the instance");
    sub->add_flag("--json", o.json, "emit a JSON report");
    sub->add_flag("--timing", o.timing, "include wall time");
    return sub;
  };
  auto* norm = with_common(app.add_subcommand("norm", "Luxemburg / Orlicz / Amemiya norms"), true, true);
  norm->add_option("--which", o.which, "luxemburg|orlicz|amemiya|all");
  auto* conj = with_common(app.add_subcommand("conjugate", "table of the conjugate at one atom"), true, false);
  conj->add_option("--atom", o.atom, "atom index");
  conj->add_option("--v", o.v_grid, "conjugate arguments");
  auto* dual = with_common(app.add_subcommand("dual", "norm of a functional (density, singular mass)"), true, false);
  dual->add_option("--density", o.density, "density name in the instance")->required();
  dual->add_option("--singular", o.singular, "norm of the singular part");
  auto* oracle = with_common(app.add_subcommand("oracle", "brute-force dual oracles"), true, true);
  oracle->add_option("--resolution", o.resolution, "grid points per atom");
  oracle->add_flag("--serial", o.serial, "single-threaded scan");
  with_common(app.add_subcommand("support", "support functional at u"), true, true);
  with_common(app.add_subcommand("smooth-point", "smooth-point classification"), true, true);
  with_common(app.add_subcommand("smooth-space", "space smoothness conditions"), true, false);
  auto* d2 = with_common(app.add_subcommand("delta2", "sampled Delta2 falsifier"), true, false);
  d2->add_option("--K", o.K, "constant K > 1");
  d2->add_option("--threshold", o.threshold, "function name for f (default 0)");
  d2->add_option("--horizon", o.horizon, "largest sampled u");
  auto* gap = with_common(app.add_subcommand("gap", "smoothness gap function"), true, false);
  gap->add_option("--delta", o.delta, "gap threshold > 0");
  auto* gal = with_common(app.add_subcommand("gallery", "u_* / u^* refinement gallery"), false, false);
  gal->add_option("--ladder", o.ladder, "grid resolutions");
  auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
  self->add_flag("--json", o.json, "emit a JSON report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mo: " << e.what() << "\n" << app.help();
    return kExitInput;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  const auto started = std::chrono::steady_clock::now();
  try {
    Report rep;
    rep.command = joined(args);
    rep.tolerances = tolerances();
    std::string digest_input = sub;
    for (const auto& a : args) digest_input += '\0' + a;

    if (sub == "selftest") {
      bool ok = true;
      Json rows = Json::array();
      for (const auto& c : acceptance::run_all()) {
        ok = ok && c.pass;
        if (!o.json) out << acceptance::format_line(c) << "\n";
        rows.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
      }
      if (o.json) {
        rep.inputs_digest = fnv1a_hex(digest_input);
        rep.results["criteria"] = rows;
        rep.results["all_pass"] = ok;
        out << render_json(rep);
      }
      return ok ? kExitOk : kExitFailed;
    }

    std::optional<Instance> in;
    if (!o.instance.empty()) {
      in = parse_instance(o.instance);
      digest_input += '\0' + in->source;
    }
    rep.inputs_digest = fnv1a_hex(digest_input);

    static const std::vector<std::pair<std::string, std::function<Json(const Options&, const Instance&)>>> table{
        {"norm", cmd_norm},       {"conjugate", cmd_conjugate},       {"dual", cmd_dual},
        {"oracle", cmd_oracle},   {"support", cmd_support},           {"smooth-point", cmd_smooth_point},
        {"smooth-space", cmd_smooth_space}, {"delta2", cmd_delta2},   {"gap", cmd_gap}};
    if (sub == "gallery") {
      rep.results = cmd_gallery(o);
    } else {
      for (const auto& [name, f] : table)
        if (name == sub) rep.results = f(o, *in);
    }
    if (o.timing)
      rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    out << (o.json ? render_json(rep) : render_text(rep));
    return kExitOk;
  } catch (const BracketError& e) {
    err << "mo: numerical bracket failure: " << e.what() << "\n";
    return kExitBracket;
  } catch (const InputError& e) {
    err << "mo: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "mo: input error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace mo::cli
