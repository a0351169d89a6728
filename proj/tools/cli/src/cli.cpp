#include "hconvex_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hconvex/ch_verifier.hpp"
#include "hconvex/cone_builder.hpp"
#include "hconvex/convexity_check.hpp"
#include "hconvex/errors.hpp"
#include "hconvex/gallery.hpp"
#include "json.hpp"

#ifndef HCONVEX_VERSION
#define HCONVEX_VERSION "unknown"
#endif

namespace hconvex::cli {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kCommands{"axioms", "cone", "ch", "radial", "gallery", "export"};

json to_json(const Point3& p) { return json::array({p.x, p.y, p.t}); }
json to_json(const HVec& v) { return json::array({v.a, v.b}); }

Point3 point_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }
HVec hvec_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::string utc_now()
{
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<double> numbers_from(const json& value, const std::string& key)
{
  std::vector<double> out;
  if (value.is_number()) {
    out.push_back(value.get<double>());
    return out;
  }
  if (!value.is_array()) {
    throw PreconditionError("parameter '" + key + "' must be a number or a list");
  }
  for (const json& item : value) {
    if (item.is_array()) {
      for (const json& x : item) {
        out.push_back(x.get<double>());
      }
    } else {
      out.push_back(item.get<double>());
    }
  }
  return out;
}

void merge_params(GalleryParams& params, const json& obj)
{
  if (!obj.is_object()) {
    throw PreconditionError("params must be a JSON object");
  }
  for (const auto& [key, value] : obj.items()) {
    params[key] = numbers_from(value, key);
  }
}

json params_json(const GalleryParams& params)
{
  json out = json::object();
  for (const auto& [key, values] : params) {
    out[key] = values.size() == 1 ? json(values.front()) : json(values);
  }
  return out;
}

json tolerance_json(const Tolerances& tol)
{
  return {{"eps_geom", tol.eps_geom}, {"eps_eq", tol.eps_eq}, {"max_iter", tol.max_iter}};
}

json report_header(const RunConfig& cfg, const SetDescriptor* desc)
{
  json r;
  r["tool"] = "hconvex";
  r["version"] = HCONVEX_VERSION;
  r["command"] = cfg.command;
  r["seed"] = cfg.seed;
  r["tolerances"] = tolerance_json(cfg.tol);
  if (desc != nullptr) {
    r["set"] = {{"name", desc->name}, {"params", params_json(desc->params)}};
  }
  r["generated_at"] = cfg.timestamp ? utc_now() : "";
  return r;
}

void write_json(const std::filesystem::path& path, const json& j)
{
  std::ofstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  f << j.dump(2) << '\n';
  if (!f) {
    throw std::runtime_error("write to '" + path.string() + "' failed");
  }
}

json witness_json(const ChWitness& w)
{
  return {{"xi0", to_json(w.xi0)},         {"xi1", to_json(w.xi1)},     {"tau", w.tau},
          {"v", to_json(w.v)},             {"theta_star", w.theta_star}, {"escape_point", to_json(w.escape_point)},
          {"margin", w.margin}};
}

ChWitness witness_from(const json& j)
{
  ChWitness w;
  w.xi0 = point_from(j.at("xi0"));
  w.xi1 = point_from(j.at("xi1"));
  w.tau = j.at("tau").get<double>();
  w.v = hvec_from(j.at("v"));
  w.theta_star = j.at("theta_star").get<double>();
  w.escape_point = point_from(j.at("escape_point"));
  w.margin = j.value("margin", 0.0);
  return w;
}

json convexity_json(const ConvexityWitness& w)
{
  return {{"base", to_json(w.base)}, {"v", to_json(w.v)}, {"theta", w.theta}, {"lhs", w.lhs}, {"rhs", w.rhs}};
}

json axiom_json(const AxiomReport& a)
{
  json j{{"compact", a.compact},      {"e_interior", a.e_interior}, {"a_holds", a.a_holds},
         {"b_holds", a.b_holds},      {"c_holds", a.c_holds()},     {"samples_used", a.samples_used},
         {"seed", a.seed},            {"note", a.note}};
  if (a.b_witness) {
    j["b_witness"] = {{"point", to_json(a.b_witness->point)}, {"tau", a.b_witness->tau}};
  }
  if (a.hconvex_witness) {
    const SegmentWitness& w = *a.hconvex_witness;
    j["hconvex_witness"] = {{"base", to_json(w.base)},   {"v", to_json(w.v)},     {"theta", w.theta},
                            {"point", to_json(w.point)}, {"margin", w.margin}};
  }
  return j;
}

std::vector<Point3> witness_curve(const ChWitness& w, int m) { return ch_curve(w.xi0, w.v, w.tau, m); }

struct Context
{
  const RunConfig& cfg;
  std::ostream& out;
};

int cmd_axioms(const Context& ctx, const SetDescriptor& desc, const SetOracle& k)
{
  const AxiomReport a = check_axioms(k, ctx.cfg.samples, ctx.cfg.seed, ctx.cfg.tol);
  json r = report_header(ctx.cfg, &desc);
  r["axioms"] = axiom_json(a);
  write_json(ctx.cfg.output_dir / "axioms_report.json", r);
  const bool pass = a.a_holds && a.b_holds && a.c_holds();
  ctx.out << "axioms " << k.label() << ": a=" << a.a_holds << " b=" << a.b_holds << " c=" << a.c_holds()
          << " samples=" << a.samples_used << '\n';
  return pass ? kExitPass : kExitWitness;
}

double closed_form_gap(const ConeFunction& c, const FnOracle& closed, std::int64_t n, std::uint64_t seed)
{
  const Box box = scaled(c.source(), c.kind(), 2.0).bbox();
  double worst = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    Rng rng = stream_rng(seed, Stream::family, (1ull << 41) + static_cast<std::uint64_t>(i));
    const Point3 p = box.sample(rng);
    worst = std::max(worst, std::abs(c(p) - closed(p)));
  }
  return worst;
}

int cmd_cone(const Context& ctx, const SetDescriptor& desc, const SetOracle& k, ScalingKind kind)
{
  const RunConfig& cfg = ctx.cfg;
  const ConeFunction cone = ConeFunction::build(k, kind, cfg.tol, cfg.samples, cfg.seed);
  const FamilyReport fam = family_axioms_check(cone, cfg.samples, cfg.seed);
  const ValidationReport val = cone_validate(cone, cfg.samples, cfg.seed);

  json r = report_header(cfg, &desc);
  r["kind"] = kind == ScalingKind::heisenberg ? "heisenberg" : "euclidean";
  r["family"] = {{"axiom_I", fam.axiom_I},     {"axiom_II", fam.axiom_II}, {"axiom_III", fam.axiom_III},
                 {"samples", fam.samples},     {"note", fam.note}};
  if (fam.nesting_witness) {
    r["family"]["nesting_witness"] = {{"tau1", fam.nesting_witness->tau1},
                                      {"tau2", fam.nesting_witness->tau2},
                                      {"xi", to_json(fam.nesting_witness->xi)}};
  }
  r["validation"] = {{"verdict", val.verdict()},
                     {"homogeneous", val.homogeneity.ok},
                     {"max_homogeneity_deviation", val.homogeneity.max_deviation},
                     {"samples", val.samples}};
  if (val.witness) {
    r["validation"]["witness"] = convexity_json(*val.witness);
  }
  bool pass = fam.passed() && !val.falsified();
  if (cfg.compare_closed_form) {
    if (const auto closed = gallery_closed_form(desc.name, desc.params, kind)) {
      const double gap = closed_form_gap(cone, *closed, std::max<std::int64_t>(cfg.samples, 1000), cfg.seed);
      r["closed_form"] = {{"function", closed->label}, {"max_abs_diff", gap}, {"within_1e-6", gap <= 1e-6}};
      pass = pass && gap <= 1e-6;
      ctx.out << "closed form " << closed->label << ": max |diff| = " << gap << '\n';
    } else {
      r["closed_form"] = {{"function", nullptr}, {"note", "no closed form for this set"}};
    }
  }
  write_json(cfg.output_dir / "cone_report.json", r);
  ctx.out << "cone " << k.label() << ": " << val.verdict() << "; family I/II/III = " << fam.axiom_I << fam.axiom_II
          << fam.axiom_III << '\n';
  return pass ? kExitPass : kExitWitness;
}

int cmd_ch(const Context& ctx, const SetDescriptor& desc, const SetOracle& k)
{
  const RunConfig& cfg = ctx.cfg;
  const ChSearchResult res = falsify_ch(k, cfg.budget, kSegmentSamples, cfg.seed, cfg.tol);
  json r = report_header(cfg, &desc);
  r["budget"] = cfg.budget;
  r["pairs_tested"] = res.pairs_tested;
  if (res.witness) {
    r["witness"] = witness_json(*res.witness);
    r["witness"]["replays"] = replay(*res.witness, k, cfg.tol).ok;
    const auto csv = cfg.output_dir / "ch_witness_curve.csv";
    export_curve(witness_curve(*res.witness, 101), csv);
    r["curve_csv"] = csv.filename().string();
    ctx.out << "ch " << k.label() << ": witness after " << res.pairs_tested << " pairs, escape point ("
            << res.witness->escape_point.x << ", " << res.witness->escape_point.y << ", "
            << res.witness->escape_point.t << ")\n";
  } else {
    r["witness"] = nullptr;
    ctx.out << "ch " << k.label() << ": no witness in " << res.pairs_tested << " pairs (not a proof)\n";
  }
  write_json(cfg.output_dir / "ch_report.json", r);
  return res.witness ? kExitWitness : kExitPass;
}

int cmd_radial(const Context& ctx, const SetDescriptor& desc, const SetOracle& k)
{
  const RunConfig& cfg = ctx.cfg;
  if (!k.profile()) {
    throw PreconditionError("radial: '" + k.label() + "' is not a radial set");
  }
  const RadialNecessityReport rn = radial_necessary(*k.profile(), std::min<std::int64_t>(cfg.samples, 512), cfg.seed,
                                                    cfg.tol);
  json r = report_header(cfg, &desc);
  r["theorem"] = {{"thm_i", rn.thm_i},         {"thm_ii", rn.thm_ii},          {"r_zero", rn.r_zero},
                  {"r_max", rn.r_max},         {"caps_checked", rn.caps_checked}, {"solids_checked", rn.solids_checked}};
  if (rn.thm_i_witness) {
    r["theorem"]["thm_i_witness"] = to_json(*rn.thm_i_witness);
  }
  if (rn.thm_ii_witness) {
    r["theorem"]["thm_ii_witness"] = to_json(*rn.thm_ii_witness);
    r["theorem"]["thm_ii_source"] = to_json(*rn.thm_ii_source);
  }

  json sweep = json::array();
  bool envelope_ok = true;
  for (const Point3& p : boundary_sample(k, 16, cfg.seed, cfg.tol)) {
    if (std::abs(p.t) <= cfg.tol.eps_geom || horizontal_norm(p) <= cfg.tol.eps_geom) {
      continue;
    }
    const EnvelopeReport e = envelope_check(k, p, 24, cfg.tol);
    json item{{"xi0", to_json(p)},           {"solid_holds", e.solid_holds}, {"cap_holds", e.cap_holds},
              {"solid_margin", e.solid_margin}, {"cap_margin", e.cap_margin}};
    if (e.solid_witness) {
      item["solid_witness"] = to_json(*e.solid_witness);
    }
    if (e.cap_witness) {
      item["cap_witness"] = to_json(*e.cap_witness);
    }
    envelope_ok = envelope_ok && e.solid_holds && e.cap_holds;
    sweep.push_back(item);
  }
  r["envelope"] = sweep;
  write_json(cfg.output_dir / "radial_report.json", r);

  ctx.out << "radial " << k.label() << ": thm_i=" << rn.thm_i << " thm_ii=" << rn.thm_ii << " envelope=" << envelope_ok;
  if (rn.thm_ii_witness) {
    ctx.out << " witness (" << rn.thm_ii_witness->x << ", 0, 0)";
  }
  ctx.out << '\n';
  return rn.thm_i && rn.thm_ii && envelope_ok ? kExitPass : kExitWitness;
}

struct Expectation
{
  std::string name;
  std::string expected;
  std::string observed;
};

int cmd_gallery(const Context& ctx)
{
  const RunConfig& cfg = ctx.cfg;
  const Tolerances& tol = cfg.tol;
  const std::int64_t budget = cfg.budget;
  std::vector<Expectation> rows;
  auto yes_no = [](bool b) { return std::string(b ? "yes" : "no"); };

  for (const std::string name : {"koranyi_ball", "euclidean_ball", "cylinder", "cylinder_hat"}) {
    const AxiomReport a = check_axioms(gallery(name, {}, tol), cfg.samples, cfg.seed, tol);
    rows.push_back({name + " satisfies a, b, c", "yes", yes_no(a.a_holds && a.b_holds && a.c_holds())});
  }
  {
    const AxiomReport a = check_axioms(gallery("slab_x", {}, tol), 100, cfg.seed, tol);
    rows.push_back({"slab_x satisfies a", "no", yes_no(a.a_holds)});
  }
  {
    const SetOracle two = set_union(translated(gallery("koranyi_ball", {}, tol), {2, 0, 0}),
                                    translated(gallery("koranyi_ball", {}, tol), {-2, 0, 0}));
    const AxiomReport a = check_axioms(two, cfg.samples, cfg.seed, tol);
    rows.push_back({"two disjoint balls are H-convex", "no", yes_no(a.c_holds())});
  }
  for (const auto& [name, expect] : {std::pair{"cylinder", true}, std::pair{"koranyi_ball", false},
                                     std::pair{"cylinder_hat", false}}) {
    const ChSearchResult res = falsify_ch(gallery(name, {}, tol), budget, kSegmentSamples, cfg.seed, tol);
    rows.push_back({std::string(name) + " has a C_H witness", yes_no(expect), yes_no(res.witness.has_value())});
  }
  {
    const ConeFunction cone = ConeFunction::build(gallery("euclidean_ball", {}, tol), ScalingKind::heisenberg, tol,
                                                  cfg.samples, cfg.seed);
    const double gap = closed_form_gap(cone, *gallery_closed_form("euclidean_ball"), 1000, cfg.seed);
    rows.push_back({"euclidean_ball cone matches closed form to 1e-6", "yes", yes_no(gap <= 1e-6)});
    const ConeFunction cyl = ConeFunction::build(gallery("cylinder", {}, tol), ScalingKind::heisenberg, tol,
                                                 cfg.samples, cfg.seed);
    rows.push_back({"cylinder cone is falsified", "yes", yes_no(cone_validate(cyl, cfg.samples, cfg.seed).falsified())});
  }
  {
    const SetOracle imp = gallery("importante", {}, tol);
    const RadialNecessityReport rn = radial_necessary(*imp.profile(), 400, cfg.seed, tol);
    const double c = importante_constants().c;
    const bool near = rn.thm_ii_witness && std::abs(rn.thm_ii_witness->x - c) <= 1e-3;
    rows.push_back({"importante fails thm ii near (c,0,0)", "yes", yes_no(!rn.thm_ii && near)});
    for (const std::string name : {"koranyi_ball", "cylinder_hat", "cylinder"}) {
      const RadialNecessityReport ok = radial_necessary(*gallery(name, {}, tol).profile(), 400, cfg.seed, tol);
      rows.push_back({name + " passes thm i and ii", "yes", yes_no(ok.thm_i && ok.thm_ii)});
    }
  }
  {
    const EnvelopeReport e = envelope_check(gallery("cylinder", {}, tol), {0.9, 0, 0.9}, 64, tol);
    rows.push_back({"cylinder solid of revolution over (0.9,0,0.9) escapes", "yes", yes_no(!e.solid_holds)});
  }

  json r = report_header(cfg, nullptr);
  r["budget"] = budget;
  json items = json::array();
  bool all = true;
  for (const Expectation& e : rows) {
    const bool match = e.expected == e.observed;
    all = all && match;
    items.push_back({{"check", e.name}, {"expected", e.expected}, {"observed", e.observed}, {"match", match}});
    ctx.out << (match ? "ok   " : "FAIL ") << e.name << " (expected " << e.expected << ", observed " << e.observed
            << ")\n";
  }
  r["checks"] = items;
  r["all_match"] = all;
  write_json(cfg.output_dir / "gallery_report.json", r);
  return all ? kExitPass : kExitWitness;
}

int cmd_export(const Context& ctx, const SetDescriptor& desc, const SetOracle& k)
{
  const RunConfig& cfg = ctx.cfg;
  json r = report_header(cfg, &desc);
  if (cfg.export_what == "levelset") {
    const auto path = cfg.output_dir / "levelset.obj";
    const std::size_t nv = export_levelset(k, cfg.tau, cfg.resolution, path);
    r["levelset"] = {{"tau", cfg.tau}, {"resolution", cfg.resolution}, {"vertices", nv}, {"file", "levelset.obj"}};
    ctx.out << "wrote " << path.string() << " (" << nv << " vertices)\n";
  } else if (cfg.export_what == "curve") {
    ChWitness w;
    if (!cfg.witness_path.empty()) {
      std::ifstream f(cfg.witness_path);
      if (!f) {
        throw std::runtime_error("cannot open witness file '" + cfg.witness_path + "'");
      }
      const json j = json::parse(f);
      w = witness_from(j.contains("witness") ? j.at("witness") : j);
    } else {
      const ChSearchResult res = falsify_ch(k, cfg.budget, kSegmentSamples, cfg.seed, cfg.tol);
      if (!res.witness) {
        throw PreconditionError("export curve: no witness found for '" + k.label() + "'; pass --witness");
      }
      w = *res.witness;
    }
    const auto path = cfg.output_dir / "curve.csv";
    const int m = std::max(cfg.resolution, 2);
    export_curve(witness_curve(w, m), path);
    r["curve"] = {{"witness", witness_json(w)}, {"samples", m}, {"file", "curve.csv"}};
    ctx.out << "wrote " << path.string() << " (" << m << " rows)\n";
  } else {
    throw PreconditionError("export: --what must be levelset or curve");
  }
  write_json(cfg.output_dir / "export_report.json", r);
  return kExitPass;
}

}  // namespace

SetDescriptor parse_descriptor(const std::string& text, const std::string& params_json_text)
{
  SetDescriptor desc;
  const auto& names = gallery_names();
  if (std::find(names.begin(), names.end(), text) != names.end()) {
    desc.name = text;
  } else {
    json j;
    if (!text.empty() && text.front() == '{') {
      j = json::parse(text);
    } else {
      std::ifstream f(text);
      if (!f) {
        throw PreconditionError("unknown set '" + text + "' (not a gallery name or readable descriptor file)");
      }
      j = json::parse(f);
    }
    if (!j.is_object() || !j.contains("set") || !j.at("set").is_string()) {
      throw PreconditionError("set descriptor must be {\"set\": <name>, \"params\": {...}}");
    }
    desc.name = j.at("set").get<std::string>();
    if (j.contains("params")) {
      merge_params(desc.params, j.at("params"));
    }
  }
  if (!params_json_text.empty()) {
    merge_params(desc.params, json::parse(params_json_text));
  }
  return desc;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  try {
    if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end()) {
      throw PreconditionError("unknown command '" + cfg.command + "'");
    }
    if (cfg.budget < 1 || cfg.samples < 1) {
      throw PreconditionError("--budget and --samples must be at least 1");
    }
    cfg.tol.validate();
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec || !std::filesystem::is_directory(cfg.output_dir)) {
      throw std::runtime_error("output directory '" + cfg.output_dir.string() + "' is not writable");
    }
    const Context ctx{cfg, out};
    if (cfg.command == "gallery") {
      return cmd_gallery(ctx);
    }
    if (cfg.set_descriptor.empty()) {
      throw PreconditionError("--set is required for '" + cfg.command + "'");
    }
    const SetDescriptor desc = parse_descriptor(cfg.set_descriptor, cfg.params_json);
    const SetOracle k = gallery(desc.name, desc.params, cfg.tol);
    if (cfg.command == "axioms") {
      return cmd_axioms(ctx, desc, k);
    }
    if (cfg.command == "cone") {
      if (cfg.kind != "heisenberg" && cfg.kind != "euclidean") {
        throw PreconditionError("--kind must be heisenberg or euclidean");
      }
      return cmd_cone(ctx, desc, k, cfg.kind == "euclidean" ? ScalingKind::euclidean : ScalingKind::heisenberg);
    }
    if (cfg.command == "ch") {
      return cmd_ch(ctx, desc, k);
    }
    if (cfg.command == "radial") {
      return cmd_radial(ctx, desc, k);
    }
    return cmd_export(ctx, desc, k);
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

int main_entry(int argc, const char* const* argv)
{
  RunConfig cfg;
  std::string out_dir = ".";
  CLI::App app{"hconvex: convexity checks in the Heisenberg group"};
  app.add_option("command", cfg.command, "axioms | cone | ch | radial | gallery | export")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("--set", cfg.set_descriptor, "gallery name, descriptor file, or inline JSON descriptor");
  app.add_option("--params", cfg.params_json, "JSON object of set parameters");
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--budget", cfg.budget, "pair budget for ch")->capture_default_str();
  app.add_option("--samples", cfg.samples, "sample count for axioms, cone and radial")->capture_default_str();
  app.add_option("--eps-geom", cfg.tol.eps_geom, "membership slack")->capture_default_str();
  app.add_option("--eps-eq", cfg.tol.eps_eq, "equality tolerance")->capture_default_str();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_flag("--compare-closed-form", cfg.compare_closed_form, "compare the cone with its closed form");
  app.add_option("--kind", cfg.kind, "cone scaling: heisenberg | euclidean")->capture_default_str();
  app.add_option("--what", cfg.export_what, "export target: levelset | curve")->capture_default_str();
  app.add_option("--tau", cfg.tau, "level for export levelset")->capture_default_str();
  app.add_option("--resolution", cfg.resolution, "grid resolution (levelset) or curve samples")->capture_default_str();
  app.add_option("--witness", cfg.witness_path, "ch report whose witness curve to export");
  app.add_flag("!--no-timestamp", cfg.timestamp, "leave generated_at empty");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }
  cfg.output_dir = out_dir;
  return run(cfg, std::cout, std::cerr);
}

}  // namespace hconvex::cli
