#include "lnlat/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "lnlat/branch.hpp"
#include "lnlat/centlat.hpp"
#include "lnlat/decomp.hpp"
#include "lnlat/errors.hpp"
#include "lnlat/filtration.hpp"
#include "lnlat/json_io.hpp"
#include "lnlat/radicals.hpp"
#include "lnlat/stone.hpp"

namespace lnlat {

namespace {

using nlohmann::json;

struct Options {
  std::string input;
  std::optional<std::size_t> margin_i, margin_j;
  std::size_t max_witness = 1;
  std::optional<unsigned> depth;
  std::uint64_t budget = 0;  // 0 = each operation's default
  std::string format = "json";
  std::string out_path;
  std::string suite = "all";
  bool unsafe = false;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "group spec file (JSON)")->required();
  sub->add_option("--margin-i", o.margin_i, "margin level i (default: depth-1)");
  sub->add_option("--margin-j", o.margin_j, "margin level j (default: depth-2)");
  sub->add_option("--max-witness", o.max_witness,
                  "deepest normalising level admitted for classes");
  sub->add_option("--depth", o.depth,
                  "working level: seed level for lc/stone, top certified level for branch");
  sub->add_option("--budget", o.budget, "enumeration budget (0 = default)");
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "dot"}));
  sub->add_option("--out", o.out_path, "output file (default: stdout)");
  sub->add_option("--suite", o.suite, "verification suite for `verify`")
      ->check(CLI::IsMember({"lattice", "boolean", "stone", "radicals", "all"}));
  sub->add_flag("--unsafe", o.unsafe, "emit centraliser classes even when unvalidated");
}

MarginLevels resolve_margins(const FilteredGroup& fg, const Options& o) {
  MarginLevels m{0, 0};
  if (o.margin_i && o.margin_j) {
    m = {*o.margin_i, *o.margin_j};
  } else {
    m = default_margins(fg);
    if (o.margin_i) m.i = *o.margin_i;
    if (o.margin_j) m.j = *o.margin_j;
  }
  if (m.j > m.i || m.i > fg.depth()) throw input_error("margin levels out of range");
  return m;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path);
  if (!f) throw input_error("cannot open output file '" + o.out_path + "'");
  f << text;
}

void emit_report(const json& report, const FiniteLattice* lat, const Options& o,
                 std::ostream& out) {
  if (o.format == "dot") {
    if (!lat) throw input_error("format dot is not available for this command");
    emit(lattice_to_dot(*lat), o, out);
  } else {
    emit(report.dump(2) + "\n", o, out);
  }
}

std::vector<LocalClass> default_seeds(const LoadedSpec& s, const Options& o) {
  std::vector<LocalClass> seeds;
  if (s.tree) {
    const unsigned lvl = o.depth.value_or(1);
    if (lvl < 1 || lvl >= s.tree->tree.depth)
      throw input_error("seed level must lie strictly between 0 and the tree depth");
    for (unsigned idx = 0; idx < s.tree->tree.vertices_at(lvl); ++idx)
      seeds.push_back(canonical_class(
          s.fg, rist(*s.tree, ClopenSet(s.tree->tree, {{lvl, idx}}))));
  } else {
    seeds.push_back(
        canonical_class(s.fg, s.fg.level(std::min<std::size_t>(1, s.fg.depth()))));
  }
  return seeds;
}

json chain_json(const FilteredGroup& fg) {
  json levels = json::array();
  for (std::size_t l = 0; l <= fg.depth(); ++l) levels.push_back(fg.level(l).order());
  return {{"depth", fg.depth()},
          {"degree", fg.ambient().degree()},
          {"level_orders", levels},
          {"degenerate", fg.degenerate()}};
}

LcAlgebra gated_lc(const LoadedSpec& s, MarginLevels m, const Options& o) {
  LcAlgebra lc = lc_algebra(s.fg, default_seeds(s, o), m);
  if (!lc.validated && !o.unsafe)
    throw truncation_artefact_error(
        "centraliser classes are unvalidated on this input; pass --unsafe to emit them");
  return lc;
}

int run_ln(const LoadedSpec& s, const Options& o, std::ostream& out) {
  LocalClassLattice lat =
      ln_lattice(s.fg, o.max_witness, o.budget ? o.budget : (1u << 14));
  json classes = json::array();
  for (std::size_t i = 0; i < lat.classes.size(); ++i) {
    json c = class_json(lat.classes[i]);
    c["index"] = i;
    classes.push_back(std::move(c));
  }
  json report{{"command", "ln"},
              {"input", chain_json(s.fg)},
              {"max_witness", lat.max_witness},
              {"degenerate_warning", lat.degenerate_warning},
              {"class_count", lat.classes.size()},
              {"classes", classes},
              {"lattice", lattice_json(lat.lattice)}};
  emit_report(report, &lat.lattice, o, out);
  return 0;
}

int run_ld(const LoadedSpec& s, const Options& o, std::ostream& out) {
  LocalClass alpha =
      canonical_class(s.fg, s.fg.level(std::min<std::size_t>(1, s.fg.depth())));
  LdAlgebra ld = ld_lattice(s.fg, alpha);
  json classes = json::array();
  for (const auto& c : ld.classes) classes.push_back(class_json(c));
  json report{{"command", "ld"},
              {"input", chain_json(s.fg)},
              {"factor_level", ld.factor_level},
              {"complements_exact", ld.complements_exact},
              {"class_count", ld.classes.size()},
              {"classes", classes},
              {"algebra", boolean_json(ld.algebra)}};
  emit_report(report, &ld.algebra.lattice, o, out);
  return 0;
}

json lc_json(const LcAlgebra& lc) {
  json classes = json::array();
  for (const auto& c : lc.classes) {
    json e = class_json(c.cls);
    e["perp_order"] = c.perp_rep.order();
    classes.push_back(std::move(e));
  }
  return {{"validated", lc.validated},
          {"class_count", lc.classes.size()},
          {"classes", classes},
          {"algebra", boolean_json(lc.algebra)}};
}

int run_lc(const LoadedSpec& s, const Options& o, std::ostream& out) {
  MarginLevels m = resolve_margins(s.fg, o);
  LcAlgebra lc = gated_lc(s, m, o);
  json report = lc_json(lc);
  report["command"] = "lc";
  report["input"] = chain_json(s.fg);
  report["margin"] = {{"i", m.i}, {"j", m.j}};
  emit_report(report, &lc.algebra.lattice, o, out);
  return 0;
}

int run_stone(const LoadedSpec& s, const Options& o, std::ostream& out) {
  MarginLevels m = resolve_margins(s.fg, o);
  LcAlgebra lc = gated_lc(s, m, o);
  StoneSpace sp = stone_space(lc.algebra);
  CheckResult round = stone_round_trip(lc.algebra);
  json report{{"command", "stone"},
              {"input", chain_json(s.fg)},
              {"margin", {{"i", m.i}, {"j", m.j}}},
              {"points", sp.atom_of.size()},
              {"round_trip_ok", round.ok},
              {"space", stone_json(sp)}};
  emit_report(report, nullptr, o, out);
  return round.ok ? 0 : 1;
}

int run_branch(const LoadedSpec& s, const Options& o, std::ostream& out) {
  if (!s.tree) throw input_error("branch requires a tree spec");
  const unsigned max_level = o.depth.value_or(s.tree->tree.depth - 1);
  BranchReport br = branch_certify(*s.tree, max_level);
  auto witness = [](const std::optional<ClopenSet>& w) {
    return w ? clopen_json(*w) : json(nullptr);
  };
  json report{{"command", "branch"},
              {"input", chain_json(s.fg)},
              {"max_level", max_level},
              {"certified_level", br.certified_level},
              {"smooth", br.smooth},
              {"weakly_branch", br.weakly_branch},
              {"locally_branch", br.locally_branch},
              {"witnesses",
               {{"smooth", witness(br.smooth_witness)},
                {"weakly_branch", witness(br.weakly_witness)},
                {"locally_branch", witness(br.locally_witness)}}}};
  emit_report(report, nullptr, o, out);
  return 0;
}

json semisimple_json(const SemisimpleResult& ss) {
  json out{{"ok", ss.ok}, {"reason", ss.reason}};
  out["witness_element"] = ss.witness_element ? perm_json(*ss.witness_element) : json(nullptr);
  out["witness_subgroup"] = ss.witness_subgroup ? group_json(*ss.witness_subgroup) : json(nullptr);
  return out;
}

int run_radicals(const LoadedSpec& s, const Options& o, std::ostream& out) {
  MarginLevels m = resolve_margins(s.fg, o);
  const std::uint64_t budget = o.budget ? o.budget : (1u << 16);
  Group qz = qz_hypercentre(s.fg, QzMode::exhaustive, m, budget);
  RadicalReport rep = regular_radical_report(s.fg, m, budget);
  json report{{"command", "radicals"},
              {"input", chain_json(s.fg)},
              {"margin", {{"i", m.i}, {"j", m.j}}},
              {"quasi_hypercentre", group_json(qz)},
              {"radical", group_json(rep.radical)},
              {"quotient_semisimple", rep.shadow_ok},
              {"quotient_degenerate", rep.shadow_degenerate},
              {"semisimple", semisimple_json(c_semisimple_check(s.fg, m))},
              {"containment_ok", qz.is_subgroup_of(rep.radical)}};
  emit_report(report, nullptr, o, out);
  return qz.is_subgroup_of(rep.radical) ? 0 : 1;
}

int run_fixed_points(const LoadedSpec& s, const Options& o, std::ostream& out) {
  LocalClassLattice lat =
      ln_lattice(s.fg, o.max_witness, o.budget ? o.budget : (1u << 14));
  std::vector<std::size_t> fixed = fixed_classes(s.fg, lat);
  json classes = json::array();
  for (std::size_t i : fixed) {
    json c = class_json(lat.classes[i]);
    c["index"] = i;
    classes.push_back(std::move(c));
  }
  json report{{"command", "fixed-points"},
              {"input", chain_json(s.fg)},
              {"max_witness", lat.max_witness},
              {"fixed_count", fixed.size()},
              {"classes", classes}};
  emit_report(report, nullptr, o, out);
  return 0;
}

struct SuiteReport {
  json checks = json::array();
  bool ok = true;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    checks.push_back({{"name", name}, {"ok", pass}, {"detail", detail}});
    ok = ok && pass;
  }
  void add(const std::string& name, const CheckResult& r) { add(name, r.ok, r.what); }
};

void suite_lattice(const LoadedSpec& s, const Options& o, SuiteReport& rep) {
  LocalClassLattice lat =
      ln_lattice(s.fg, o.max_witness, o.budget ? o.budget : (1u << 14));
  rep.add("ln_modularity", modularity_check(lat.lattice));
  std::vector<std::string> keys = lat.lattice.keys();
  std::sort(keys.begin(), keys.end());
  rep.add("ln_classes_distinct",
          std::adjacent_find(keys.begin(), keys.end()) == keys.end());
  rep.add("ln_bounded", lat.lattice.top().has_value());
}

void suite_boolean(const LoadedSpec& s, const Options& o, SuiteReport& rep) {
  MarginLevels m = resolve_margins(s.fg, o);
  std::string why;
  rep.add("locally_c_stable_screen", locally_c_stable_screen(s.fg, m, &why), why);
  try {
    LcAlgebra lc = lc_algebra(s.fg, default_seeds(s, o), m);
    rep.add("lc_boolean_axioms", is_boolean(lc.algebra));
    rep.add("lc_distributive", is_distributive(lc.algebra.lattice));
    bool involution = true;
    for (std::size_t a = 0; a < lc.algebra.lattice.size(); ++a)
      involution = involution && lc.algebra.complement[lc.algebra.complement[a]] == a;
    rep.add("lc_complement_involution", involution);
  } catch (const truncation_artefact_error& e) {
    rep.add("lc_construction", false, e.what());
  }
  try {
    LdAlgebra ld = ld_lattice(
        s.fg, canonical_class(s.fg, s.fg.level(std::min<std::size_t>(1, s.fg.depth()))));
    rep.add("ld_boolean_axioms", is_boolean(ld.algebra));
  } catch (const truncation_artefact_error& e) {
    rep.add("ld_construction", false, e.what());
  } catch (const input_error& e) {
    rep.add("ld_construction", false, e.what());
  }
}

void suite_stone(const LoadedSpec& s, const Options& o, SuiteReport& rep) {
  MarginLevels m = resolve_margins(s.fg, o);
  try {
    LcAlgebra lc = lc_algebra(s.fg, default_seeds(s, o), m);
    rep.add("stone_round_trip", stone_round_trip(lc.algebra));
    StoneSpace sp = stone_space(lc.algebra);
    std::vector<std::size_t> pi(sp.atom_of.size());
    for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = i;
    rep.add("automorphism_transport", aut_transport_check(lc.algebra, pi));
    if (auto top = lc.algebra.lattice.top()) {
      std::vector<std::size_t> parts = finest_partition(lc.algebra, *top);
      rep.add("finest_partition_is_atoms",
              parts.size() == lc.algebra.lattice.atoms().size());
    }
  } catch (const truncation_artefact_error& e) {
    rep.add("stone_construction", false, e.what());
  }
}

void suite_radicals(const LoadedSpec& s, const Options& o, SuiteReport& rep) {
  MarginLevels m = resolve_margins(s.fg, o);
  const std::uint64_t budget = o.budget ? o.budget : (1u << 16);
  Group qz = qz_hypercentre(s.fg, QzMode::exhaustive, m, budget);
  RadicalReport rr = regular_radical_report(s.fg, m, budget);
  rep.add("hypercentre_contained_in_radical", qz.is_subgroup_of(rr.radical));
  bool idem = true;
  if (!qz.is_trivial()) {
    FilteredGroup q = quotient_filtered(s.fg, qz).quotient;
    idem = q.degenerate() || quasi_centre_at(q, m.i).is_subgroup_of(q.level(m.j));
  }
  rep.add("hypercentre_quotient_margin_trivial", idem);
  if (s.fg.depth() >= 1) {
    StabilityReport st = stability_checks(s.fg, 1, m, budget);
    rep.add("hypercentre_open_stability", st.qz_match || st.below_margin);
    rep.add("radical_open_stability", st.radical_match || st.below_margin);
  }
}

int run_verify(const LoadedSpec& s, const Options& o, std::ostream& out) {
  SuiteReport rep;
  if (o.suite == "lattice" || o.suite == "all") suite_lattice(s, o, rep);
  if (o.suite == "boolean" || o.suite == "all") suite_boolean(s, o, rep);
  if (o.suite == "stone" || o.suite == "all") suite_stone(s, o, rep);
  if (o.suite == "radicals" || o.suite == "all") suite_radicals(s, o, rep);
  json report{{"command", "verify"},
              {"input", chain_json(s.fg)},
              {"suite", o.suite},
              {"checks", rep.checks},
              {"ok", rep.ok}};
  emit_report(report, nullptr, o, out);
  return rep.ok ? 0 : 1;
}

json error_json(const std::string& kind, const std::string& what) {
  return {{"error", {{"kind", kind}, {"what", what}}}};
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"structure lattices of filtered permutation groups"};
  app.require_subcommand(1);
  Options o;
  CLI::App* sub_ln = app.add_subcommand("ln", "structure lattice of local classes");
  CLI::App* sub_ld = app.add_subcommand("ld", "local decomposition algebra");
  CLI::App* sub_lc = app.add_subcommand("lc", "centraliser-class Boolean algebra");
  CLI::App* sub_stone = app.add_subcommand("stone", "dual space of the centraliser algebra");
  CLI::App* sub_branch = app.add_subcommand("branch", "branch-action certificates");
  CLI::App* sub_radicals = app.add_subcommand("radicals", "quasi-hypercentre and regular radical");
  CLI::App* sub_fixed = app.add_subcommand("fixed-points", "conjugation-fixed local classes");
  CLI::App* sub_verify = app.add_subcommand("verify", "run a verification suite");
  for (CLI::App* sub : {sub_ln, sub_ld, sub_lc, sub_stone, sub_branch, sub_radicals,
                        sub_fixed, sub_verify})
    add_common(sub, o);

  std::vector<const char*> argv{"lnlat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << error_json("input", e.what()).dump(2) << "\n";
    return 2;
  }

  try {
    LoadedSpec spec = load_group_spec(o.input);
    if (sub_ln->parsed()) return run_ln(spec, o, out);
    if (sub_ld->parsed()) return run_ld(spec, o, out);
    if (sub_lc->parsed()) return run_lc(spec, o, out);
    if (sub_stone->parsed()) return run_stone(spec, o, out);
    if (sub_branch->parsed()) return run_branch(spec, o, out);
    if (sub_radicals->parsed()) return run_radicals(spec, o, out);
    if (sub_fixed->parsed()) return run_fixed_points(spec, o, out);
    return run_verify(spec, o, out);
  } catch (const input_error& e) {
    err << error_json("input", e.what()).dump(2) << "\n";
    return 2;
  } catch (const resource_error& e) {
    json obj = error_json("resource", e.what());
    obj["error"]["achieved"] = e.achieved;
    err << obj.dump(2) << "\n";
    return 3;
  } catch (const truncation_artefact_error& e) {
    err << error_json("property", e.what()).dump(2) << "\n";
    return 1;
  } catch (const internal_error& e) {
    err << error_json("property", e.what()).dump(2) << "\n";
    return 1;
  }
}

}  // namespace lnlat
