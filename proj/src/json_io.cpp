#include "lnlat/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "lnlat/errors.hpp"

namespace lnlat {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end())
    throw input_error(std::string("spec: missing field '") + name + "'");
  return *it;
}

unsigned small_uint(const json& v, const char* name, unsigned lo, unsigned hi) {
  if (!v.is_number_unsigned())
    throw input_error(std::string("spec: '") + name + "' must be a non-negative integer");
  const std::uint64_t n = v.get<std::uint64_t>();
  if (n < lo || n > hi)
    throw input_error(std::string("spec: '") + name + "' out of range");
  return static_cast<unsigned>(n);
}

std::vector<unsigned> uint_array(const json& v, const char* name) {
  if (!v.is_array())
    throw input_error(std::string("spec: '") + name + "' must be an array");
  std::vector<unsigned> out;
  for (const auto& x : v) out.push_back(small_uint(x, name, 0, 0xffff));
  return out;
}

Perm parse_perm(const json& v, unsigned degree, const std::string& name) {
  std::vector<unsigned> raw = uint_array(v, name.c_str());
  if (raw.size() != degree)
    throw input_error("spec: image array of '" + name + "' has wrong length");
  std::vector<std::uint16_t> img(raw.begin(), raw.end());
  for (auto x : img)
    if (x >= degree)
      throw input_error("spec: image array of '" + name + "' has a point out of range");
  return Perm(std::move(img));
}

LoadedSpec parse_permutation(const json& spec) {
  const unsigned degree = small_uint(field(spec, "degree"), "degree", 1, 0xffff);
  const json& gens = field(spec, "generators");
  if (!gens.is_object() || gens.empty())
    throw input_error("spec: 'generators' must be a non-empty object");

  std::vector<Perm> all;
  std::map<std::string, Perm> by_name;
  for (auto it = gens.begin(); it != gens.end(); ++it) {
    Perm p = parse_perm(it.value(), degree, it.key());
    by_name.emplace(it.key(), p);
    all.push_back(std::move(p));
  }
  Group ambient(degree, all);

  std::vector<Group> chain{ambient};
  const json& filt = field(spec, "filtration");
  if (!filt.is_array()) throw input_error("spec: 'filtration' must be an array");
  for (const auto& level : filt) {
    if (!level.is_array()) throw input_error("spec: filtration levels must be name lists");
    std::vector<Perm> lgens;
    for (const auto& n : level) {
      if (!n.is_string()) throw input_error("spec: filtration entries must be generator names");
      auto it = by_name.find(n.get<std::string>());
      if (it == by_name.end())
        throw input_error("spec: unknown generator '" + n.get<std::string>() + "' in filtration");
      lgens.push_back(it->second);
    }
    chain.emplace_back(degree, std::move(lgens));
  }
  return {std::nullopt, FilteredGroup(std::move(ambient), std::move(chain))};
}

LoadedSpec parse_tree(const json& spec, std::optional<unsigned> depth_override) {
  const unsigned arity = small_uint(field(spec, "arity"), "arity", 2, 16);
  unsigned depth = small_uint(field(spec, "depth"), "depth", 1, 16);
  if (depth_override) depth = *depth_override;

  const json& states = field(spec, "states");
  if (!states.is_object()) throw input_error("spec: 'states' must be an object");
  WreathAutomaton aut;
  aut.arity = arity;
  for (auto it = states.begin(); it != states.end(); ++it) {
    AutomatonState st;
    st.name = it.key();
    st.root_perm = uint_array(field(it.value(), "root"), "root");
    const json& secs = field(it.value(), "sections");
    if (!secs.is_array()) throw input_error("spec: 'sections' must be an array");
    for (const auto& s : secs) {
      if (!s.is_string()) throw input_error("spec: sections must be state names");
      st.sections.push_back(s.get<std::string>());
    }
    aut.states.push_back(std::move(st));
  }
  const json& gens = field(spec, "generators");
  if (!gens.is_array() || gens.empty())
    throw input_error("spec: 'generators' must be a non-empty array");
  for (const auto& g : gens) {
    if (!g.is_string()) throw input_error("spec: generators must be state names");
    aut.generators.push_back(g.get<std::string>());
  }

  TreeAction ta = truncate(aut, TreeSpec(arity, depth));
  FilteredGroup fg = ta.fg;
  return {std::move(ta), std::move(fg)};
}

}  // namespace

LoadedSpec parse_group_spec(const std::string& text,
                            std::optional<unsigned> depth_override) {
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error("spec: JSON parse error at byte " + std::to_string(e.byte) +
                      ": " + e.what());
  }
  if (!spec.is_object()) throw input_error("spec: top level must be an object");
  const json& kind = field(spec, "kind");
  if (kind == "permutation") return parse_permutation(spec);
  if (kind == "tree") return parse_tree(spec, depth_override);
  throw input_error("spec: 'kind' must be \"permutation\" or \"tree\"");
}

LoadedSpec load_group_spec(const std::string& path,
                           std::optional<unsigned> depth_override) {
  std::ifstream in(path);
  if (!in) throw input_error("spec: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_spec(buf.str(), depth_override);
}

nlohmann::json perm_json(const Perm& p) {
  nlohmann::json out = nlohmann::json::array();
  for (auto x : p.images()) out.push_back(x);
  return out;
}

nlohmann::json group_json(const Group& g) {
  std::vector<Perm> gens = g.generators();
  std::sort(gens.begin(), gens.end());
  nlohmann::json jg = nlohmann::json::array();
  for (const auto& p : gens) jg.push_back(perm_json(p));
  return {{"degree", g.degree()}, {"order", g.order()}, {"generators", jg}};
}

nlohmann::json class_json(const LocalClass& c) {
  nlohmann::json out{{"rep", group_json(c.rep)}};
  if (c.witness)
    out["witness_level"] = *c.witness;
  else
    out["witness_level"] = nullptr;
  return out;
}

nlohmann::json lattice_json(const FiniteLattice& lat) {
  nlohmann::json covers = nlohmann::json::array();
  for (std::size_t a = 0; a < lat.size(); ++a)
    for (std::size_t b = 0; b < lat.size(); ++b)
      if (lat.covers(a, b)) covers.push_back({a, b});
  nlohmann::json out{{"size", lat.size()},
                     {"keys", lat.keys()},
                     {"bottom", lat.bottom()},
                     {"covers", covers}};
  if (lat.top())
    out["top"] = *lat.top();
  else
    out["top"] = nullptr;
  return out;
}

nlohmann::json boolean_json(const BooleanAlg& alg) {
  return {{"lattice", lattice_json(alg.lattice)}, {"complement", alg.complement}};
}

nlohmann::json stone_json(const StoneSpace& sp) {
  nlohmann::json mem = nlohmann::json::array();
  for (const auto& row : sp.membership) {
    nlohmann::json r = nlohmann::json::array();
    for (char c : row) r.push_back(c != 0);
    mem.push_back(std::move(r));
  }
  return {{"n_elements", sp.n_elements},
          {"atom_of", sp.atom_of},
          {"membership", mem}};
}

nlohmann::json clopen_json(const ClopenSet& c) {
  return {{"addresses", c.addresses()}, {"empty", c.empty()}, {"full", c.full()}};
}

}  // namespace lnlat
