#ifndef LNLAT_JSON_IO_HPP
#define LNLAT_JSON_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "lnlat/branch.hpp"
#include "lnlat/centlat.hpp"
#include "lnlat/filtration.hpp"
#include "lnlat/group.hpp"
#include "lnlat/lattice.hpp"
#include "lnlat/stone.hpp"

namespace lnlat {

/// A parsed group spec: always a filtered group, plus the tree action when
/// the spec was given by wreath recursion.
struct LoadedSpec {
  std::optional<TreeAction> tree;
  FilteredGroup fg;
};

/// Reads a spec file.  Two kinds:
///   permutation: degree, named generator image-arrays, filtration as
///     generator-name lists (level 0 implied = all generators);
///   tree: arity, depth, automaton states (root permutation + section state
///     names), generator state names.
/// `depth_override` replaces the tree depth when set.  Malformed JSON and
/// invalid group data raise input_error; parse failures carry the byte
/// offset.
LoadedSpec load_group_spec(const std::string& path,
                           std::optional<unsigned> depth_override = std::nullopt);
LoadedSpec parse_group_spec(const std::string& text,
                            std::optional<unsigned> depth_override = std::nullopt);

// Serialisers.  All output is canonical: object keys sorted (nlohmann maps),
// generator lists sorted as image arrays.
nlohmann::json perm_json(const Perm& p);
nlohmann::json group_json(const Group& g);
nlohmann::json class_json(const LocalClass& c);
nlohmann::json lattice_json(const FiniteLattice& lat);
nlohmann::json boolean_json(const BooleanAlg& alg);
nlohmann::json stone_json(const StoneSpace& sp);
nlohmann::json clopen_json(const ClopenSet& c);

}  // namespace lnlat

#endif
