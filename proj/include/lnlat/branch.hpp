#ifndef LNLAT_BRANCH_HPP
#define LNLAT_BRANCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lnlat/centlat.hpp"
#include "lnlat/filtration.hpp"
#include "lnlat/stone.hpp"

namespace lnlat {

struct TreeSpec {
  unsigned arity = 2;
  unsigned depth = 1;

  TreeSpec(unsigned arity, unsigned depth);
  std::uint64_t vertices_at(unsigned level) const;
  std::uint64_t leaves() const { return vertices_at(depth); }
};

/// Tree automorphisms by wreath recursion: each state has a root letter
/// permutation and one section state per letter.
struct AutomatonState {
  std::string name;
  std::vector<unsigned> root_perm;
  std::vector<std::string> sections;
};

struct WreathAutomaton {
  unsigned arity = 2;
  std::vector<AutomatonState> states;      // must include the identity state "e"
  std::vector<std::string> generators;
};

/// A clopen subset of the truncated boundary: canonically a minimal
/// antichain of vertices (full sibling families merged upward), internally a
/// leaf bitset.
class ClopenSet {
public:
  using Vertex = std::pair<unsigned, unsigned>;  // (level, index)

  ClopenSet(const TreeSpec& tree, const std::vector<Vertex>& vertices);
  static ClopenSet from_leaves(TreeSpec tree, std::vector<char> leaves);

  const TreeSpec& tree() const { return tree_; }
  const std::vector<Vertex>& antichain() const { return antichain_; }
  const std::vector<char>& leaves() const { return leaves_; }
  bool empty() const;
  bool full() const;
  ClopenSet complement() const;
  /// Base-arity digit addresses of the antichain, sorted.
  std::vector<std::string> addresses() const;

  bool operator==(const ClopenSet& o) const { return leaves_ == o.leaves_; }

private:
  explicit ClopenSet(TreeSpec tree) : tree_(std::move(tree)) {}

  TreeSpec tree_;
  std::vector<char> leaves_;
  std::vector<Vertex> antichain_;
};

/// The depth-d truncation acting on the level-d vertices, with the
/// level-stabiliser chain.
struct TreeAction {
  TreeSpec tree;
  FilteredGroup fg;
};

TreeAction truncate(const WreathAutomaton& aut, const TreeSpec& tree);

/// {g : g fixes every leaf outside c}.
Group rist(const TreeAction& ta, const ClopenSet& c);

struct BranchReport {
  bool smooth = true;
  bool weakly_branch = true;
  bool locally_branch = true;
  unsigned certified_level = 0;
  std::optional<ClopenSet> smooth_witness;
  std::optional<ClopenSet> weakly_witness;
  std::optional<ClopenSet> locally_witness;
};

/// Certifies the branch properties over every clopen with antichain at
/// levels <= max_level (the deepest level is excluded as a truncation
/// artefact; max_level must be <= depth - 1).
BranchReport branch_certify(const TreeAction& ta, unsigned max_level);

/// theta(c) = [rist(c) ∩ U_k] as a saturated centraliser class, for every
/// clopen at levels <= max_level.  Verifies injectivity, meet compatibility
/// and complement compatibility; for locally branch inputs also that every
/// image is a local decomposition class.
struct ThetaEmbedding {
  std::vector<ClopenSet> clopens;  // indexed by vertex subset mask
  std::vector<CentClass> images;
  bool lands_in_ld = false;
};
ThetaEmbedding theta_embedding(const TreeAction& ta, unsigned max_level, MarginLevels m);

/// rist(c) against the double centraliser C_G(C_G(rist(c) ∩ U_k)), both
/// intersected with U_k.  Exact equality generally fails at truncation by a
/// surplus inside the saturation subgroup; both verdicts are reported.
struct LatristResult {
  bool exact = false;
  bool mod_z = false;
  Group surplus;  // elements of the double centraliser trace missing from rist
};
LatristResult latrist_verify(const TreeAction& ta, const ClopenSet& c, MarginLevels m);

/// Locally faithful points of the dual space: p such that for every element
/// containing p, the subgroup acting trivially below that element is
/// trivial.  Also reports the truncated intersection property of the class
/// lattice and point-minimality; when all three of smoothness, LNIP and
/// minimality hold, triviality of all proper rigid stabilisers is asserted.
struct LnipReport {
  std::vector<std::size_t> locally_faithful;
  bool lnip = false;
  bool minimal = false;
};
LnipReport lnip_analysis(const TreeAction& ta, const BooleanAlg& alg,
                         const AlgebraAction& action, const LocalClassLattice& ln);

}  // namespace lnlat

#endif
