#ifndef LNLAT_FILTRATION_HPP
#define LNLAT_FILTRATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lnlat/group.hpp"
#include "lnlat/lattice.hpp"

namespace lnlat {

/// A finite group together with a descending chain U_0 ⊇ U_1 ⊇ ... ⊇ U_k of
/// subgroups normal in U_0, modelling a neighbourhood basis of compact open
/// subgroups.  Immutable.
class FilteredGroup {
public:
  /// chain[0] must be the ambient group itself; every member must be normal
  /// in it and contain the next.  margin selects U_margin for the depth
  /// predicates.
  FilteredGroup(Group ambient, std::vector<Group> chain, std::size_t margin = 1);

  const Group& ambient() const { return chain_[0]; }
  const Group& level(std::size_t i) const;
  /// Deepest level index k.
  std::size_t depth() const { return chain_.size() - 1; }
  const Group& deepest() const { return chain_.back(); }
  std::size_t margin() const { return margin_; }

  /// True when U_k = 1; all classes collapse and results carry a warning.
  bool degenerate() const { return degenerate_; }

private:
  std::vector<Group> chain_;
  std::size_t margin_;
  bool degenerate_;
};

/// Local-equivalence class of a subgroup: identified by its trace at the
/// deepest level.  `source` keeps the subgroup the class was formed from,
/// when one is known; `witness` the smallest level normalising the source.
struct LocalClass {
  Group rep;
  std::optional<std::size_t> witness;
  std::optional<Group> source;

  explicit LocalClass(Group rep) : rep(std::move(rep)) {}
};

struct LocallyNormalWitness {
  Group subgroup;
  std::size_t level;
};

/// Deterministic identity key for a subgroup: the reduced generator list of
/// its sorted element set.
std::string canonical_key(const Group& g);

LocalClass canonical_class(const FilteredGroup& fg, const Group& h);

/// Smallest chain level whose member normalises h, if any.
std::optional<LocallyNormalWitness> is_locally_normal(const FilteredGroup& fg,
                                                      const Group& h);

/// The lattice of all classes whose rep is normalised by U_{max_witness},
/// ordered by inclusion of reps; meet = intersection, join = product.
/// classes[i] corresponds to lattice element i.
struct LocalClassLattice {
  FiniteLattice lattice;
  std::vector<LocalClass> classes;
  std::size_t max_witness = 0;
  bool degenerate_warning = false;

  std::optional<std::size_t> index_of(const Group& rep) const;
};

LocalClassLattice ln_lattice(const FilteredGroup& fg, std::size_t max_witness,
                             std::uint64_t budget = 1u << 14);

/// C_G(U_i): the elements whose centraliser contains the level-i subgroup.
Group quasi_centre_at(const FilteredGroup& fg, std::size_t i);

/// True iff no element outside U_j centralises all of U_i.
bool qz_trivial_at(const FilteredGroup& fg, std::size_t i, std::size_t j);

/// C_inside(h ∩ U_k).
Group quasi_centraliser(const FilteredGroup& fg, const Group& h, const Group& inside);

/// Truncated C-stability: the double quasi-centraliser intersection
/// C_G(h∩U_k) ∩ C_G(C_G(h)∩U_k) must sit inside the margin level U_m.
/// Cross-checked against the product form C_G((h·C_G(h))∩U_k); a
/// disagreement of the two traces at depth raises internal_error.
bool c_stable_check(const FilteredGroup& fg, const Group& h);

/// Indices of classes whose rep is invariant under all ambient generators.
std::vector<std::size_t> fixed_classes(const FilteredGroup& fg,
                                       const LocalClassLattice& lat);

/// Classes re-cut at a shallower depth k' < k; asserts meets are preserved.
struct ProjectedClasses {
  std::vector<Group> reps;
};
ProjectedClasses project_to_depth(const FilteredGroup& fg, const LocalClassLattice& lat,
                                  std::size_t shallower);

}  // namespace lnlat

#endif
