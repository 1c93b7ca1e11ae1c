#ifndef LNLAT_CENTLAT_HPP
#define LNLAT_CENTLAT_HPP

#include <optional>
#include <string>
#include <vector>

#include "lnlat/filtration.hpp"
#include "lnlat/lattice.hpp"

namespace lnlat {

/// Level pair used by the depth-artefact screens: predicates trust levels
/// i and j, never the deepest level itself.
struct MarginLevels {
  std::size_t i, j;
};

/// Defaults to (k-1, k-2).
MarginLevels default_margins(const FilteredGroup& fg);

/// Z = C_{U_k}(U_i): the depth elements central against the margin level.
/// Centraliser classes are only well-defined modulo this subgroup, so class
/// representatives are always saturated by it.
Group saturation_subgroup(const FilteredGroup& fg, std::size_t i);

/// An element g outside U_j whose conjugates under U_i generate an abelian
/// subgroup, if any exists.  Such a g generates a visible abelian locally
/// normal subgroup, and conversely every such subgroup contains one.
std::optional<Perm> visible_abelian_witness(const FilteredGroup& fg, std::size_t i,
                                            std::size_t j);

/// qz_trivial_at(i, j) plus absence of visible abelian locally normal
/// subgroups: the margin shadow of local C-stability.  The centraliser
/// classes below are only provably well-defined when this holds.
bool locally_c_stable_screen(const FilteredGroup& fg, MarginLevels m,
                             std::string* why = nullptr);

/// Element of the centraliser lattice.  cls.rep is the saturated depth
/// representative (always contains the saturation subgroup); cls.source the
/// ambient centraliser subgroup that produced it, kept for iterating ⊥;
/// perp_rep the literal centraliser of the rep inside the deepest level.
struct CentClass {
  LocalClass cls;
  Group perp_rep;
  bool validated = true;
};

CentClass perp(const FilteredGroup& fg, const LocalClass& alpha, MarginLevels m);
CentClass perp(const FilteredGroup& fg, const CentClass& alpha, MarginLevels m);

struct LcAlgebra {
  BooleanAlg algebra;
  std::vector<CentClass> classes;  // parallel to algebra elements
  bool validated = true;

  std::optional<std::size_t> index_of(const Group& rep) const;
};

/// Boolean algebra generated by the seeds' ⊥ classes, closed under meet and
/// ⊥; joins are attached by De Morgan and every axiom verified exhaustively.
LcAlgebra lc_algebra(const FilteredGroup& fg, const std::vector<LocalClass>& seeds,
                     MarginLevels m);

/// Verifies that ⊥² is a surjective lattice homomorphism from the
/// margin-valid part of ln onto lc.  A class is margin-valid when it is
/// saturated and realised by a centraliser class; the remaining classes are
/// depth artefacts that admit no homomorphic image at truncation.
CheckResult perp2_projection_check(const FilteredGroup& fg, const LocalClassLattice& ln,
                                   const LcAlgebra& lc, MarginLevels m);

/// Double-centraliser identities for normal subgroups a, b of g:
///   (i) C²(a∩b) = C²(a) ∩ C²(b), (ii) C_a(b) = C_a(a∩b),
///   (iii) C_a(C_g(b)) = C_a(C_a(b)).
/// By default g must have no nontrivial abelian normal subgroup (the
/// identities can genuinely fail otherwise); require_fitting_free = false
/// evaluates them anyway.
bool cclem_check(const Group& g, const Group& a, const Group& b,
                 bool require_fitting_free = true);

}  // namespace lnlat

#endif
