#ifndef LNLAT_STONE_HPP
#define LNLAT_STONE_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lnlat/filtration.hpp"
#include "lnlat/lattice.hpp"

namespace lnlat {

/// Dual space of a finite Boolean algebra.  Points are the atoms; the
/// membership relation realises each point as an ultrafilter (verified on
/// construction).
struct StoneSpace {
  std::size_t n_elements = 0;
  std::vector<std::size_t> atom_of;          // point -> algebra atom index
  std::vector<std::vector<char>> membership;  // [point][element]
};

StoneSpace stone_space(const BooleanAlg& alg);

/// Clopen-algebra round trip: the subsets {S(a)} of the point set, ordered
/// by inclusion, must be isomorphic to the algebra.
CheckResult stone_round_trip(const BooleanAlg& alg);

/// Group acting on algebra elements; the callback must act by algebra
/// automorphisms (checked by action_laws_check on generators).
struct AlgebraAction {
  Group group;
  std::function<std::size_t(const Perm&, std::size_t)> act;
};

/// Automorphism property and the action law on generator pairs.
CheckResult action_laws_check(const BooleanAlg& alg, const AlgebraAction& action);

/// The permutation of points induced by the action of g.
std::vector<std::size_t> point_action(const BooleanAlg& alg, const StoneSpace& sp,
                                      const AlgebraAction& action, const Perm& g);

/// True iff every element's stabiliser contains some chain member of fg;
/// witness[0] = an element with non-open stabiliser.
CheckResult is_smooth(const BooleanAlg& alg, const AlgebraAction& action,
                      const FilteredGroup& fg);

/// Dual surjection S(B) -> S(A) of a Boolean embedding A -> B commuting
/// with the given actions (all verified; violations raise input_error).
struct QuotientMap {
  std::vector<std::size_t> point_map;  // S(B) point -> S(A) point
};
QuotientMap equivariant_quotient(const BooleanAlg& a, const BooleanAlg& b,
                                 const std::vector<std::size_t>& embed,
                                 const AlgebraAction& act_a, const AlgebraAction& act_b);

/// Point permutation -> algebra automorphism -> point permutation must
/// round-trip to the input (and the intermediate map pass all axioms).
bool aut_transport_check(const BooleanAlg& alg, const std::vector<std::size_t>& pi);

/// Atoms below a: the unique finest partition of a.
std::vector<std::size_t> finest_partition(const BooleanAlg& alg, std::size_t a);

std::string stone_to_json(const StoneSpace& sp);

}  // namespace lnlat

#endif
