#ifndef LNLAT_RADICALS_HPP
#define LNLAT_RADICALS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lnlat/centlat.hpp"
#include "lnlat/filtration.hpp"

namespace lnlat {

/// G/N with the induced chain (U_i·N)/N, realised by the permutation action
/// on cosets of N.  A trivial kernel returns the base unchanged.
struct QuotientFiltered {
  Group kernel;
  FilteredGroup quotient;
  std::vector<Perm> coset_reps;  // empty when the kernel is trivial
};
QuotientFiltered quotient_filtered(const FilteredGroup& base, const Group& kernel,
                                   std::uint64_t degree_cap = 1u << 14);

/// {g : [g, K ∩ U_k] ⊆ L}, the most permissive level of the quasi-centraliser
/// of K modulo L.  Requires L normal in K and both deep-intersection classes
/// invariant under ambient conjugation (checked on generators); the result is
/// asserted normal and to contain L.
Group qc_modulo(const FilteredGroup& fg, const Group& k, const Group& l);

enum class QzMode { exhaustive, qc_route };

/// Quasi-hypercentre at the given margin: the intersection of all normal N
/// whose quotient has margin-trivial quasi-centre (exhaustive mode), or the
/// quasi-centraliser of U_1 modulo the hypercentre of U_1-as-filtered
/// (qc_route).  The qc_route value agrees with the exhaustive one modulo the
/// margin level U_j; the agreement is checked whenever the exhaustive search
/// fits the budget.
Group qz_hypercentre(const FilteredGroup& fg, QzMode mode, MarginLevels m,
                     std::uint64_t budget = 1u << 16);

struct SemisimpleResult {
  bool ok = false;
  std::string reason;
  std::optional<Perm> witness_element;
  std::optional<Group> witness_subgroup;
};

/// Margin-trivial quasi-centre and no visible abelian locally normal
/// subgroup: no abelian A with U_i ⊆ N_G(A) and A ⊄ U_j.
SemisimpleResult c_semisimple_check(const FilteredGroup& fg, MarginLevels m);

/// Intersection of all normal N whose quotient passes c_semisimple_check.
/// The result always contains the quasi-hypercentre (asserted).  Whether the
/// quotient by the result is itself semisimple is reported, not asserted: at
/// truncation the qualifying kernels need not have a unique minimum, and
/// their intersection can lose the property.
struct RadicalReport {
  Group radical;
  bool shadow_ok = false;          // quotient by the radical is semisimple
  bool shadow_degenerate = false;  // quotient chain collapsed; check skipped
  SemisimpleResult quotient_check;
};
RadicalReport regular_radical_report(const FilteredGroup& fg, MarginLevels m,
                                     std::uint64_t budget = 1u << 16);
Group regular_radical(const FilteredGroup& fg, MarginLevels m,
                      std::uint64_t budget = 1u << 16);

struct StabilityReport {
  bool qz_match = false;
  bool radical_match = false;
  /// The inherited margins of U_i fell below level 0 and were clamped;
  /// mismatches are then truncation artefacts, not failures.
  bool below_margin = false;
  Group qz_ambient, qz_open, radical_ambient, radical_open;
};

/// Both radicals for fg and for U_i with its inherited sub-chain, with the
/// open-subgroup intersection identities QZ^∞(U_i) = QZ^∞(G) ∩ U_i and
/// R(U_i) = R(G) ∩ U_i checked at the inherited margins.
StabilityReport stability_checks(const FilteredGroup& fg, std::size_t open_index,
                                 MarginLevels m, std::uint64_t budget = 1u << 16);

struct NormalRepresentative {
  Group closure;
  std::uint64_t index;  // |closure ∩ U_k : l ∩ U_k|
};

/// Normal closure of a locally normal, commensurated subgroup, with the
/// finite index of the deep traces recorded.  Rejects subgroups whose deep
/// intersection class is moved by some ambient generator.
NormalRepresentative normal_representative(const FilteredGroup& fg, const Group& l);

}  // namespace lnlat

#endif
