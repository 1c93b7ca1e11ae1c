#ifndef LNLAT_DECOMP_HPP
#define LNLAT_DECOMP_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "lnlat/filtration.hpp"
#include "lnlat/group.hpp"
#include "lnlat/lattice.hpp"

namespace lnlat {

/// Unique factorisation of a centerless group into indecomposable direct
/// factors.
struct Decomposition {
  std::vector<Group> factors;
  Group of;
};

/// C_h(kf): the unique direct complement of the factor kf in the
/// centre-free group h.
Group direct_complement(const Group& h, const Group& kf);

Decomposition krs_decompose(const Group& h, std::uint64_t budget = 1u << 16);

/// All 2^n direct factors: products of subsets of the indecomposables.
std::vector<Group> all_direct_factors(const Decomposition& d);

/// Splits h (required to be its own double centraliser) along the factor kf:
/// returns (h ∩ kf, C_h(kf)), an internal direct product equal to h.
std::pair<Group, Group> dirfac_split(const Group& g, const Group& kf, const Group& h);

/// The local decomposition algebra of alpha: classes of locally normal
/// almost direct factors, Boolean with complement by the opposite factors.
struct LdAlgebra {
  BooleanAlg algebra;
  std::vector<LocalClass> classes;  // parallel to algebra elements
  /// The level whose support factors generate the algebra.
  std::size_t factor_level = 0;
  /// True when every complement class matched the literal centraliser
  /// representative exactly; false when they differ by central depth
  /// artefacts (always within the saturation subgroup).
  bool complements_exact = true;
};

LdAlgebra ld_lattice(const FilteredGroup& fg, const LocalClass& alpha);

/// Support factorisation of a chain level: the finest partition of the
/// permutation domain into blocks whose pointwise-complement stabilisers
/// multiply out to the whole level subgroup.
std::vector<Group> support_factors(const Group& g);

/// alpha ∈ LD(G;beta)?  Also asserts the containment equivalence
/// LD(G;alpha) ⊆ LD(G;beta) ⟺ membership.
bool ld_transitive_check(const FilteredGroup& fg, const LocalClass& alpha,
                         const LocalClass& beta);

}  // namespace lnlat

#endif
