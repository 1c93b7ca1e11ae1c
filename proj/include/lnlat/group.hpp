#ifndef LNLAT_GROUP_HPP
#define LNLAT_GROUP_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "lnlat/perm.hpp"

namespace lnlat {

/// Handle to a finitely generated permutation group.  Immutable after
/// construction; cheap to copy (shared state).  Order and membership go
/// through a stabiliser chain; exhaustive element enumeration is available
/// as the independent second route.
class Group {
public:
  /// Elements enumerated beyond this cap raise resource_error.
  static constexpr std::uint64_t kElementCap = 1u << 20;

  Group(unsigned degree, std::vector<Perm> generators);
  static Group trivial(unsigned degree);
  /// Builds a handle from an explicit element set, reducing to a small
  /// generating set.
  static Group from_elements(unsigned degree, const std::vector<Perm>& elements);

  unsigned degree() const;
  const std::vector<Perm>& generators() const;

  /// |G| via the stabiliser chain.
  std::uint64_t order() const;
  /// Membership via sifting.
  bool contains(const Perm& p) const;

  /// All elements, sorted; computed once and cached.  Throws resource_error
  /// above `cap`.
  const std::vector<Perm>& elements(std::uint64_t cap = kElementCap) const;

  bool is_trivial() const { return order() == 1; }
  bool is_abelian() const;

  bool is_subgroup_of(const Group& other) const;
  /// Equality as abstract subgroups: mutual containment of generators.
  bool same_group_as(const Group& other) const;

private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  explicit Group(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
};

// ---- permgroup operations ------------------------------------------------

/// C_g(h) = {x in g : xy = yx for all y in h}.
Group centraliser(const Group& g, const Group& h);

/// N_g(h) = {x in g : x h x^-1 = h}.
Group normaliser(const Group& g, const Group& h);

/// Smallest subgroup of g containing s and closed under g-conjugation.
Group normal_closure(const Group& g, const std::vector<Perm>& s);

/// All normal subgroups of g (exhaustive, via closure of conjugacy-class
/// normal closures under joins).  Throws resource_error if order(g) > budget.
std::vector<Group> normal_subgroups(const Group& g, std::uint64_t budget = 1u << 16);

Group centre(const Group& g);

/// Largest subgroup of h normal in g.
Group core(const Group& g, const Group& h);

/// x h x^-1, for x in g.
Group conjugate(const Group& g, const Group& h, const Perm& x);

Group intersection(const Group& a, const Group& b);

/// Subgroup generated by a and b together.
Group join(const Group& a, const Group& b);

Group subgroup_generated(unsigned degree, const std::vector<Perm>& gens);

/// Does x normalise h?
bool normalises(const Perm& x, const Group& h);

/// The product set {a*b} as a group; requires (and checks) that it is closed.
Group product_group(const Group& a, const Group& b);

}  // namespace lnlat

#endif
