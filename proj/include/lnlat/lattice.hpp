#ifndef LNLAT_LATTICE_HPP
#define LNLAT_LATTICE_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lnlat/errors.hpp"

namespace lnlat {

/// A finite meet-semilattice or lattice given by explicit tables.  Elements
/// are indices 0..size-1; each carries a caller-supplied canonical key used
/// for serialisation and deduplication.
class FiniteLattice {
public:
  static constexpr std::size_t kSizeCap = 1u << 14;

  /// Builds tables from a leq predicate.  Requires a least element and all
  /// binary meets; joins are required unless `meets_only`.
  static FiniteLattice from_leq(std::vector<std::string> keys,
                                const std::function<bool(std::size_t, std::size_t)>& leq,
                                bool meets_only = false);

  std::size_t size() const { return keys_.size(); }
  const std::vector<std::string>& keys() const { return keys_; }

  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
  bool has_joins() const { return !join_.empty(); }
  std::size_t join(std::size_t a, std::size_t b) const;

  std::size_t bottom() const { return bottom_; }
  /// Greatest element; present iff the lattice is bounded above.
  std::optional<std::size_t> top() const { return top_; }

  /// Elements covering the bottom.
  std::vector<std::size_t> atoms() const;
  /// b covers a: a < b with nothing strictly between.
  bool covers(std::size_t a, std::size_t b) const;

private:
  std::vector<std::string> keys_;
  std::vector<char> leq_;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
  std::size_t bottom_ = 0;
  std::optional<std::size_t> top_;
};

/// Order-reversing involution on a meet-semilattice, as a table.
struct Involution {
  std::vector<std::size_t> map;
};

/// Boolean algebra: a bounded distributive lattice with complement table.
struct BooleanAlg {
  FiniteLattice lattice;
  std::vector<std::size_t> complement;
};

struct CheckResult {
  bool ok = true;
  std::array<std::size_t, 3> witness{};  // offending indices (unused slots 0)
  std::string what;
  explicit operator bool() const { return ok; }
};

/// Modular law: a <= c implies a v (b ^ c) = (a v b) ^ c.
CheckResult modularity_check(const FiniteLattice& lat);
CheckResult is_distributive(const FiniteLattice& lat);
CheckResult is_boolean(const BooleanAlg& alg);

/// Thrown by boolflip_construct when the hypothesis fails; carries the pair.
class boolflip_rejected : public input_error {
public:
  boolflip_rejected(const std::string& what, std::size_t alpha, std::size_t beta)
      : input_error(what), alpha(alpha), beta(beta) {}
  std::size_t alpha, beta;
};

/// Builds a Boolean algebra from a meet-semilattice with 0 and an
/// order-reversing involution satisfying: a ^ b = 0 iff b <= inv(a).
/// The hypothesis and every output axiom are verified exhaustively.
BooleanAlg boolflip_construct(const FiniteLattice& m, const Involution& inv);

/// Smallest subalgebra containing `seed`, with the index map back into alg.
struct Subalgebra {
  BooleanAlg algebra;
  std::vector<std::size_t> parent_index;
};
Subalgebra subalgebra_generated(const BooleanAlg& alg, const std::vector<std::size_t>& seed);

enum class HomKind { meet, join, full, boolean_full };

/// Does f : src -> dst preserve the selected operations?
CheckResult lattice_hom_check(const FiniteLattice& src, const FiniteLattice& dst,
                              const std::vector<std::size_t>& f, HomKind kind);
CheckResult lattice_hom_check(const BooleanAlg& src, const BooleanAlg& dst,
                              const std::vector<std::size_t>& f);

std::string lattice_to_json(const FiniteLattice& lat);
std::string lattice_to_dot(const FiniteLattice& lat);

}  // namespace lnlat

#endif
