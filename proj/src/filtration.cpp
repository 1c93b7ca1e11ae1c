#include "lnlat/filtration.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace lnlat {

FilteredGroup::FilteredGroup(Group ambient, std::vector<Group> chain, std::size_t margin)
    : chain_(std::move(chain)), margin_(margin) {
  if (chain_.empty()) throw input_error("FilteredGroup: empty chain");
  if (!chain_[0].same_group_as(ambient))
    throw input_error("FilteredGroup: chain must start at the ambient group");
  for (std::size_t i = 0; i < chain_.size(); ++i) {
    if (chain_[i].degree() != ambient.degree())
      throw input_error("FilteredGroup: chain degree mismatch");
    if (i + 1 < chain_.size() && !chain_[i + 1].is_subgroup_of(chain_[i]))
      throw input_error("FilteredGroup: chain is not descending");
    for (const auto& g : chain_[0].generators())
      if (!normalises(g, chain_[i]))
        throw input_error("FilteredGroup: chain member at level " + std::to_string(i) +
                          " is not normal in the ambient group");
  }
  if (margin_ > depth()) throw input_error("FilteredGroup: margin exceeds chain depth");
  degenerate_ = chain_.back().is_trivial();
}

const Group& FilteredGroup::level(std::size_t i) const {
  if (i >= chain_.size()) throw input_error("FilteredGroup: level index out of range");
  return chain_[i];
}

std::string canonical_key(const Group& g) {
  Group reduced = Group::from_elements(g.degree(), g.elements());
  std::ostringstream out;
  for (const auto& p : reduced.generators()) out << p.to_string();
  if (reduced.generators().empty()) out << "[]";
  return out.str();
}

std::optional<LocallyNormalWitness> is_locally_normal(const FilteredGroup& fg,
                                                      const Group& h) {
  if (!h.is_subgroup_of(fg.ambient()))
    throw input_error("is_locally_normal: h is not inside the ambient group");
  for (std::size_t i = 0; i <= fg.depth(); ++i) {
    bool ok = true;
    for (const auto& g : fg.level(i).generators())
      if (!normalises(g, h)) {
        ok = false;
        break;
      }
    if (ok) return LocallyNormalWitness{h, i};
  }
  return std::nullopt;
}

LocalClass canonical_class(const FilteredGroup& fg, const Group& h) {
  if (!h.is_subgroup_of(fg.ambient()))
    throw input_error("canonical_class: h is not inside the ambient group");
  LocalClass c(intersection(h, fg.deepest()));
  auto w = is_locally_normal(fg, h);
  if (w) c.witness = w->level;
  c.source = h;
  return c;
}

namespace {

// Dense-bitset machinery over the element list of U_k, used by the lattice
// enumeration.  Subgroups of U_k become bitsets; meet is AND and join is a
// product set computed through the multiplication table.
struct Universe {
  std::vector<Perm> elems;  // sorted
  std::unordered_map<Perm, std::uint32_t, PermHash> index;
  std::size_t n = 0, words = 0;
  std::vector<std::uint32_t> mult;                     // n*n
  std::vector<std::vector<std::uint32_t>> conj_tables; // one per conjugator

  explicit Universe(const Group& uk, const std::vector<Perm>& conjugators) {
    elems = uk.elements();
    n = elems.size();
    words = (n + 63) / 64;
    for (std::uint32_t i = 0; i < n; ++i) index.emplace(elems[i], i);
    mult.assign(n * n, 0);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        mult[a * n + b] = index.at(elems[a] * elems[b]);
    for (const auto& g : conjugators) {
      std::vector<std::uint32_t> t(n);
      for (std::uint32_t a = 0; a < n; ++a) {
        auto it = index.find(elems[a].conjugated_by(g));
        if (it == index.end())
          throw input_error("ln_lattice: conjugation leaves the deepest level");
        t[a] = it->second;
      }
      conj_tables.push_back(std::move(t));
    }
  }
};

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::uint32_t i) { b[i >> 6] |= 1ull << (i & 63); }
bool get_bit(const Bits& b, std::uint32_t i) { return (b[i >> 6] >> (i & 63)) & 1; }

std::vector<std::uint32_t> members(const Bits& b, std::size_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < n; ++i)
    if (get_bit(b, i)) out.push_back(i);
  return out;
}

// Closure of `seed` under products and the universe's conjugation tables.
Bits normal_closure_bits(const Universe& u, const std::vector<std::uint32_t>& seed) {
  Bits in(u.words, 0);
  std::vector<std::uint32_t> queue;
  auto push = [&](std::uint32_t x) {
    if (!get_bit(in, x)) {
      set_bit(in, x);
      queue.push_back(x);
    }
  };
  push(static_cast<std::uint32_t>(u.index.at(Perm::identity(u.elems[0].degree()))));
  for (auto s : seed) push(s);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::uint32_t x = queue[qi];
    for (const auto& t : u.conj_tables) push(t[x]);
    // Product with everything already present (both orders).
    for (std::size_t pj = 0; pj < queue.size(); ++pj) {
      push(u.mult[x * u.n + queue[pj]]);
      push(u.mult[queue[pj] * u.n + x]);
    }
  }
  return in;
}

Bits product_bits(const Universe& u, const Bits& a, const Bits& b) {
  Bits out(u.words, 0);
  auto am = members(a, u.n), bm = members(b, u.n);
  for (auto x : am)
    for (auto y : bm) set_bit(out, u.mult[x * u.n + y]);
  return out;
}

Group group_of_bits(const Universe& u, const Bits& b, unsigned degree) {
  std::vector<Perm> elems;
  for (auto i : members(b, u.n)) elems.push_back(u.elems[i]);
  return Group::from_elements(degree, elems);
}

}  // namespace

std::optional<std::size_t> LocalClassLattice::index_of(const Group& rep) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].rep.order() == rep.order() && classes[i].rep.same_group_as(rep))
      return i;
  return std::nullopt;
}

LocalClassLattice ln_lattice(const FilteredGroup& fg, std::size_t max_witness,
                             std::uint64_t budget) {
  if (max_witness > fg.depth())
    throw input_error("ln_lattice: max_witness exceeds chain depth");
  const Group& uk = fg.deepest();
  if (uk.order() > 4096)
    throw resource_error("ln_lattice: deepest level too large", uk.order());

  Universe u(uk, fg.level(max_witness).generators());
  const unsigned degree = fg.ambient().degree();

  std::map<Bits, std::size_t> seen;
  std::vector<Bits> pool;
  auto add = [&](Bits b) -> bool {
    if (seen.count(b)) return false;
    if (pool.size() >= budget)
      throw resource_error("ln_lattice: class budget exceeded", pool.size());
    seen.emplace(b, pool.size());
    pool.push_back(std::move(b));
    return true;
  };

  Bits trivial(u.words, 0);
  set_bit(trivial, u.index.at(Perm::identity(degree)));
  add(trivial);
  Bits full(u.words, 0);
  for (std::uint32_t i = 0; i < u.n; ++i) set_bit(full, i);
  add(full);
  for (std::uint32_t e = 0; e < u.n; ++e)
    add(normal_closure_bits(u, {e}));

  // Close under meet (intersection) and join (product of mutually normalised
  // subgroups, hence already a subgroup).
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Bits meet(u.words);
      for (std::size_t w = 0; w < u.words; ++w) meet[w] = pool[i][w] & pool[j][w];
      add(std::move(meet));
      add(product_bits(u, pool[i], pool[j]));
    }
  }

  // Deterministic order: by size, then by the element-index sets themselves.
  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto popcount = [&](const Bits& b) {
    std::size_t c = 0;
    for (auto w : b) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    std::size_t ca = popcount(pool[a]), cb = popcount(pool[b]);
    if (ca != cb) return ca < cb;
    return members(pool[a], u.n) < members(pool[b], u.n);
  });

  LocalClassLattice out;
  out.max_witness = max_witness;
  out.degenerate_warning = fg.degenerate();
  std::vector<std::string> keys;
  std::vector<Bits> sorted_pool;
  for (auto idx : order) {
    LocalClass c(group_of_bits(u, pool[idx], degree));
    auto w = is_locally_normal(fg, c.rep);
    if (w) c.witness = w->level;
    keys.push_back(canonical_key(c.rep));
    out.classes.push_back(std::move(c));
    sorted_pool.push_back(pool[idx]);
  }
  out.lattice = FiniteLattice::from_leq(
      std::move(keys), [&](std::size_t a, std::size_t b) {
        for (std::size_t w = 0; w < u.words; ++w)
          if (sorted_pool[a][w] & ~sorted_pool[b][w]) return false;
        return true;
      });
  return out;
}

Group quasi_centre_at(const FilteredGroup& fg, std::size_t i) {
  return centraliser(fg.ambient(), fg.level(i));
}

bool qz_trivial_at(const FilteredGroup& fg, std::size_t i, std::size_t j) {
  if (!(j < i && i <= fg.depth()))
    throw input_error("qz_trivial_at: need j < i <= depth");
  const Group& uj = fg.level(j);
  for (const auto& g : fg.ambient().elements()) {
    if (uj.contains(g)) continue;
    bool central = true;
    for (const auto& x : fg.level(i).generators())
      if (!g.commutes_with(x)) {
        central = false;
        break;
      }
    if (central) return false;
  }
  return true;
}

Group quasi_centraliser(const FilteredGroup& fg, const Group& h, const Group& inside) {
  if (!h.is_subgroup_of(fg.ambient()) || !inside.is_subgroup_of(fg.ambient()))
    throw input_error("quasi_centraliser: arguments must lie in the ambient group");
  Group trace = intersection(h, fg.deepest());
  // The defining union stabilises at depth: h ∩ U_i ∩ U_k = h ∩ U_k for all i.
  for (std::size_t i = 0; i <= fg.depth(); ++i) {
    Group ti = intersection(intersection(h, fg.level(i)), fg.deepest());
    if (!ti.same_group_as(trace))
      throw internal_error("quasi_centraliser: trace not constant along the chain");
  }
  return centraliser(inside, trace);
}

bool c_stable_check(const FilteredGroup& fg, const Group& h) {
  if (!h.is_subgroup_of(fg.ambient()))
    throw input_error("c_stable_check: h is not inside the ambient group");
  const Group& g = fg.ambient();
  Group ch = centraliser(g, h);
  Group qc_h = quasi_centraliser(fg, h, g);
  Group qc_ch = quasi_centraliser(fg, ch, g);
  Group d = intersection(qc_h, qc_ch);

  Group both = product_group(h, ch);  // C_G(h) is normalised by h
  Group d2 = quasi_centraliser(fg, both, g);
  Group dk = intersection(d, fg.deepest());
  Group d2k = intersection(d2, fg.deepest());
  if (!dk.same_group_as(d2k))
    throw internal_error("c_stable_check: the two quasi-centraliser formulas disagree at depth");

  return d.is_subgroup_of(fg.level(fg.margin()));
}

std::vector<std::size_t> fixed_classes(const FilteredGroup& fg,
                                       const LocalClassLattice& lat) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < lat.classes.size(); ++i) {
    bool fixed = true;
    for (const auto& g : fg.ambient().generators()) {
      Group c = conjugate(fg.ambient(), lat.classes[i].rep, g);
      if (!c.same_group_as(lat.classes[i].rep)) {
        fixed = false;
        break;
      }
    }
    if (fixed) out.push_back(i);
  }
  return out;
}

ProjectedClasses project_to_depth(const FilteredGroup& fg, const LocalClassLattice& lat,
                                  std::size_t shallower) {
  if (shallower >= fg.depth())
    throw input_error("project_to_depth: target depth must be strictly shallower");
  ProjectedClasses out;
  for (const auto& c : lat.classes)
    out.reps.push_back(intersection(c.rep, fg.level(shallower)));
  // Meets are preserved: projection is intersection with a fixed subgroup.
  for (std::size_t a = 0; a < lat.classes.size(); ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      std::size_t m = lat.lattice.meet(a, b);
      Group lhs = intersection(out.reps[a], out.reps[b]);
      if (!lhs.same_group_as(out.reps[m]))
        throw internal_error("project_to_depth: meet not preserved");
    }
  return out;
}

}  // namespace lnlat
