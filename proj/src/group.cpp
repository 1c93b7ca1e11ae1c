#include "lnlat/group.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_set>

namespace lnlat {
namespace {

// One level of a stabiliser chain: a base point, the strong generators of
// the group at this level, and the orbit of the base point with a
// transversal element per orbit point.
struct ChainLevel {
  std::uint16_t base = 0;
  std::vector<Perm> sgens;
  std::vector<int> orbit_index;   // point -> transversal slot, -1 outside orbit
  std::vector<Perm> transversal;  // transversal[orbit_index[p]] maps base to p
};

class StabChain {
public:
  StabChain(unsigned degree, const std::vector<Perm>& gens) : degree_(degree) {
    for (const auto& g : gens) add(g);
    verify_to_fixpoint();
  }

  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (const auto& lv : levels_) n *= lv.transversal.size();
    return n;
  }

  bool contains(const Perm& p) const {
    Perm r = p;
    for (const auto& lv : levels_) {
      if (r.is_identity()) return true;
      int idx = lv.orbit_index[r[lv.base]];
      if (idx < 0) return false;
      r = lv.transversal[idx].inverse() * r;
    }
    return r.is_identity();
  }

private:
  unsigned degree_;
  std::vector<ChainLevel> levels_;

  static std::optional<std::uint16_t> first_moved(const Perm& p) {
    for (unsigned i = 0; i < p.degree(); ++i)
      if (p[static_cast<std::uint16_t>(i)] != i)
        return static_cast<std::uint16_t>(i);
    return std::nullopt;
  }

  void rebuild_orbit(std::size_t i) {
    auto& lv = levels_[i];
    lv.orbit_index.assign(degree_, -1);
    lv.transversal.clear();
    lv.orbit_index[lv.base] = 0;
    lv.transversal.push_back(Perm::identity(degree_));
    std::deque<std::uint16_t> queue{lv.base};
    while (!queue.empty()) {
      std::uint16_t p = queue.front();
      queue.pop_front();
      const Perm u = lv.transversal[lv.orbit_index[p]];
      for (const auto& s : lv.sgens) {
        std::uint16_t q = s[p];
        if (lv.orbit_index[q] < 0) {
          lv.orbit_index[q] = static_cast<int>(lv.transversal.size());
          lv.transversal.push_back(s * u);
          queue.push_back(q);
        }
      }
    }
  }

  // Sift p through levels from `from`; returns the residue and the level it
  // dropped out at (levels_.size() if it sifted through completely).
  std::pair<Perm, std::size_t> sift(Perm p, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      if (p.is_identity()) return {p, levels_.size()};
      const auto& lv = levels_[i];
      int idx = lv.orbit_index[p[lv.base]];
      if (idx < 0) return {p, i};
      p = lv.transversal[idx].inverse() * p;
    }
    return {p, levels_.size()};
  }

  void add(const Perm& g) {
    auto [residue, level] = sift(g, 0);
    if (!residue.is_identity()) extend(level, residue);
  }

  void extend(std::size_t i, const Perm& g) {
    if (i == levels_.size()) {
      ChainLevel lv;
      lv.base = *first_moved(g);
      levels_.push_back(std::move(lv));
    }
    // g fixes the bases of all levels above i, but still belongs to each of
    // their stabiliser groups, so their orbits must be recomputed with it.
    for (std::size_t j = 0; j <= i; ++j) {
      levels_[j].sgens.push_back(g);
      rebuild_orbit(j);
    }
    process_schreier(i);
  }

  void process_schreier(std::size_t i) {
    // Iterate until every Schreier generator of this level sifts to the
    // identity below.  Deeper levels may grow during the loop.
    bool changed = true;
    while (changed) {
      changed = false;
      const auto& lv = levels_[i];
      for (std::size_t t = 0; t < lv.transversal.size() && !changed; ++t) {
        const Perm& u = lv.transversal[t];
        for (const auto& s : lv.sgens) {
          std::uint16_t image = s[u[lv.base]];
          const Perm& v = lv.transversal[lv.orbit_index[image]];
          Perm schreier = v.inverse() * (s * u);
          auto [residue, level] = sift(std::move(schreier), i + 1);
          if (!residue.is_identity()) {
            extend(level, residue);
            changed = true;
            break;
          }
        }
      }
    }
  }

  void verify_to_fixpoint() {
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = 0; i < levels_.size(); ++i) {
        const auto& lv = levels_[i];
        for (std::size_t t = 0; t < lv.transversal.size() && !dirty; ++t) {
          const Perm& u = lv.transversal[t];
          for (const auto& s : lv.sgens) {
            std::uint16_t image = s[u[lv.base]];
            const Perm& v = lv.transversal[lv.orbit_index[image]];
            auto [residue, level] = sift(v.inverse() * (s * u), i + 1);
            if (!residue.is_identity()) {
              extend(level, residue);
              dirty = true;
              break;
            }
          }
        }
        if (dirty) break;
      }
    }
  }
};

}  // namespace

struct Group::Impl {
  unsigned degree;
  std::vector<Perm> gens;
  StabChain chain;

  mutable std::mutex cache_mutex;
  mutable std::vector<Perm> elements_cache;
  mutable bool elements_ready = false;

  Impl(unsigned degree, std::vector<Perm> g)
      : degree(degree), gens(std::move(g)), chain(degree, gens) {}
};

Group::Group(unsigned degree, std::vector<Perm> generators) {
  std::vector<Perm> gens;
  for (auto& g : generators) {
    if (g.degree() != degree)
      throw input_error("Group: generator degree mismatch");
    if (g.is_identity()) continue;
    if (std::find(gens.begin(), gens.end(), g) == gens.end())
      gens.push_back(std::move(g));
  }
  impl_ = std::make_shared<Impl>(degree, std::move(gens));
}

Group Group::trivial(unsigned degree) { return Group(degree, {}); }

Group Group::from_elements(unsigned degree, const std::vector<Perm>& elements) {
  std::vector<Perm> gens;
  Group h = Group::trivial(degree);
  for (const auto& e : elements) {
    if (!h.contains(e)) {
      gens.push_back(e);
      h = Group(degree, gens);
    }
  }
  if (h.order() != static_cast<std::uint64_t>(elements.size())) {
    // Input was not closed under composition; fall back to the generated
    // subgroup only if the caller really gave a subgroup.
    throw input_error("Group::from_elements: element set is not a subgroup");
  }
  return h;
}

unsigned Group::degree() const { return impl_->degree; }
const std::vector<Perm>& Group::generators() const { return impl_->gens; }
std::uint64_t Group::order() const { return impl_->chain.order(); }

bool Group::contains(const Perm& p) const {
  if (p.degree() != degree()) return false;
  return impl_->chain.contains(p);
}

const std::vector<Perm>& Group::elements(std::uint64_t cap) const {
  std::lock_guard<std::mutex> lock(impl_->cache_mutex);
  if (impl_->elements_ready) return impl_->elements_cache;
  std::uint64_t expected = order();
  if (expected > cap)
    throw resource_error("Group::elements: order exceeds cap", 0);
  std::unordered_set<Perm, PermHash> seen;
  std::deque<Perm> queue;
  Perm id = Perm::identity(degree());
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Perm e = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : impl_->gens) {
      Perm c = g * e;
      if (seen.insert(c).second) queue.push_back(std::move(c));
    }
  }
  impl_->elements_cache.assign(seen.begin(), seen.end());
  std::sort(impl_->elements_cache.begin(), impl_->elements_cache.end());
  impl_->elements_ready = true;
  return impl_->elements_cache;
}

bool Group::is_abelian() const {
  const auto& gens = impl_->gens;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!gens[i].commutes_with(gens[j])) return false;
  return true;
}

bool Group::is_subgroup_of(const Group& other) const {
  if (degree() != other.degree()) return false;
  for (const auto& g : generators())
    if (!other.contains(g)) return false;
  return true;
}

bool Group::same_group_as(const Group& other) const {
  return is_subgroup_of(other) && other.is_subgroup_of(*this);
}

// ---- operations ----------------------------------------------------------

namespace {
void check_same_degree(const Group& g, const Group& h) {
  if (g.degree() != h.degree())
    throw input_error("degree mismatch between group handles");
}
}  // namespace

Group centraliser(const Group& g, const Group& h) {
  check_same_degree(g, h);
  std::vector<Perm> kept;
  for (const auto& x : g.elements()) {
    bool ok = true;
    for (const auto& t : h.generators())
      if (!x.commutes_with(t)) { ok = false; break; }
    if (ok) kept.push_back(x);
  }
  return Group::from_elements(g.degree(), kept);
}

bool normalises(const Perm& x, const Group& h) {
  for (const auto& t : h.generators())
    if (!h.contains(t.conjugated_by(x))) return false;
  return true;
}

Group normaliser(const Group& g, const Group& h) {
  check_same_degree(g, h);
  std::vector<Perm> kept;
  for (const auto& x : g.elements())
    if (normalises(x, h)) kept.push_back(x);
  return Group::from_elements(g.degree(), kept);
}

Group subgroup_generated(unsigned degree, const std::vector<Perm>& gens) {
  return Group(degree, gens);
}

Group normal_closure(const Group& g, const std::vector<Perm>& s) {
  for (const auto& x : s)
    if (!g.contains(x))
      throw input_error("normal_closure: element outside the ambient group");
  std::vector<Perm> closure_gens = s;
  Group n(g.degree(), closure_gens);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < closure_gens.size(); ++i) {
      for (const auto& x : g.generators()) {
        Perm c = closure_gens[i].conjugated_by(x);
        if (!n.contains(c)) {
          closure_gens.push_back(c);
          n = Group(g.degree(), closure_gens);
          changed = true;
        }
      }
    }
  }
  return n;
}

Group centre(const Group& g) { return centraliser(g, g); }

Group core(const Group& g, const Group& h) {
  check_same_degree(g, h);
  std::vector<Perm> kept;
  for (const auto& e : h.elements()) {
    // Conjugation orbit of e under g must stay inside h.
    std::unordered_set<Perm, PermHash> orbit{e};
    std::deque<Perm> queue{e};
    bool inside = true;
    while (!queue.empty() && inside) {
      Perm cur = std::move(queue.front());
      queue.pop_front();
      for (const auto& x : g.generators()) {
        Perm c = cur.conjugated_by(x);
        if (!h.contains(c)) { inside = false; break; }
        if (orbit.insert(c).second) queue.push_back(std::move(c));
      }
    }
    if (inside) kept.push_back(e);
  }
  return Group::from_elements(g.degree(), kept);
}

Group conjugate(const Group& g, const Group& h, const Perm& x) {
  check_same_degree(g, h);
  if (!g.contains(x))
    throw input_error("conjugate: conjugating element outside the ambient group");
  std::vector<Perm> gens;
  gens.reserve(h.generators().size());
  for (const auto& t : h.generators()) gens.push_back(t.conjugated_by(x));
  return Group(h.degree(), std::move(gens));
}

Group intersection(const Group& a, const Group& b) {
  check_same_degree(a, b);
  const Group& small = a.order() <= b.order() ? a : b;
  const Group& large = a.order() <= b.order() ? b : a;
  std::vector<Perm> kept;
  for (const auto& e : small.elements())
    if (large.contains(e)) kept.push_back(e);
  return Group::from_elements(a.degree(), kept);
}

Group join(const Group& a, const Group& b) {
  check_same_degree(a, b);
  std::vector<Perm> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Group(a.degree(), std::move(gens));
}

Group product_group(const Group& a, const Group& b) {
  Group j = join(a, b);
  // AB is a subgroup iff AB = BA iff |AB| = |A||B|/|A∩B| = |<A,B>|.
  std::uint64_t inter = intersection(a, b).order();
  if (a.order() / inter * b.order() != j.order())
    throw input_error("product_group: product set is not a subgroup");
  return j;
}

std::vector<Group> normal_subgroups(const Group& g, std::uint64_t budget) {
  if (g.order() > budget)
    throw resource_error("normal_subgroups: order exceeds budget", g.order());
  // Join-irreducible normal subgroups are normal closures of single
  // conjugacy classes; every normal subgroup is a join of those.
  std::vector<Group> closures;
  auto known = [&](const Group& n) {
    for (const auto& m : closures)
      if (m.order() == n.order() && m.same_group_as(n)) return true;
    return false;
  };
  std::unordered_set<Perm, PermHash> classed;
  for (const auto& e : g.elements()) {
    if (classed.count(e)) continue;
    // Mark the conjugacy class of e as handled.
    std::deque<Perm> queue{e};
    classed.insert(e);
    while (!queue.empty()) {
      Perm cur = std::move(queue.front());
      queue.pop_front();
      for (const auto& x : g.generators()) {
        Perm c = cur.conjugated_by(x);
        if (classed.insert(c).second) queue.push_back(std::move(c));
      }
    }
    Group n = normal_closure(g, {e});
    if (!known(n)) closures.push_back(n);
  }
  std::vector<Group> all = closures;
  if (!known(Group::trivial(g.degree()))) all.push_back(Group::trivial(g.degree()));
  auto known_all = [&](const Group& n) {
    for (const auto& m : all)
      if (m.order() == n.order() && m.same_group_as(n)) return true;
    return false;
  };
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& c : closures) {
      Group j = join(all[i], c);
      if (!known_all(j)) all.push_back(j);
    }
  }
  return all;
}

}  // namespace lnlat
