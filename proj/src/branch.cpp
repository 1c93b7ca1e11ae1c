#include "lnlat/branch.hpp"

#include <algorithm>
#include <map>

#include "lnlat/decomp.hpp"

namespace lnlat {
namespace {

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

const AutomatonState& state_named(const WreathAutomaton& aut, const std::string& name) {
  for (const auto& s : aut.states)
    if (s.name == name) return s;
  throw input_error("automaton: dangling state name '" + name + "'");
}

}  // namespace

TreeSpec::TreeSpec(unsigned arity, unsigned depth) : arity(arity), depth(depth) {
  if (arity < 2) throw input_error("tree: arity must be at least 2");
  if (depth < 1) throw input_error("tree: depth must be at least 1");
  if (upow(arity, depth) > 4096)
    throw resource_error("tree: too many leaves", upow(arity, depth));
}

std::uint64_t TreeSpec::vertices_at(unsigned level) const {
  if (level > depth) throw input_error("tree: level beyond the depth");
  return upow(arity, level);
}

ClopenSet::ClopenSet(const TreeSpec& tree, const std::vector<Vertex>& vertices)
    : tree_(tree) {
  std::vector<char> leaves(tree.leaves(), 0);
  for (const auto& [level, index] : vertices) {
    if (level > tree.depth || index >= tree.vertices_at(level))
      throw input_error("clopen: vertex out of range");
    std::uint64_t width = upow(tree.arity, tree.depth - level);
    for (std::uint64_t l = index * width; l < (index + 1) * width; ++l) {
      if (leaves[l])
        throw input_error("clopen: vertices overlap (one is an ancestor of another)");
      leaves[l] = 1;
    }
  }
  *this = from_leaves(tree, std::move(leaves));
}

ClopenSet ClopenSet::from_leaves(TreeSpec tree, std::vector<char> leaves) {
  if (leaves.size() != tree.leaves())
    throw input_error("clopen: leaf vector has the wrong size");
  ClopenSet c(tree);
  c.leaves_ = std::move(leaves);
  // Minimal antichain: emit a vertex iff its whole cone is present.
  auto build = [&](auto&& self, unsigned level, std::uint64_t index) -> void {
    std::uint64_t width = upow(tree.arity, tree.depth - level);
    std::uint64_t lo = index * width;
    bool all = true, none = true;
    for (std::uint64_t l = lo; l < lo + width; ++l)
      (c.leaves_[l] ? none : all) = false;
    if (none) return;
    if (all) {
      c.antichain_.emplace_back(level, static_cast<unsigned>(index));
      return;
    }
    for (unsigned ch = 0; ch < tree.arity; ++ch)
      self(self, level + 1, index * tree.arity + ch);
  };
  build(build, 0, 0);
  return c;
}

bool ClopenSet::empty() const {
  return std::none_of(leaves_.begin(), leaves_.end(), [](char x) { return x; });
}

bool ClopenSet::full() const {
  return std::all_of(leaves_.begin(), leaves_.end(), [](char x) { return x; });
}

ClopenSet ClopenSet::complement() const {
  std::vector<char> inv(leaves_.size());
  for (std::size_t l = 0; l < leaves_.size(); ++l) inv[l] = !leaves_[l];
  return from_leaves(tree_, std::move(inv));
}

std::vector<std::string> ClopenSet::addresses() const {
  std::vector<std::string> out;
  for (const auto& [level, index] : antichain_) {
    std::string addr(level, '0');
    unsigned v = index;
    for (unsigned p = level; p-- > 0;) {
      addr[p] = static_cast<char>('0' + v % tree_.arity);
      v /= tree_.arity;
    }
    out.push_back(std::move(addr));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TreeAction truncate(const WreathAutomaton& aut, const TreeSpec& tree) {
  if (aut.arity != tree.arity) throw input_error("truncate: arity mismatch");
  const AutomatonState& e = state_named(aut, "e");
  for (unsigned i = 0; i < aut.arity; ++i)
    if (e.root_perm.at(i) != i || e.sections.at(i) != "e")
      throw input_error("truncate: identity state is not the identity");
  for (const auto& s : aut.states) {
    if (s.root_perm.size() != aut.arity || s.sections.size() != aut.arity)
      throw input_error("truncate: state '" + s.name + "' has the wrong arity");
    std::vector<char> seen(aut.arity, 0);
    for (unsigned v : s.root_perm) {
      if (v >= aut.arity || seen[v])
        throw input_error("truncate: state '" + s.name + "' root is not a permutation");
      seen[v] = 1;
    }
    for (const auto& sec : s.sections) state_named(aut, sec);
  }

  const unsigned degree = static_cast<unsigned>(tree.leaves());
  auto expand = [&](const AutomatonState& s) {
    std::vector<std::uint16_t> img(degree);
    for (unsigned l = 0; l < degree; ++l) {
      const AutomatonState* cur = &s;
      unsigned out = 0;
      for (unsigned pos = 0; pos < tree.depth; ++pos) {
        unsigned digit = static_cast<unsigned>(
            l / upow(tree.arity, tree.depth - 1 - pos) % tree.arity);
        out = out * tree.arity + cur->root_perm[digit];
        cur = &state_named(aut, cur->sections[digit]);
      }
      img[l] = static_cast<std::uint16_t>(out);
    }
    return Perm(std::move(img));
  };

  std::vector<Perm> gens;
  for (const auto& name : aut.generators) gens.push_back(expand(state_named(aut, name)));
  Group g = gens.empty() ? Group::trivial(degree) : Group(degree, std::move(gens));

  // Chain: pointwise stabilisers of levels 0 .. depth-1.
  std::vector<Group> chain{g};
  for (unsigned j = 1; j < tree.depth; ++j) {
    std::uint64_t width = upow(tree.arity, tree.depth - j);
    std::vector<Perm> members;
    for (const auto& x : g.elements()) {
      bool fixes = true;
      for (unsigned l = 0; l < degree && fixes; ++l)
        if (x[l] / width != l / width) fixes = false;
      if (fixes) members.push_back(x);
    }
    chain.push_back(Group::from_elements(degree, members));
  }
  return {tree, FilteredGroup(g, std::move(chain))};
}

Group rist(const TreeAction& ta, const ClopenSet& c) {
  const Group& g = ta.fg.ambient();
  std::vector<Perm> members;
  for (const auto& x : g.elements()) {
    bool ok = true;
    for (unsigned l = 0; l < g.degree() && ok; ++l)
      if (!c.leaves()[l] && x[l] != l) ok = false;
    if (ok) members.push_back(x);
  }
  return Group::from_elements(g.degree(), members);
}

BranchReport branch_certify(const TreeAction& ta, unsigned max_level) {
  if (max_level > ta.tree.depth - 1)
    throw input_error("branch_certify: max_level must stay below the deepest level");
  const std::uint64_t n = ta.tree.vertices_at(max_level);
  if (n > 12) throw resource_error("branch_certify: too many clopens", n);

  BranchReport rep;
  rep.certified_level = max_level;
  const std::uint64_t width = upow(ta.tree.arity, ta.tree.depth - max_level);
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    std::vector<char> leaves(ta.tree.leaves(), 0);
    for (std::uint64_t v = 0; v < n; ++v)
      if (mask & (1ull << v))
        for (std::uint64_t l = v * width; l < (v + 1) * width; ++l) leaves[l] = 1;
    ClopenSet c = ClopenSet::from_leaves(ta.tree, leaves);

    if (rep.smooth) {
      bool open = false;
      for (std::size_t i = 0; i <= ta.fg.depth() && !open; ++i) {
        bool stab = true;
        for (const auto& x : ta.fg.level(i).generators())
          for (unsigned l = 0; l < ta.fg.ambient().degree() && stab; ++l)
            if (c.leaves()[l] != c.leaves()[x[l]]) stab = false;
        open = stab;
      }
      if (!open) {
        rep.smooth = false;
        rep.smooth_witness = c;
      }
    }

    Group r = rist(ta, c);
    if (rep.weakly_branch && r.is_trivial()) {
      rep.weakly_branch = false;
      rep.weakly_witness = c;
    }
    if (rep.locally_branch) {
      Group p = product_group(r, rist(ta, c.complement()));
      bool open = false;
      for (std::size_t i = 0; i <= ta.fg.depth() && !open; ++i) {
        bool inside = true;
        for (const auto& x : ta.fg.level(i).generators())
          if (!p.contains(x)) {
            inside = false;
            break;
          }
        open = inside;
      }
      if (!open) {
        rep.locally_branch = false;
        rep.locally_witness = c;
      }
    }
  }
  return rep;
}

ThetaEmbedding theta_embedding(const TreeAction& ta, unsigned max_level, MarginLevels m) {
  BranchReport cert = branch_certify(ta, max_level);
  if (!cert.weakly_branch)
    throw input_error("theta_embedding: action is not weakly branch to this level");
  const bool validated = locally_c_stable_screen(ta.fg, m);
  Group z = saturation_subgroup(ta.fg, m.i);

  const std::uint64_t n = ta.tree.vertices_at(max_level);
  const std::uint64_t width = upow(ta.tree.arity, ta.tree.depth - max_level);
  ThetaEmbedding out;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<char> leaves(ta.tree.leaves(), 0);
    for (std::uint64_t v = 0; v < n; ++v)
      if (mask & (1ull << v))
        for (std::uint64_t l = v * width; l < (v + 1) * width; ++l) leaves[l] = 1;
    ClopenSet c = ClopenSet::from_leaves(ta.tree, leaves);
    Group r = rist(ta, c);
    Group rep = product_group(intersection(r, ta.fg.deepest()), z);
    LocalClass cls(rep);
    cls.source = r;
    if (auto w = is_locally_normal(ta.fg, rep)) cls.witness = w->level;
    Group pr = centraliser(ta.fg.deepest(), rep);
    out.clopens.push_back(std::move(c));
    out.images.push_back({std::move(cls), std::move(pr), validated});
  }

  const std::uint64_t full = (1ull << n) - 1;
  for (std::uint64_t a = 0; a <= full; ++a) {
    for (std::uint64_t b = 0; b < a; ++b)
      if (out.images[a].cls.rep.same_group_as(out.images[b].cls.rep))
        throw truncation_artefact_error("theta_embedding: classes collide for clopens " +
                                        std::to_string(a) + ", " + std::to_string(b));
    for (std::uint64_t b = 0; b <= full; ++b)
      if (!out.images[a & b].cls.rep.same_group_as(
              intersection(out.images[a].cls.rep, out.images[b].cls.rep)))
        throw truncation_artefact_error(
            "theta_embedding: meet incompatibility at clopens " + std::to_string(a) +
            ", " + std::to_string(b));
    CentClass p = perp(ta.fg, out.images[a], m);
    if (!p.cls.rep.same_group_as(out.images[full & ~a].cls.rep))
      throw truncation_artefact_error(
          "theta_embedding: complement incompatibility at clopen " + std::to_string(a));
  }

  if (cert.locally_branch) {
    LdAlgebra ld = ld_lattice(ta.fg, canonical_class(ta.fg, ta.fg.level(1)));
    for (std::uint64_t a = 0; a <= full; ++a) {
      bool found = false;
      for (const auto& c : ld.classes)
        if (product_group(c.rep, z).same_group_as(out.images[a].cls.rep)) {
          found = true;
          break;
        }
      if (!found)
        throw truncation_artefact_error(
            "theta_embedding: image is not a local decomposition class at clopen " +
            std::to_string(a));
    }
    out.lands_in_ld = true;
  }
  return out;
}

LatristResult latrist_verify(const TreeAction& ta, const ClopenSet& c, MarginLevels m) {
  Group r = rist(ta, c);
  Group trace = intersection(r, ta.fg.deepest());
  Group c1 = centraliser(ta.fg.ambient(), trace);
  Group c2 = centraliser(ta.fg.ambient(), c1);
  Group c2k = intersection(c2, ta.fg.deepest());

  LatristResult out{false, false, Group::trivial(ta.fg.ambient().degree())};
  out.exact = c2k.same_group_as(trace);
  Group z = saturation_subgroup(ta.fg, m.i);
  out.mod_z = product_group(c2k, z).same_group_as(product_group(trace, z));
  if (!out.exact) {
    std::vector<Perm> extra;
    for (const auto& x : c2k.elements())
      if (!trace.contains(x)) extra.push_back(x);
    extra.push_back(Perm::identity(ta.fg.ambient().degree()));
    out.surplus = subgroup_generated(ta.fg.ambient().degree(), extra);
  }
  return out;
}

LnipReport lnip_analysis(const TreeAction& ta, const BooleanAlg& alg,
                         const AlgebraAction& action, const LocalClassLattice& ln) {
  const Group& g = ta.fg.ambient();
  if (!action.group.same_group_as(g))
    throw input_error("lnip_analysis: action group differs from the tree action group");
  CheckResult laws = action_laws_check(alg, action);
  if (!laws.ok) throw input_error("lnip_analysis: " + laws.what);
  const FiniteLattice& lat = alg.lattice;
  // Faithfulness: nothing acts trivially on the whole algebra.  This is also
  // the smoothness requirement here: the stabiliser chain of a truncation
  // implicitly terminates in the trivial group, so stabilisers of algebra
  // elements are open exactly when the kernel is trivial.
  auto acts_trivially_below = [&](const Perm& x, std::size_t a) {
    for (std::size_t e = 0; e < lat.size(); ++e)
      if (lat.leq(e, a) && action.act(x, e) != e) return false;
    return true;
  };
  for (const auto& x : g.elements())
    if (!(x == Perm::identity(g.degree())) && acts_trivially_below(x, *lat.top()))
      throw input_error("lnip_analysis: action is not faithful");

  // trivial_below[a]: no nonidentity element acts trivially on [0, a].
  std::vector<char> trivial_below(lat.size(), 1);
  for (std::size_t a = 0; a < lat.size(); ++a)
    for (const auto& x : g.elements())
      if (!(x == Perm::identity(g.degree())) && acts_trivially_below(x, a)) {
        trivial_below[a] = 0;
        break;
      }

  LnipReport rep;
  StoneSpace sp = stone_space(alg);
  for (std::size_t p = 0; p < sp.atom_of.size(); ++p) {
    bool faithful = true;
    for (std::size_t a = 0; a < lat.size() && faithful; ++a)
      if (sp.membership[p][a] && !trivial_below[a]) faithful = false;
    if (faithful) rep.locally_faithful.push_back(p);
  }

  rep.lnip = true;
  for (std::size_t a = 0; a < ln.classes.size() && rep.lnip; ++a)
    for (std::size_t b = 0; b < ln.classes.size(); ++b) {
      if (ln.classes[a].rep.is_trivial() || ln.classes[b].rep.is_trivial()) continue;
      if (ln.classes[ln.lattice.meet(a, b)].rep.is_trivial()) {
        rep.lnip = false;
        break;
      }
    }

  // Minimality: the points form a single orbit.
  std::vector<char> reached(sp.atom_of.size(), 0);
  std::vector<std::size_t> queue{0};
  reached[0] = 1;
  while (!queue.empty()) {
    std::size_t p = queue.back();
    queue.pop_back();
    for (const auto& x : g.generators()) {
      std::size_t q = point_action(alg, sp, action, x)[p];
      if (!reached[q]) {
        reached[q] = 1;
        queue.push_back(q);
      }
    }
  }
  rep.minimal = std::all_of(reached.begin(), reached.end(), [](char r) { return r; });

  if (rep.lnip && rep.minimal)
    for (std::size_t a = 0; a < lat.size(); ++a)
      if (a != lat.bottom() && !trivial_below[a])
        throw internal_error(
            "lnip_analysis: intersection property with minimality left a nontrivial "
            "rigid stabiliser");
  return rep;
}

}  // namespace lnlat
