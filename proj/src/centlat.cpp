#include "lnlat/centlat.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace lnlat {
namespace {

void require_margins(const FilteredGroup& fg, MarginLevels m, const char* who) {
  if (m.j >= m.i || m.i >= fg.depth())
    throw input_error(std::string(who) +
                      ": margin levels must satisfy j < i < depth of the chain");
}

Group saturate(const Group& trace, const Group& z) { return product_group(trace, z); }

/// One application of ⊥ from an explicit ambient source subgroup.  Returns
/// the saturated class representative and the centraliser that produced it.
struct PerpResult {
  Group rep;
  Group source;
};

PerpResult perp_core(const FilteredGroup& fg, const Group& src, MarginLevels m,
                     const Group& z) {
  const Group& uj = fg.level(m.j);
  Group p = centraliser(uj, intersection(src, uj));
  Group rep = saturate(intersection(p, fg.deepest()), z);
  const std::string want = canonical_key(rep);
  for (std::size_t a = m.j; a < fg.depth(); ++a)
    for (std::size_t b = m.j; b < fg.depth(); ++b) {
      Group alt = centraliser(fg.level(a), intersection(src, fg.level(b)));
      Group altrep = saturate(intersection(alt, fg.deepest()), z);
      if (canonical_key(altrep) != want)
        throw truncation_artefact_error(
            "perp: centraliser class unstable across levels (" + std::to_string(a) +
            ", " + std::to_string(b) + ")");
    }
  return {std::move(rep), std::move(p)};
}

CentClass finish(const FilteredGroup& fg, PerpResult r, bool validated) {
  LocalClass cls(r.rep);
  cls.source = std::move(r.source);
  if (auto w = is_locally_normal(fg, cls.rep)) cls.witness = w->level;
  Group pr = centraliser(fg.deepest(), cls.rep);
  return {std::move(cls), std::move(pr), validated};
}

const Group& source_of(const LocalClass& c) { return c.source ? *c.source : c.rep; }

}  // namespace

MarginLevels default_margins(const FilteredGroup& fg) {
  if (fg.depth() < 2)
    throw input_error("default_margins: chain depth must be at least 2");
  return {fg.depth() - 1, fg.depth() - 2};
}

Group saturation_subgroup(const FilteredGroup& fg, std::size_t i) {
  return centraliser(fg.deepest(), fg.level(i));
}

std::optional<Perm> visible_abelian_witness(const FilteredGroup& fg, std::size_t i,
                                            std::size_t j) {
  if (j > i || i > fg.depth())
    throw input_error("visible_abelian_witness: need j <= i <= depth");
  const Group& uj = fg.level(j);
  const std::vector<Perm>& gens = fg.level(i).generators();
  for (const auto& g : fg.ambient().elements()) {
    if (uj.contains(g)) continue;
    // Conjugate orbit of g under U_i, aborting at the first non-commuting
    // pair; a pairwise-commuting orbit generates an abelian normal closure.
    std::vector<Perm> orbit{g};
    std::unordered_set<Perm, PermHash> seen{g};
    bool abelian = true;
    for (std::size_t q = 0; q < orbit.size() && abelian; ++q)
      for (const auto& u : gens) {
        Perm c = orbit[q].conjugated_by(u);
        if (seen.count(c)) continue;
        for (const auto& o : orbit)
          if (!c.commutes_with(o)) {
            abelian = false;
            break;
          }
        if (!abelian) break;
        seen.insert(c);
        orbit.push_back(std::move(c));
      }
    if (abelian) return g;
  }
  return std::nullopt;
}

bool locally_c_stable_screen(const FilteredGroup& fg, MarginLevels m, std::string* why) {
  require_margins(fg, m, "locally_c_stable_screen");
  if (!qz_trivial_at(fg, m.i, m.j)) {
    if (why) *why = "quasi-centre of level " + std::to_string(m.i) +
                    " is visible outside level " + std::to_string(m.j);
    return false;
  }
  if (visible_abelian_witness(fg, m.i, m.j)) {
    if (why) *why = "abelian locally normal subgroup visible outside level " +
                    std::to_string(m.j);
    return false;
  }
  return true;
}

CentClass perp(const FilteredGroup& fg, const LocalClass& alpha, MarginLevels m) {
  require_margins(fg, m, "perp");
  bool validated = locally_c_stable_screen(fg, m);
  Group z = saturation_subgroup(fg, m.i);
  return finish(fg, perp_core(fg, source_of(alpha), m, z), validated);
}

CentClass perp(const FilteredGroup& fg, const CentClass& alpha, MarginLevels m) {
  require_margins(fg, m, "perp");
  Group z = saturation_subgroup(fg, m.i);
  return finish(fg, perp_core(fg, source_of(alpha.cls), m, z), alpha.validated);
}

std::optional<std::size_t> LcAlgebra::index_of(const Group& rep) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].cls.rep.order() == rep.order() &&
        classes[i].cls.rep.same_group_as(rep))
      return i;
  return std::nullopt;
}

LcAlgebra lc_algebra(const FilteredGroup& fg, const std::vector<LocalClass>& seeds,
                     MarginLevels m) {
  require_margins(fg, m, "lc_algebra");
  const bool validated = locally_c_stable_screen(fg, m);
  Group z = saturation_subgroup(fg, m.i);

  std::vector<Group> reps, sources;
  std::vector<std::optional<std::size_t>> perp_of;
  std::unordered_map<std::string, std::size_t> by_key;
  auto add = [&](Group rep, Group source) {
    std::string key = canonical_key(rep);
    auto it = by_key.find(key);
    if (it != by_key.end()) return it->second;
    std::size_t idx = reps.size();
    reps.push_back(std::move(rep));
    sources.push_back(std::move(source));
    perp_of.emplace_back();
    by_key.emplace(std::move(key), idx);
    return idx;
  };

  PerpResult top = perp_core(fg, Group::trivial(fg.ambient().degree()), m, z);
  add(top.rep, top.source);
  for (const auto& s : seeds) {
    PerpResult p = perp_core(fg, source_of(s), m, z);
    add(p.rep, p.source);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (perp_of[i]) continue;
      PerpResult p = perp_core(fg, sources[i], m, z);
      std::size_t before = reps.size();
      perp_of[i] = add(p.rep, p.source);
      if (reps.size() != before) changed = true;
    }
    const std::size_t n = reps.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        Group meet = intersection(reps[i], reps[j]);
        std::size_t before = reps.size();
        add(std::move(meet), intersection(sources[i], sources[j]));
        if (reps.size() != before) changed = true;
      }
    if (reps.size() > FiniteLattice::kSizeCap)
      throw resource_error("lc_algebra: closure exceeded the lattice size cap",
                           reps.size());
  }

  // Canonical order: by representative order, then key.
  std::vector<std::size_t> order(reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (reps[a].order() != reps[b].order()) return reps[a].order() < reps[b].order();
    return canonical_key(reps[a]) < canonical_key(reps[b]);
  });
  std::vector<std::size_t> pos(reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;

  std::vector<std::string> keys;
  for (std::size_t i : order) keys.push_back(canonical_key(reps[i]));
  FiniteLattice lat = FiniteLattice::from_leq(
      keys, [&](std::size_t a, std::size_t b) {
        return reps[order[a]].is_subgroup_of(reps[order[b]]);
      },
      /*meets_only=*/true);
  Involution inv;
  inv.map.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inv.map[i] = pos[*perp_of[order[i]]];

  LcAlgebra out;
  out.validated = validated;
  try {
    out.algebra = boolflip_construct(lat, inv);
  } catch (const input_error& e) {
    throw truncation_artefact_error(std::string("lc_algebra: ") + e.what());
  }
  for (std::size_t i : order) {
    LocalClass cls(reps[i]);
    cls.source = sources[i];
    if (auto w = is_locally_normal(fg, cls.rep)) cls.witness = w->level;
    Group pr = centraliser(fg.deepest(), cls.rep);
    out.classes.push_back({std::move(cls), std::move(pr), validated});
  }
  return out;
}

CheckResult perp2_projection_check(const FilteredGroup& fg, const LocalClassLattice& ln,
                                   const LcAlgebra& lc, MarginLevels m) {
  require_margins(fg, m, "perp2_projection_check");
  Group z = saturation_subgroup(fg, m.i);

  // Margin-valid domain: saturated classes realised as centraliser classes.
  // Unsaturated classes admit no homomorphic image: two of them can share a
  // saturation yet meet strictly below it.
  const std::size_t n = ln.classes.size();
  std::vector<std::optional<std::size_t>> sat_target(n);
  std::vector<std::size_t> dom;
  std::vector<std::size_t> dom_pos(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Group sat = saturate(ln.classes[i].rep, z);
    if (sat.order() != ln.classes[i].rep.order()) continue;
    if (auto t = lc.index_of(sat)) {
      sat_target[i] = *t;
      dom_pos[i] = dom.size();
      dom.push_back(i);
    }
  }

  auto fail = [](std::size_t a, std::size_t b, std::size_t c, std::string what) {
    CheckResult r;
    r.ok = false;
    r.witness = {a, b, c};
    r.what = std::move(what);
    return r;
  };

  // The domain must be closed under the ambient meet and join.
  for (std::size_t a : dom)
    for (std::size_t b : dom) {
      std::size_t mt = ln.lattice.meet(a, b);
      if (dom_pos[mt] == n) return fail(a, b, mt, "margin-valid classes not meet-closed");
      std::size_t jn = ln.lattice.join(a, b);
      if (dom_pos[jn] == n) return fail(a, b, jn, "margin-valid classes not join-closed");
    }

  // f = ⊥², which must agree with saturation and land in lc.
  std::vector<std::size_t> f(dom.size());
  for (std::size_t p = 0; p < dom.size(); ++p) {
    std::size_t i = dom[p];
    CentClass once = perp(fg, ln.classes[i], m);
    CentClass twice = perp(fg, once, m);
    auto tgt = lc.index_of(twice.cls.rep);
    if (!tgt) return fail(i, 0, 0, "perp^2 image is not a centraliser class");
    if (*tgt != *sat_target[i])
      return fail(i, *tgt, *sat_target[i], "perp^2 disagrees with saturation");
    f[p] = *tgt;
  }

  std::vector<std::string> keys;
  for (std::size_t i : dom) keys.push_back(ln.lattice.keys()[i]);
  FiniteLattice dl = FiniteLattice::from_leq(keys, [&](std::size_t a, std::size_t b) {
    return ln.lattice.leq(dom[a], dom[b]);
  });
  CheckResult hom = lattice_hom_check(dl, lc.algebra.lattice, f, HomKind::full);
  if (!hom.ok) return hom;

  std::vector<char> hit(lc.classes.size(), 0);
  for (std::size_t v : f) hit[v] = 1;
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (!hit[i]) return fail(i, 0, 0, "perp^2 is not surjective onto lc");
  return {};
}

bool cclem_check(const Group& g, const Group& a, const Group& b,
                 bool require_fitting_free) {
  for (const Group* h : {&a, &b}) {
    if (!h->is_subgroup_of(g)) throw input_error("cclem_check: not a subgroup");
    for (const auto& x : g.generators())
      if (!conjugate(g, *h, x).same_group_as(*h))
        throw input_error("cclem_check: subgroup is not normal");
  }
  if (require_fitting_free)
    for (const auto& nsub : normal_subgroups(g))
      if (!nsub.is_trivial() && nsub.is_abelian())
        throw input_error("cclem_check: abelian normal subgroup of order " +
                          std::to_string(nsub.order()));

  auto c2 = [&](const Group& x) { return centraliser(g, centraliser(g, x)); };
  Group ab = intersection(a, b);
  if (!c2(ab).same_group_as(intersection(c2(a), c2(b)))) return false;
  if (!centraliser(a, b).same_group_as(centraliser(a, ab))) return false;
  if (!centraliser(a, centraliser(g, b))
           .same_group_as(centraliser(a, centraliser(a, b))))
    return false;
  return true;
}

}  // namespace lnlat
