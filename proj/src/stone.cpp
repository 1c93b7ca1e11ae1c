#include "lnlat/stone.hpp"

#include <json.hpp>

#include <algorithm>

namespace lnlat {
namespace {

CheckResult fail(std::size_t a, std::size_t b, std::size_t c, std::string what) {
  CheckResult r;
  r.ok = false;
  r.witness = {a, b, c};
  r.what = std::move(what);
  return r;
}

std::size_t point_of_atom(const StoneSpace& sp, std::size_t atom) {
  for (std::size_t p = 0; p < sp.atom_of.size(); ++p)
    if (sp.atom_of[p] == atom) return p;
  throw internal_error("stone: image of an atom is not an atom");
}

}  // namespace

StoneSpace stone_space(const BooleanAlg& alg) {
  const FiniteLattice& lat = alg.lattice;
  StoneSpace sp;
  sp.n_elements = lat.size();
  sp.atom_of = lat.atoms();
  for (std::size_t a : sp.atom_of) {
    std::vector<char> row(lat.size(), 0);
    for (std::size_t e = 0; e < lat.size(); ++e) row[e] = lat.leq(a, e);
    sp.membership.push_back(std::move(row));
  }

  // Each member-set must be an ultrafilter.
  for (const auto& row : sp.membership) {
    for (std::size_t e = 0; e < lat.size(); ++e) {
      if (row[e] + row[alg.complement[e]] != 1)
        throw internal_error("stone_space: ultrafilter misses exactly-one-of law");
      for (std::size_t f = 0; f < lat.size(); ++f) {
        if (row[e] && lat.leq(e, f) && !row[f])
          throw internal_error("stone_space: ultrafilter not upward closed");
        if (row[e] && row[f] && !row[lat.meet(e, f)])
          throw internal_error("stone_space: ultrafilter not meet closed");
      }
    }
  }
  // Every element is the join of the atoms below it.
  for (std::size_t e = 0; e < lat.size(); ++e) {
    std::size_t j = lat.bottom();
    for (std::size_t a : sp.atom_of)
      if (lat.leq(a, e)) j = lat.join(j, a);
    if (j != e) throw internal_error("stone_space: element is not a join of atoms");
  }
  return sp;
}

CheckResult stone_round_trip(const BooleanAlg& alg) {
  StoneSpace sp = stone_space(alg);
  const FiniteLattice& lat = alg.lattice;
  const std::size_t n = sp.atom_of.size();
  if (n < 64 && lat.size() != (1ull << n))
    return fail(lat.size(), n, 0, "algebra size is not 2^atoms");

  // Point-set images, compared as bitsets.
  auto image = [&](std::size_t e) {
    std::vector<char> s(n, 0);
    for (std::size_t p = 0; p < n; ++p) s[p] = sp.membership[p][e];
    return s;
  };
  for (std::size_t e = 0; e < lat.size(); ++e)
    for (std::size_t f = 0; f < lat.size(); ++f) {
      if (e != f && image(e) == image(f)) return fail(e, f, 0, "clopen images collide");
      auto im = image(lat.meet(e, f));
      auto ie = image(e), jf = image(f);
      for (std::size_t p = 0; p < n; ++p)
        if (im[p] != (ie[p] && jf[p])) return fail(e, f, p, "meet is not intersection");
      auto ij = image(lat.join(e, f));
      for (std::size_t p = 0; p < n; ++p)
        if (ij[p] != (ie[p] || jf[p])) return fail(e, f, p, "join is not union");
    }
  for (std::size_t e = 0; e < lat.size(); ++e) {
    auto ie = image(e), ic = image(alg.complement[e]);
    for (std::size_t p = 0; p < n; ++p)
      if (ie[p] == ic[p]) return fail(e, p, 0, "complement is not set complement");
  }
  return {};
}

CheckResult action_laws_check(const BooleanAlg& alg, const AlgebraAction& action) {
  const FiniteLattice& lat = alg.lattice;
  const auto& gens = action.group.generators();
  Perm id = Perm::identity(action.group.degree());
  for (std::size_t e = 0; e < lat.size(); ++e)
    if (action.act(id, e) != e) return fail(e, 0, 0, "identity does not act trivially");
  for (const auto& g : gens) {
    for (std::size_t e = 0; e < lat.size(); ++e) {
      std::size_t ge = action.act(g, e);
      if (ge >= lat.size()) return fail(e, 0, 0, "action leaves the algebra");
      if (action.act(g, alg.complement[e]) != alg.complement[ge])
        return fail(e, 0, 0, "action does not preserve complement");
      for (std::size_t f = 0; f < lat.size(); ++f)
        if (action.act(g, lat.meet(e, f)) != lat.meet(ge, action.act(g, f)))
          return fail(e, f, 0, "action does not preserve meet");
    }
    for (const auto& h : gens) {
      Perm gh = g * h;
      for (std::size_t e = 0; e < lat.size(); ++e)
        if (action.act(g, action.act(h, e)) != action.act(gh, e))
          return fail(e, 0, 0, "action law fails on a generator pair");
    }
  }
  return {};
}

std::vector<std::size_t> point_action(const BooleanAlg& alg, const StoneSpace& sp,
                                      const AlgebraAction& action, const Perm& g) {
  (void)alg;
  std::vector<std::size_t> out(sp.atom_of.size());
  for (std::size_t p = 0; p < sp.atom_of.size(); ++p) {
    std::size_t img = action.act(g, sp.atom_of[p]);
    bool found = false;
    for (std::size_t q = 0; q < sp.atom_of.size(); ++q)
      if (sp.atom_of[q] == img) {
        out[p] = q;
        found = true;
      }
    if (!found) throw internal_error("point_action: atom image is not an atom");
  }
  return out;
}

CheckResult is_smooth(const BooleanAlg& alg, const AlgebraAction& action,
                      const FilteredGroup& fg) {
  if (!action.group.same_group_as(fg.ambient()))
    throw input_error("is_smooth: action group differs from the chain's ambient group");
  for (std::size_t e = 0; e < alg.lattice.size(); ++e) {
    bool open = false;
    for (std::size_t i = 0; i <= fg.depth() && !open; ++i) {
      // A subgroup stabilises e iff its generators do.
      bool fixes = true;
      for (const auto& g : fg.level(i).generators())
        if (action.act(g, e) != e) {
          fixes = false;
          break;
        }
      open = fixes;
    }
    if (!open) return fail(e, 0, 0, "element has a non-open stabiliser");
  }
  return {};
}

QuotientMap equivariant_quotient(const BooleanAlg& a, const BooleanAlg& b,
                                 const std::vector<std::size_t>& embed,
                                 const AlgebraAction& act_a, const AlgebraAction& act_b) {
  if (embed.size() != a.lattice.size())
    throw input_error("equivariant_quotient: embedding map has the wrong size");
  for (std::size_t v : embed)
    if (v >= b.lattice.size())
      throw input_error("equivariant_quotient: embedding image out of range");
  for (std::size_t e = 0; e < embed.size(); ++e)
    for (std::size_t f = 0; f < e; ++f)
      if (embed[e] == embed[f])
        throw input_error("equivariant_quotient: embedding is not injective");
  CheckResult hom = lattice_hom_check(a, b, embed);
  if (!hom.ok)
    throw input_error("equivariant_quotient: not a Boolean embedding: " + hom.what);
  if (!act_a.group.same_group_as(act_b.group))
    throw input_error("equivariant_quotient: actions have different groups");
  for (const auto& g : act_a.group.generators())
    for (std::size_t e = 0; e < a.lattice.size(); ++e)
      if (embed[act_a.act(g, e)] != act_b.act(g, embed[e]))
        throw input_error("equivariant_quotient: embedding is not equivariant");

  StoneSpace sa = stone_space(a);
  StoneSpace sb = stone_space(b);
  QuotientMap out;
  for (std::size_t q = 0; q < sb.atom_of.size(); ++q) {
    // Pull the ultrafilter of q back along the embedding; its minimum is the
    // atom of the image point.
    std::size_t m = *a.lattice.top();
    for (std::size_t e = 0; e < a.lattice.size(); ++e)
      if (b.lattice.leq(sb.atom_of[q], embed[e])) m = a.lattice.meet(m, e);
    out.point_map.push_back(point_of_atom(sa, m));
  }

  std::vector<char> hit(sa.atom_of.size(), 0);
  for (std::size_t p : out.point_map) hit[p] = 1;
  for (char h : hit)
    if (!h) throw internal_error("equivariant_quotient: dual map is not surjective");

  for (const auto& g : act_a.group.generators()) {
    auto pa = point_action(a, sa, act_a, g);
    auto pb = point_action(b, sb, act_b, g);
    for (std::size_t q = 0; q < out.point_map.size(); ++q)
      if (out.point_map[pb[q]] != pa[out.point_map[q]])
        throw input_error("equivariant_quotient: dual map is not equivariant");
  }
  return out;
}

bool aut_transport_check(const BooleanAlg& alg, const std::vector<std::size_t>& pi) {
  StoneSpace sp = stone_space(alg);
  const FiniteLattice& lat = alg.lattice;
  const std::size_t n = sp.atom_of.size();
  if (pi.size() != n) throw input_error("aut_transport_check: wrong permutation size");
  std::vector<char> seen(n, 0);
  for (std::size_t v : pi) {
    if (v >= n || seen[v]) throw input_error("aut_transport_check: not a permutation");
    seen[v] = 1;
  }

  // Algebra map induced by the point permutation.
  std::vector<std::size_t> f(lat.size());
  for (std::size_t e = 0; e < lat.size(); ++e) {
    std::size_t j = lat.bottom();
    for (std::size_t p = 0; p < n; ++p)
      if (sp.membership[p][e]) j = lat.join(j, sp.atom_of[pi[p]]);
    f[e] = j;
  }
  CheckResult hom = lattice_hom_check(BooleanAlg{lat, alg.complement},
                                      BooleanAlg{lat, alg.complement}, f);
  if (!hom.ok) return false;

  // The point permutation induced back from f must be the input.
  for (std::size_t p = 0; p < n; ++p)
    if (f[sp.atom_of[p]] != sp.atom_of[pi[p]]) return false;
  // And rebuilding the algebra map from that permutation returns f.
  for (std::size_t e = 0; e < lat.size(); ++e) {
    std::size_t j = lat.bottom();
    for (std::size_t p = 0; p < n; ++p)
      if (sp.membership[p][e]) j = lat.join(j, f[sp.atom_of[p]]);
    if (j != f[e]) return false;
  }
  return true;
}

std::vector<std::size_t> finest_partition(const BooleanAlg& alg, std::size_t a) {
  const FiniteLattice& lat = alg.lattice;
  if (a >= lat.size()) throw input_error("finest_partition: element out of range");
  std::vector<std::size_t> parts;
  std::size_t j = lat.bottom();
  for (std::size_t at : lat.atoms())
    if (lat.leq(at, a)) {
      for (std::size_t other : parts)
        if (lat.meet(at, other) != lat.bottom())
          throw internal_error("finest_partition: atoms are not disjoint");
      parts.push_back(at);
      j = lat.join(j, at);
    }
  if (j != a) throw internal_error("finest_partition: atoms do not cover the element");
  return parts;
}

std::string stone_to_json(const StoneSpace& sp) {
  nlohmann::json j;
  j["n_elements"] = sp.n_elements;
  auto points = nlohmann::json::array();
  for (std::size_t p = 0; p < sp.atom_of.size(); ++p) {
    nlohmann::json pt;
    pt["atom"] = sp.atom_of[p];
    std::string bits(sp.n_elements, '0');
    for (std::size_t e = 0; e < sp.n_elements; ++e)
      if (sp.membership[p][e]) bits[e] = '1';
    pt["members"] = bits;
    points.push_back(std::move(pt));
  }
  j["points"] = std::move(points);
  return j.dump(2);
}

}  // namespace lnlat
