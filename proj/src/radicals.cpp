#include "lnlat/radicals.hpp"

#include <algorithm>
#include <unordered_map>

#include "lnlat/errors.hpp"

namespace lnlat {

namespace {

/// Margin form of quasi-centre triviality: C_G(U_i) ⊆ U_j.
bool margin_qz_trivial(const FilteredGroup& fg, MarginLevels m) {
  if (m.j > m.i || m.i > fg.depth())
    throw input_error("margin levels out of range");
  return quasi_centre_at(fg, m.i).is_subgroup_of(fg.level(m.j));
}

MarginLevels validated(const FilteredGroup& fg, MarginLevels m) {
  if (m.j > m.i || m.i > fg.depth())
    throw input_error("margin levels out of range");
  return m;
}

Group qz_exhaustive(const FilteredGroup& fg, MarginLevels m, std::uint64_t budget) {
  const Group& g = fg.ambient();
  Group q = g;
  if (margin_qz_trivial(fg, m)) {
    q = Group::trivial(g.degree());
  } else {
    for (const Group& n : normal_subgroups(g, budget)) {
      if (n.is_trivial()) continue;
      QuotientFiltered qf = quotient_filtered(fg, n);
      if (margin_qz_trivial(qf.quotient, m)) q = intersection(q, n);
    }
  }
  const FilteredGroup check =
      q.is_trivial() ? fg : quotient_filtered(fg, q).quotient;
  if (!check.degenerate() && !margin_qz_trivial(check, m))
    throw internal_error(
        "qz_hypercentre: quotient by the hypercentre is not margin-qz-trivial");
  return q;
}

/// Margins carried into the sub-chain starting at `off`: indices shift down
/// and are clamped into [1, subdepth] so the depth predicates stay
/// non-vacuous; any clamping marks the inherited margins as degenerate.
MarginLevels inherited_margins(std::size_t subdepth, MarginLevels m, std::size_t off,
                               bool* clamped) {
  if (off == 0) return m;
  if (subdepth == 0) {
    *clamped = true;
    return {0, 0};
  }
  auto clamp = [&](std::size_t raw, std::size_t hi) {
    std::size_t v = std::min(std::max<std::size_t>(raw, 1), hi);
    if (v != raw) *clamped = true;
    return v;
  };
  MarginLevels out{clamp(m.i > off ? m.i - off : 0, subdepth), 0};
  out.j = clamp(m.j > off ? m.j - off : 0, out.i);
  return out;
}

FilteredGroup open_subchain(const FilteredGroup& fg, std::size_t i) {
  std::vector<Group> chain;
  for (std::size_t l = i; l <= fg.depth(); ++l) chain.push_back(fg.level(l));
  const std::size_t margin = std::min<std::size_t>(fg.margin(), chain.size() - 1);
  return FilteredGroup(fg.level(i), std::move(chain), margin);
}

}  // namespace

QuotientFiltered quotient_filtered(const FilteredGroup& base, const Group& kernel,
                                   std::uint64_t degree_cap) {
  const Group& g = base.ambient();
  if (!kernel.is_subgroup_of(g))
    throw input_error("quotient_filtered: kernel is not a subgroup");
  for (const auto& x : g.generators())
    if (!conjugate(g, kernel, x).same_group_as(kernel))
      throw input_error("quotient_filtered: kernel is not normal");
  if (kernel.is_trivial()) return {kernel, base, {}};

  const std::uint64_t index = g.order() / kernel.order();
  if (index > degree_cap)
    throw resource_error("quotient_filtered: coset degree exceeds the cap", index);

  std::unordered_map<Perm, std::size_t, PermHash> coset_of;
  std::vector<Perm> reps;
  for (const auto& x : g.elements())
    if (!coset_of.count(x)) {
      const std::size_t id = reps.size();
      reps.push_back(x);
      for (const auto& n : kernel.elements()) coset_of.emplace(x * n, id);
    }

  auto image = [&](const Perm& y) {
    std::vector<std::uint16_t> img(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c)
      img[c] = static_cast<std::uint16_t>(coset_of.at(y * reps[c]));
    return Perm(std::move(img));
  };
  std::vector<Group> chain;
  for (std::size_t l = 0; l <= base.depth(); ++l) {
    std::vector<Perm> gens;
    for (const auto& y : base.level(l).generators()) gens.push_back(image(y));
    chain.emplace_back(static_cast<unsigned>(reps.size()), std::move(gens));
  }
  Group ambient = chain[0];
  FilteredGroup quotient(std::move(ambient), std::move(chain), base.margin());
  return {kernel, std::move(quotient), std::move(reps)};
}

Group qc_modulo(const FilteredGroup& fg, const Group& k, const Group& l) {
  const Group& g = fg.ambient();
  if (!l.is_subgroup_of(k)) throw input_error("qc_modulo: L is not a subgroup of K");
  for (const auto& x : k.generators())
    if (!conjugate(k, l, x).same_group_as(l))
      throw input_error("qc_modulo: L is not normal in K");
  const Group kk = intersection(k, fg.deepest());
  const std::string key_k = canonical_key(kk);
  const std::string key_l = canonical_key(intersection(l, fg.deepest()));
  for (const auto& x : g.generators()) {
    if (canonical_key(intersection(conjugate(g, k, x), fg.deepest())) != key_k)
      throw input_error("qc_modulo: the deep class of K is moved by " + x.to_string());
    if (canonical_key(intersection(conjugate(g, l, x), fg.deepest())) != key_l)
      throw input_error("qc_modulo: the deep class of L is moved by " + x.to_string());
  }

  Group result = Group::trivial(g.degree());
  if (l.is_trivial()) {
    result = centraliser(g, kk);
  } else {
    std::vector<Perm> members;
    for (const auto& x : g.elements()) {
      bool ok = true;
      const Perm xi = x.inverse();
      for (const auto& y : kk.elements())
        if (!l.contains(x * y * xi * y.inverse())) {
          ok = false;
          break;
        }
      if (ok) members.push_back(x);
    }
    result = Group::from_elements(g.degree(), members);
  }

  if (!l.is_subgroup_of(result))
    throw internal_error("qc_modulo: result does not contain L");
  for (const auto& x : g.generators())
    if (!conjugate(g, result, x).same_group_as(result))
      throw internal_error("qc_modulo: result is not normal");
  return result;
}

Group qz_hypercentre(const FilteredGroup& fg, QzMode mode, MarginLevels m,
                     std::uint64_t budget) {
  validated(fg, m);
  if (mode == QzMode::exhaustive) return qz_exhaustive(fg, m, budget);

  if (fg.depth() < 1) throw input_error("qz_hypercentre: qc_route needs a chain");
  FilteredGroup sub = open_subchain(fg, 1);
  bool clamped = false;
  const MarginLevels msub = inherited_margins(sub.depth(), m, 1, &clamped);
  Group r = qz_exhaustive(sub, msub, budget);
  Group k = qc_modulo(fg, fg.level(1), r);

  try {
    Group q = qz_exhaustive(fg, m, budget);
    if (!q.is_subgroup_of(k) ||
        !k.is_subgroup_of(product_group(fg.level(m.j), q)))
      throw internal_error(
          "qz_hypercentre: qc_route disagrees with the exhaustive value beyond "
          "the margin level");
  } catch (const resource_error&) {
  }
  return k;
}

SemisimpleResult c_semisimple_check(const FilteredGroup& fg, MarginLevels m) {
  validated(fg, m);
  SemisimpleResult res;
  const Group qc = quasi_centre_at(fg, m.i);
  if (!qc.is_subgroup_of(fg.level(m.j))) {
    res.reason = "quasi-centre visible outside the margin level";
    res.witness_subgroup = qc;
    for (const auto& x : qc.elements())
      if (!fg.level(m.j).contains(x)) {
        res.witness_element = x;
        break;
      }
    return res;
  }
  if (auto w = visible_abelian_witness(fg, m.i, m.j)) {
    res.reason = "abelian locally normal subgroup visible outside the margin level";
    res.witness_element = *w;
    res.witness_subgroup = normal_closure(
        join(fg.level(m.i), subgroup_generated(fg.ambient().degree(), {*w})), {*w});
    return res;
  }
  res.ok = true;
  return res;
}

RadicalReport regular_radical_report(const FilteredGroup& fg, MarginLevels m,
                                     std::uint64_t budget) {
  validated(fg, m);
  const Group& g = fg.ambient();
  Group rad = g;
  if (c_semisimple_check(fg, m).ok) {
    rad = Group::trivial(g.degree());
  } else {
    for (const Group& n : normal_subgroups(g, budget)) {
      if (n.is_trivial()) continue;
      QuotientFiltered qf = quotient_filtered(fg, n);
      if (c_semisimple_check(qf.quotient, m).ok) rad = intersection(rad, n);
    }
  }
  RadicalReport rep{rad, false, false, {}};
  const FilteredGroup check =
      rad.is_trivial() ? fg : quotient_filtered(fg, rad).quotient;
  if (check.degenerate()) {
    rep.shadow_degenerate = true;
    rep.shadow_ok = true;
  } else {
    rep.quotient_check = c_semisimple_check(check, m);
    rep.shadow_ok = rep.quotient_check.ok;
  }
  if (!qz_hypercentre(fg, QzMode::exhaustive, m, budget).is_subgroup_of(rad))
    throw internal_error("regular_radical: radical misses the quasi-hypercentre");
  return rep;
}

Group regular_radical(const FilteredGroup& fg, MarginLevels m, std::uint64_t budget) {
  return regular_radical_report(fg, m, budget).radical;
}

StabilityReport stability_checks(const FilteredGroup& fg, std::size_t open_index,
                                 MarginLevels m, std::uint64_t budget) {
  validated(fg, m);
  if (open_index > fg.depth())
    throw input_error("stability_checks: open index out of range");
  FilteredGroup sub = open_subchain(fg, open_index);
  bool clamped = false;
  const MarginLevels msub = inherited_margins(sub.depth(), m, open_index, &clamped);
  StabilityReport rep{false,
                      false,
                      clamped,
                      qz_hypercentre(fg, QzMode::exhaustive, m, budget),
                      Group::trivial(fg.ambient().degree()),
                      regular_radical(fg, m, budget),
                      Group::trivial(fg.ambient().degree())};
  rep.qz_open = qz_hypercentre(sub, QzMode::exhaustive, msub, budget);
  rep.radical_open = regular_radical(sub, msub, budget);
  rep.qz_match =
      rep.qz_open.same_group_as(intersection(rep.qz_ambient, fg.level(open_index)));
  rep.radical_match = rep.radical_open.same_group_as(
      intersection(rep.radical_ambient, fg.level(open_index)));
  return rep;
}

NormalRepresentative normal_representative(const FilteredGroup& fg, const Group& l) {
  auto wit = is_locally_normal(fg, l);
  if (!wit) throw input_error("normal_representative: subgroup is not locally normal");
  const Group lk = intersection(l, fg.deepest());
  const std::string key = canonical_key(lk);
  for (const auto& x : fg.ambient().generators())
    if (canonical_key(intersection(conjugate(fg.ambient(), l, x), fg.deepest())) != key)
      throw input_error("normal_representative: the deep class is moved by " +
                        x.to_string());

  Group closure = normal_closure(fg.ambient(), l.generators());
  const Group mk = intersection(closure, fg.deepest());
  if (!lk.is_subgroup_of(mk))
    throw internal_error("normal_representative: deep trace not preserved");
  bool normalised = false;
  for (std::size_t i = fg.depth() + 1; i-- > 0 && !normalised;)
    normalised = normaliser(fg.level(i), lk).same_group_as(fg.level(i));
  if (!normalised)
    throw internal_error("normal_representative: no chain member normalises the trace");
  return {std::move(closure), mk.order() / lk.order()};
}

}  // namespace lnlat
