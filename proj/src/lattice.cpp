#include "lnlat/lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace lnlat {

FiniteLattice FiniteLattice::from_leq(
    std::vector<std::string> keys,
    const std::function<bool(std::size_t, std::size_t)>& leq, bool meets_only) {
  const std::size_t n = keys.size();
  if (n == 0) throw input_error("FiniteLattice: empty element set");
  if (n > kSizeCap) throw resource_error("FiniteLattice: size cap exceeded", n);

  FiniteLattice lat;
  lat.keys_ = std::move(keys);
  lat.leq_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) lat.leq_[a * n + b] = leq(a, b) ? 1 : 0;

  for (std::size_t a = 0; a < n; ++a) {
    if (!lat.leq_[a * n + a]) throw input_error("FiniteLattice: leq not reflexive");
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && lat.leq_[a * n + b] && lat.leq_[b * n + a])
        throw input_error("FiniteLattice: leq not antisymmetric");
      if (!lat.leq_[a * n + b]) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (lat.leq_[b * n + c] && !lat.leq_[a * n + c])
          throw input_error("FiniteLattice: leq not transitive");
    }
  }

  auto bound = [&](std::size_t a, std::size_t b, bool lower) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < n; ++c) {
      bool is_bound = lower ? (lat.leq_[c * n + a] && lat.leq_[c * n + b])
                            : (lat.leq_[a * n + c] && lat.leq_[b * n + c]);
      if (!is_bound) continue;
      if (!best || (lower ? lat.leq_[*best * n + c] : lat.leq_[c * n + *best])) best = c;
    }
    // `best` is extremal only if it compares with every other bound.
    if (best) {
      for (std::size_t c = 0; c < n; ++c) {
        bool is_bound = lower ? (lat.leq_[c * n + a] && lat.leq_[c * n + b])
                              : (lat.leq_[a * n + c] && lat.leq_[b * n + c]);
        if (is_bound && !(lower ? lat.leq_[c * n + *best] : lat.leq_[*best * n + c]))
          return std::nullopt;
      }
    }
    return best;
  };

  lat.meet_.assign(n * n, 0);
  if (!meets_only) lat.join_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto m = bound(a, b, true);
      if (!m) throw input_error("FiniteLattice: meet missing for a pair");
      lat.meet_[a * n + b] = *m;
      if (!meets_only) {
        auto j = bound(a, b, false);
        if (!j) throw input_error("FiniteLattice: join missing for a pair");
        lat.join_[a * n + b] = *j;
      }
    }
  }

  bool found_bottom = false;
  for (std::size_t a = 0; a < n; ++a) {
    bool is_bot = true, is_top = true;
    for (std::size_t b = 0; b < n; ++b) {
      if (!lat.leq_[a * n + b]) is_bot = false;
      if (!lat.leq_[b * n + a]) is_top = false;
    }
    if (is_bot) {
      lat.bottom_ = a;
      found_bottom = true;
    }
    if (is_top) lat.top_ = a;
  }
  if (!found_bottom) throw input_error("FiniteLattice: no least element");
  return lat;
}

std::size_t FiniteLattice::join(std::size_t a, std::size_t b) const {
  if (join_.empty()) throw input_error("FiniteLattice: joins not available");
  return join_[a * size() + b];
}

std::vector<std::size_t> FiniteLattice::atoms() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < size(); ++a)
    if (covers(bottom_, a)) out.push_back(a);
  return out;
}

bool FiniteLattice::covers(std::size_t a, std::size_t b) const {
  if (a == b || !leq(a, b)) return false;
  for (std::size_t c = 0; c < size(); ++c)
    if (c != a && c != b && leq(a, c) && leq(c, b)) return false;
  return true;
}

CheckResult modularity_check(const FiniteLattice& lat) {
  const std::size_t n = lat.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      if (!lat.leq(a, c)) continue;
      for (std::size_t b = 0; b < n; ++b)
        if (lat.join(a, lat.meet(b, c)) != lat.meet(lat.join(a, b), c))
          return {false, {a, b, c}, "modular law fails"};
    }
  return {};
}

CheckResult is_distributive(const FiniteLattice& lat) {
  const std::size_t n = lat.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (lat.meet(a, lat.join(b, c)) != lat.join(lat.meet(a, b), lat.meet(a, c)))
          return {false, {a, b, c}, "distributive law fails"};
  return {};
}

CheckResult is_boolean(const BooleanAlg& alg) {
  const FiniteLattice& lat = alg.lattice;
  const std::size_t n = lat.size();
  if (!lat.has_joins() || !lat.top()) return {false, {}, "not a bounded lattice"};
  if (alg.complement.size() != n) return {false, {}, "complement table size mismatch"};
  if (auto d = is_distributive(lat); !d) return d;
  const std::size_t bot = lat.bottom(), top = *lat.top();
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t ac = alg.complement[a];
    if (lat.meet(a, ac) != bot) return {false, {a, ac, 0}, "a ^ a' != 0"};
    if (lat.join(a, ac) != top) return {false, {a, ac, 0}, "a v a' != 1"};
    if (alg.complement[ac] != a) return {false, {a, ac, 0}, "complement not involutive"};
    for (std::size_t b = 0; b < n; ++b) {
      if (lat.leq(a, b) && !lat.leq(alg.complement[b], ac))
        return {false, {a, b, 0}, "complement not order-reversing"};
      if (alg.complement[lat.meet(a, b)] != lat.join(ac, alg.complement[b]))
        return {false, {a, b, 0}, "De Morgan identity fails"};
    }
  }
  return {};
}

BooleanAlg boolflip_construct(const FiniteLattice& m, const Involution& inv) {
  const std::size_t n = m.size();
  if (inv.map.size() != n) throw input_error("boolflip: involution table size mismatch");
  for (std::size_t a = 0; a < n; ++a) {
    if (inv.map[a] >= n) throw input_error("boolflip: involution out of range");
    if (inv.map[inv.map[a]] != a)
      throw boolflip_rejected("boolflip: map is not an involution", a, inv.map[a]);
    for (std::size_t b = 0; b < n; ++b)
      if (m.leq(a, b) && !m.leq(inv.map[b], inv.map[a]))
        throw boolflip_rejected("boolflip: map is not order-reversing", a, b);
  }
  const std::size_t bot = m.bottom();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      bool disjoint = m.meet(a, b) == bot;
      bool below = m.leq(b, inv.map[a]);
      if (disjoint != below)
        throw boolflip_rejected("boolflip: hypothesis a^b=0 iff b<=a' fails", a, b);
    }

  // Join forced by the involution; verify it really is the least upper bound.
  auto join_of = [&](std::size_t a, std::size_t b) {
    return inv.map[m.meet(inv.map[a], inv.map[b])];
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t j = join_of(a, b);
      if (!m.leq(a, j) || !m.leq(b, j))
        throw internal_error("boolflip: constructed join is not an upper bound");
      for (std::size_t c = 0; c < n; ++c)
        if (m.leq(a, c) && m.leq(b, c) && !m.leq(j, c))
          throw internal_error("boolflip: constructed join is not least");
    }

  FiniteLattice lat = FiniteLattice::from_leq(
      m.keys(), [&](std::size_t a, std::size_t b) { return m.leq(a, b); });
  BooleanAlg alg{std::move(lat), inv.map};
  if (auto r = is_boolean(alg); !r)
    throw internal_error("boolflip: output violates a Boolean axiom: " + r.what);
  return alg;
}

Subalgebra subalgebra_generated(const BooleanAlg& alg, const std::vector<std::size_t>& seed) {
  const FiniteLattice& lat = alg.lattice;
  std::vector<char> in(lat.size(), 0);
  in[lat.bottom()] = 1;
  in[*lat.top()] = 1;
  for (auto s : seed) {
    if (s >= lat.size()) throw input_error("subalgebra_generated: seed out of range");
    in[s] = 1;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < lat.size(); ++a) {
      if (!in[a]) continue;
      if (!in[alg.complement[a]]) in[alg.complement[a]] = changed = true;
      for (std::size_t b = 0; b < lat.size(); ++b) {
        if (!in[b]) continue;
        if (!in[lat.meet(a, b)]) in[lat.meet(a, b)] = changed = true;
        if (!in[lat.join(a, b)]) in[lat.join(a, b)] = changed = true;
      }
    }
  }
  std::vector<std::size_t> parent;
  std::vector<std::size_t> local(lat.size(), 0);
  std::vector<std::string> keys;
  for (std::size_t a = 0; a < lat.size(); ++a)
    if (in[a]) {
      local[a] = parent.size();
      parent.push_back(a);
      keys.push_back(lat.keys()[a]);
    }
  FiniteLattice sub = FiniteLattice::from_leq(
      std::move(keys),
      [&](std::size_t a, std::size_t b) { return lat.leq(parent[a], parent[b]); });
  std::vector<std::size_t> comp(parent.size());
  for (std::size_t a = 0; a < parent.size(); ++a)
    comp[a] = local[alg.complement[parent[a]]];
  return {{std::move(sub), std::move(comp)}, std::move(parent)};
}

CheckResult lattice_hom_check(const FiniteLattice& src, const FiniteLattice& dst,
                              const std::vector<std::size_t>& f, HomKind kind) {
  if (f.size() != src.size()) return {false, {}, "map not total on the source"};
  for (auto v : f)
    if (v >= dst.size()) return {false, {}, "map image out of range"};
  bool want_meet = kind != HomKind::join;
  bool want_join = kind != HomKind::meet;
  for (std::size_t a = 0; a < src.size(); ++a)
    for (std::size_t b = 0; b < src.size(); ++b) {
      if (want_meet && f[src.meet(a, b)] != dst.meet(f[a], f[b]))
        return {false, {a, b, 0}, "meet not preserved"};
      if (want_join && f[src.join(a, b)] != dst.join(f[a], f[b]))
        return {false, {a, b, 0}, "join not preserved"};
    }
  if (kind == HomKind::boolean_full || kind == HomKind::full) {
    if (f[src.bottom()] != dst.bottom()) return {false, {src.bottom(), 0, 0}, "0 not preserved"};
    if (src.top() && dst.top() && f[*src.top()] != *dst.top())
      return {false, {*src.top(), 0, 0}, "1 not preserved"};
  }
  return {};
}

CheckResult lattice_hom_check(const BooleanAlg& src, const BooleanAlg& dst,
                              const std::vector<std::size_t>& f) {
  if (auto r = lattice_hom_check(src.lattice, dst.lattice, f, HomKind::boolean_full); !r)
    return r;
  for (std::size_t a = 0; a < src.lattice.size(); ++a)
    if (f[src.complement[a]] != dst.complement[f[a]])
      return {false, {a, 0, 0}, "complement not preserved"};
  return {};
}

std::string lattice_to_json(const FiniteLattice& lat) {
  nlohmann::json j;
  j["elements"] = lat.keys();
  j["bottom"] = lat.bottom();
  if (lat.top()) j["top"] = *lat.top();
  auto edges = nlohmann::json::array();
  for (std::size_t a = 0; a < lat.size(); ++a)
    for (std::size_t b = 0; b < lat.size(); ++b)
      if (lat.covers(a, b)) edges.push_back({a, b});
  j["cover_edges"] = std::move(edges);
  return j.dump(2);
}

std::string lattice_to_dot(const FiniteLattice& lat) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n";
  for (std::size_t a = 0; a < lat.size(); ++a)
    out << "  n" << a << " [label=\"" << lat.keys()[a] << "\"];\n";
  for (std::size_t a = 0; a < lat.size(); ++a)
    for (std::size_t b = 0; b < lat.size(); ++b)
      if (lat.covers(a, b)) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace lnlat
