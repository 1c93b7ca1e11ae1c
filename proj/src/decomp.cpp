#include "lnlat/decomp.hpp"

#include <algorithm>
#include <numeric>

namespace lnlat {
namespace {

bool is_direct_factor(const Group& h, const Group& n) {
  if (!n.is_subgroup_of(h)) return false;
  Group c = centraliser(h, n);
  if (!intersection(n, c).is_trivial()) return false;
  return n.order() * c.order() == h.order();
}

void require_centerless(const Group& h, const char* who) {
  if (!centre(h).is_trivial())
    throw input_error(std::string(who) + ": group has nontrivial centre");
}

}  // namespace

Group direct_complement(const Group& h, const Group& kf) {
  require_centerless(h, "direct_complement");
  Group c = centraliser(h, kf);
  if (!intersection(kf, c).is_trivial() || kf.order() * c.order() != h.order())
    throw input_error("direct_complement: kf is not a direct factor");
  Group back = centraliser(h, c);
  if (!back.same_group_as(kf))
    throw internal_error("direct_complement: double centraliser does not return kf");
  return c;
}

Decomposition krs_decompose(const Group& h, std::uint64_t budget) {
  require_centerless(h, "krs_decompose");
  if (h.is_trivial()) return {{}, h};

  std::vector<Group> normals = normal_subgroups(h, budget);
  std::vector<Group> factors;
  for (const auto& n : normals)
    if (is_direct_factor(h, n)) factors.push_back(n);

  // Indecomposable factors are the minimal nontrivial ones.
  std::vector<Group> atoms;
  for (const auto& f : factors) {
    if (f.is_trivial()) continue;
    bool minimal = true;
    for (const auto& g : factors)
      if (!g.is_trivial() && g.order() < f.order() && g.is_subgroup_of(f)) {
        minimal = false;
        break;
      }
    if (minimal) atoms.push_back(f);
  }
  std::sort(atoms.begin(), atoms.end(), [](const Group& a, const Group& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return canonical_key(a) < canonical_key(b);
  });

  std::uint64_t prod = 1;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    prod *= atoms[i].order();
    for (std::size_t j = 0; j < i; ++j) {
      if (!intersection(atoms[i], atoms[j]).is_trivial())
        throw internal_error("krs_decompose: factors intersect nontrivially");
      for (const auto& x : atoms[i].generators())
        for (const auto& y : atoms[j].generators())
          if (!x.commutes_with(y))
            throw internal_error("krs_decompose: factors do not commute");
    }
  }
  if (prod != h.order())
    throw internal_error("krs_decompose: factor orders do not multiply to |G|");
  if (factors.size() != (1ull << atoms.size()))
    throw internal_error("krs_decompose: direct factor count is not 2^n");
  return {std::move(atoms), h};
}

std::vector<Group> all_direct_factors(const Decomposition& d) {
  std::vector<Group> out;
  const std::size_t n = d.factors.size();
  for (std::size_t mask = 0; mask < (1ull << n); ++mask) {
    Group f = Group::trivial(d.of.degree());
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ull << i)) f = join(f, d.factors[i]);
    out.push_back(std::move(f));
  }
  return out;
}

std::pair<Group, Group> dirfac_split(const Group& g, const Group& kf, const Group& h) {
  require_centerless(g, "dirfac_split");
  if (!is_direct_factor(g, kf))
    throw input_error("dirfac_split: kf is not a direct factor of g");
  if (!h.is_subgroup_of(g)) throw input_error("dirfac_split: h is not inside g");
  Group cc = centraliser(g, centraliser(g, h));
  if (!cc.same_group_as(h))
    throw input_error("dirfac_split: h is not its own double centraliser");
  Group left = intersection(h, kf);
  Group right = centraliser(h, kf);
  if (!intersection(left, right).is_trivial() ||
      left.order() * right.order() != h.order())
    throw internal_error("dirfac_split: split is not an internal direct product");
  return {std::move(left), std::move(right)};
}

std::vector<Group> support_factors(const Group& g) {
  const unsigned degree = g.degree();
  // Orbit partition of the moved points.
  std::vector<int> block(degree, -1);
  int nblocks = 0;
  for (unsigned p = 0; p < degree; ++p) {
    if (block[p] >= 0) continue;
    bool moved = false;
    for (const auto& x : g.generators())
      if (x[static_cast<std::uint16_t>(p)] != p) moved = true;
    if (!moved) continue;
    // BFS the orbit of p.
    std::vector<std::uint16_t> queue{static_cast<std::uint16_t>(p)};
    block[p] = nblocks;
    while (!queue.empty()) {
      std::uint16_t q = queue.back();
      queue.pop_back();
      for (const auto& x : g.generators()) {
        std::uint16_t r = x[q];
        if (block[r] < 0) {
          block[r] = nblocks;
          queue.push_back(r);
        }
      }
    }
    ++nblocks;
  }
  if (nblocks == 0) return {};

  auto factors_for = [&](const std::vector<int>& blk, int count) {
    std::vector<std::vector<Perm>> members(count);
    for (const auto& e : g.elements()) {
      // e belongs to the factor of block b if its support lies inside b.
      int b = -1;
      bool clean = true;
      for (unsigned p = 0; p < degree && clean; ++p)
        if (e[static_cast<std::uint16_t>(p)] != p) {
          if (b < 0)
            b = blk[p];
          else if (blk[p] != b)
            clean = false;
        }
      if (clean && b >= 0) members[b].push_back(e);
    }
    std::vector<Group> out;
    for (auto& m : members) {
      m.push_back(Perm::identity(degree));
      out.push_back(Group::from_elements(degree, m));
    }
    return out;
  };

  std::vector<Group> factors = factors_for(block, nblocks);
  auto order_product = [&](const std::vector<Group>& fs) {
    std::uint64_t p = 1;
    for (const auto& f : fs) p *= f.order();
    return p;
  };
  // Merge blocks until the factors multiply out to the whole group.
  while (order_product(factors) != g.order() && nblocks > 1) {
    for (unsigned p = 0; p < degree; ++p)
      if (block[p] == nblocks - 1) block[p] = nblocks - 2;
    --nblocks;
    factors = factors_for(block, nblocks);
  }
  if (order_product(factors) != g.order())
    throw internal_error("support_factors: factorisation failed to verify");
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (!intersection(factors[i], factors[j]).is_trivial())
        throw internal_error("support_factors: blocks intersect");
      for (const auto& x : factors[i].generators())
        for (const auto& y : factors[j].generators())
          if (!x.commutes_with(y))
            throw internal_error("support_factors: blocks do not commute");
    }
  std::sort(factors.begin(), factors.end(), [](const Group& a, const Group& b) {
    return canonical_key(a) < canonical_key(b);
  });
  return factors;
}

LdAlgebra ld_lattice(const FilteredGroup& fg, const LocalClass& alpha) {
  const Group& src = alpha.source ? *alpha.source : alpha.rep;
  if (!c_stable_check(fg, src))
    throw input_error("ld_lattice: alpha is not C-stable");

  LdAlgebra out;
  if (fg.depth() == 0 || alpha.rep.is_trivial()) {
    // One-element algebra.
    out.classes.emplace_back(alpha.rep);
    FiniteLattice one = FiniteLattice::from_leq(
        {canonical_key(alpha.rep)}, [](std::size_t, std::size_t) { return true; });
    out.algebra = BooleanAlg{std::move(one), {0}};
    return out;
  }

  const std::size_t level = fg.depth() - 1;
  out.factor_level = level;
  const Group& ul = fg.level(level);
  Group z = centraliser(fg.deepest(), ul);
  Group sat_alpha = product_group(alpha.rep, z);

  std::vector<Group> pool = support_factors(ul);
  std::vector<Group> eligible;
  for (auto& f : pool) {
    Group trace = intersection(f, fg.deepest());
    if (trace.is_subgroup_of(sat_alpha)) eligible.push_back(f);
  }
  if (eligible.size() > 14)
    throw resource_error("ld_lattice: too many factors", eligible.size());

  const std::size_t n = eligible.size();
  std::vector<Group> traces;       // per subset
  std::vector<Group> sources;      // per subset
  for (std::size_t mask = 0; mask < (1ull << n); ++mask) {
    Group s = Group::trivial(fg.ambient().degree());
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ull << i)) s = product_group(s, eligible[i]);
    traces.push_back(intersection(s, fg.deepest()));
    sources.push_back(std::move(s));
  }
  for (std::size_t a = 0; a < traces.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (traces[a].same_group_as(traces[b]))
        throw truncation_artefact_error("ld_lattice: factor traces collide at depth");

  FiniteLattice lat = [&] {
    std::vector<std::string> keys;
    for (const auto& t : traces) keys.push_back(canonical_key(t));
    return FiniteLattice::from_leq(keys, [&](std::size_t a, std::size_t b) {
      return (a & b) == a;  // subset products order by subset inclusion
    });
  }();
  // The subgroup order must agree with the subset order.
  for (std::size_t a = 0; a < traces.size(); ++a)
    for (std::size_t b = 0; b < traces.size(); ++b)
      if (lat.leq(a, b) != traces[a].is_subgroup_of(traces[b]))
        throw internal_error("ld_lattice: subset order disagrees with inclusion");

  Involution inv;
  const std::size_t full = (1ull << n) - 1;
  for (std::size_t mask = 0; mask <= full; ++mask) inv.map.push_back(full & ~mask);
  out.algebra = boolflip_construct(lat, inv);

  // Complement classes against the literal centraliser representative,
  // taken inside alpha's own level trace.
  Group within = intersection(src, ul);
  for (std::size_t mask = 0; mask <= full; ++mask) {
    Group cent = intersection(centraliser(within, sources[mask]), fg.deepest());
    const Group& comp = traces[full & ~mask];
    if (!cent.same_group_as(comp)) {
      out.complements_exact = false;
      if (!product_group(cent, z).same_group_as(product_group(comp, z)))
        throw truncation_artefact_error(
            "ld_lattice: complement differs from the centraliser beyond central artefacts");
    }
  }

  for (std::size_t mask = 0; mask <= full; ++mask) {
    LocalClass c(traces[mask]);
    c.source = sources[mask];
    auto w = is_locally_normal(fg, c.rep);
    if (w) c.witness = w->level;
    out.classes.push_back(std::move(c));
  }
  return out;
}

bool ld_transitive_check(const FilteredGroup& fg, const LocalClass& alpha,
                         const LocalClass& beta) {
  LdAlgebra la = ld_lattice(fg, alpha);
  LdAlgebra lb = ld_lattice(fg, beta);
  auto contains_rep = [&](const LdAlgebra& alg, const Group& rep) {
    for (const auto& c : alg.classes)
      if (c.rep.order() == rep.order() && c.rep.same_group_as(rep)) return true;
    return false;
  };
  bool member = contains_rep(lb, alpha.rep);
  bool contained = true;
  for (const auto& c : la.classes)
    if (!contains_rep(lb, c.rep)) {
      contained = false;
      break;
    }
  if (member != contained)
    throw internal_error("ld_transitive_check: membership and containment disagree");
  return member;
}

}  // namespace lnlat
