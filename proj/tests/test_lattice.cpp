#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lnlat/lattice.hpp"

using namespace lnlat;

namespace {

// Power set of an n-element set, elements = bitmasks.
FiniteLattice power_set(unsigned n) {
  std::vector<std::string> keys;
  for (std::size_t m = 0; m < (1u << n); ++m) keys.push_back("m" + std::to_string(m));
  return FiniteLattice::from_leq(
      keys, [](std::size_t a, std::size_t b) { return (a & b) == a; });
}

BooleanAlg power_alg(unsigned n) {
  FiniteLattice lat = power_set(n);
  std::vector<std::size_t> comp;
  for (std::size_t m = 0; m < lat.size(); ++m) comp.push_back(~m & (lat.size() - 1));
  return {std::move(lat), std::move(comp)};
}

// 0 < a < c < 1, 0 < b < 1, b incomparable with a and c.
FiniteLattice pentagon() {
  auto leq = [](std::size_t x, std::size_t y) {
    if (x == y || x == 0 || y == 4) return true;
    return x == 1 && y == 3;  // a <= c
  };
  return FiniteLattice::from_leq({"0", "a", "b", "c", "1"}, leq);
}

// 0 below three incomparable atoms below 1.
FiniteLattice diamond_m3() {
  auto leq = [](std::size_t x, std::size_t y) { return x == y || x == 0 || y == 4; };
  return FiniteLattice::from_leq({"0", "x", "y", "z", "1"}, leq);
}

}  // namespace

TEST_CASE("table construction and basic structure") {
  FiniteLattice p = power_set(3);
  CHECK(p.size() == 8);
  CHECK(p.bottom() == 0);
  CHECK(p.top() == 7);
  CHECK(p.meet(3, 5) == 1);
  CHECK(p.join(3, 5) == 7);
  CHECK(p.atoms() == std::vector<std::size_t>{1, 2, 4});
  CHECK(p.covers(1, 3));
  CHECK(!p.covers(1, 7));

  // Chains without meets or bad orders are rejected.
  CHECK_THROWS_AS(FiniteLattice::from_leq(
                      {"a", "b"}, [](std::size_t, std::size_t) { return true; }),
                  input_error);
  // Two incomparable elements with no lower bound: no least element.
  CHECK_THROWS_AS(FiniteLattice::from_leq(
                      {"a", "b"}, [](std::size_t x, std::size_t y) { return x == y; }),
                  input_error);
}

TEST_CASE("modularity") {
  CHECK(modularity_check(power_set(3)).ok);
  CHECK(modularity_check(diamond_m3()).ok);
  auto r = modularity_check(pentagon());
  CHECK(!r.ok);
  // The canonical violating triple: a <= c but a v (b ^ c) = a != c = (a v b) ^ c.
  CHECK(pentagon().leq(r.witness[0], r.witness[2]));
}

TEST_CASE("distributivity") {
  CHECK(is_distributive(power_set(2)).ok);
  CHECK(!is_distributive(diamond_m3()).ok);
  CHECK(!is_distributive(pentagon()).ok);
}

TEST_CASE("boolean axioms") {
  CHECK(is_boolean(power_alg(3)).ok);
  BooleanAlg broken = power_alg(2);
  broken.complement[1] = 1;
  CHECK(!is_boolean(broken).ok);
}

TEST_CASE("boolflip builds the algebra when the hypothesis holds") {
  for (unsigned n : {1u, 2u, 3u}) {
    FiniteLattice m = power_set(n);
    Involution inv;
    for (std::size_t a = 0; a < m.size(); ++a)
      inv.map.push_back(~a & (m.size() - 1));
    BooleanAlg alg = boolflip_construct(m, inv);
    CHECK(is_boolean(alg).ok);
    CHECK(*alg.lattice.top() == alg.lattice.size() - 1);
    // Size is 2^(number of atoms).
    CHECK(alg.lattice.size() == (1u << alg.lattice.atoms().size()));
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m.size(); ++b)
        CHECK(alg.lattice.join(a, b) == (a | b));
  }
}

TEST_CASE("boolflip rejects bad involutions with a witness") {
  FiniteLattice m3 = diamond_m3();
  Involution ident{{0, 1, 2, 3, 4}};
  CHECK_THROWS_AS(boolflip_construct(m3, ident), boolflip_rejected);
  try {
    boolflip_construct(m3, ident);
  } catch (const boolflip_rejected& e) {
    CHECK(e.alpha < m3.size());
    CHECK(e.beta < m3.size());
  }

  // Wrong-sized table.
  CHECK_THROWS_AS(boolflip_construct(m3, Involution{{0, 1}}), input_error);

  // On the power set, swapping two complements breaks the hypothesis.
  FiniteLattice p = power_set(2);
  Involution bad;
  for (std::size_t a = 0; a < p.size(); ++a) bad.map.push_back(~a & 3);
  std::swap(bad.map[1], bad.map[2]);
  bad.map[bad.map[1]] = 1;
  bad.map[bad.map[2]] = 2;
  CHECK_THROWS_AS(boolflip_construct(p, bad), boolflip_rejected);
}

TEST_CASE("subalgebra generation") {
  BooleanAlg alg = power_alg(3);
  auto empty = subalgebra_generated(alg, {});
  CHECK(empty.algebra.lattice.size() == 2);

  auto one_atom = subalgebra_generated(alg, {1});
  CHECK(one_atom.algebra.lattice.size() == 4);
  CHECK(one_atom.parent_index == std::vector<std::size_t>{0, 1, 6, 7});
  CHECK(is_boolean(one_atom.algebra).ok);

  auto two = subalgebra_generated(alg, {1, 2});
  CHECK(two.algebra.lattice.size() == 8);

  // Closure operator: idempotent, extensive, monotone on random seeds.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::size_t> seed;
    for (std::size_t a = 0; a < alg.lattice.size(); ++a)
      if (rng() & 1) seed.push_back(a);
    auto s = subalgebra_generated(alg, seed);
    for (auto x : seed)
      CHECK(std::find(s.parent_index.begin(), s.parent_index.end(), x) !=
            s.parent_index.end());
    auto again = subalgebra_generated(alg, s.parent_index);
    CHECK(again.parent_index == s.parent_index);
    if (!seed.empty()) {
      auto smaller = subalgebra_generated(
          alg, std::vector<std::size_t>(seed.begin(), seed.end() - 1));
      for (auto x : smaller.parent_index)
        CHECK(std::find(s.parent_index.begin(), s.parent_index.end(), x) !=
              s.parent_index.end());
    }
  }
}

TEST_CASE("lattice homomorphism checks") {
  FiniteLattice p = power_set(2);
  std::vector<std::size_t> ident{0, 1, 2, 3};
  CHECK(lattice_hom_check(p, p, ident, HomKind::full).ok);
  CHECK(lattice_hom_check(p, p, ident, HomKind::meet).ok);
  CHECK(lattice_hom_check(p, p, ident, HomKind::join).ok);

  std::vector<std::size_t> to_zero(4, 0);
  CHECK(lattice_hom_check(p, p, to_zero, HomKind::meet).ok);
  CHECK(!lattice_hom_check(p, p, to_zero, HomKind::full).ok);

  // Projection onto the first coordinate is a Boolean quotient map.
  std::vector<std::size_t> proj{0, 1, 0, 1};
  BooleanAlg big = power_alg(2), small = power_alg(1);
  CHECK(lattice_hom_check(big, small, proj).ok);
}

TEST_CASE("serialisation") {
  FiniteLattice p = power_set(1);
  std::string js = lattice_to_json(p);
  CHECK(js.find("\"m0\"") != std::string::npos);
  CHECK(js.find("cover_edges") != std::string::npos);
  std::string dot = lattice_to_dot(p);
  CHECK(dot.find("digraph hasse") != std::string::npos);
  CHECK(dot.find("n0 -> n1") != std::string::npos);
}
