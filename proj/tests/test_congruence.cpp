#include <map>

#include "doctest.h"
#include "ualg/congruence.hpp"
#include "ualg/corpus.hpp"
#include "ualg/relations.hpp"

using namespace ualg;

namespace {

const FiniteAlgebra& get(std::string_view name) {
  for (const auto& a : builtin_corpus()) {
    if (a.name() == name) return a;
  }
  throw std::runtime_error("missing builtin");
}

using Blocks = std::vector<std::vector<Element>>;

// Alternating fixpoint: equivalence closure, then one round of compatible
// closure in A^2, until nothing changes.
BinRel fixpoint_congruence(const FiniteAlgebra& a, std::vector<Pair> pairs) {
  BinRel r = BinRel::from_pairs(a.size(), a.size(), pairs);
  while (true) {
    BinRel e = equiv_close(r);
    auto gen = generated_relation(a, a, e.pairs());
    REQUIRE(gen);
    if (*gen == r) return r;
    r = *gen;
  }
}

}  // namespace

TEST_CASE("partitions") {
  CHECK(enumerate_partitions(1).size() == 1);
  CHECK(enumerate_partitions(4).size() == 15);
  CHECK(enumerate_partitions(8).size() == 4140);
}

TEST_CASE("congruence_generated examples") {
  CHECK(congruence_generated(get("Z4"), {}).relation() == BinRel::identity(4));
  const Pair p02[] = {{0, 2}};
  CHECK(congruence_generated(get("Z4"), p02).block_lists() ==
        Blocks{{0, 2}, {1, 3}});
  const Pair p01[] = {{0, 1}};
  CHECK(congruence_generated(get("bare-3"), p01).block_lists() ==
        Blocks{{0, 1}, {2}});
}

TEST_CASE("congruence_generated agrees with the fixpoint oracle") {
  for (const auto& a : builtin_corpus()) {
    for (Element x = 0; x < a.size(); ++x) {
      for (Element y = 0; y < a.size(); ++y) {
        const Pair p[] = {{x, y}};
        CHECK(congruence_generated(a, p).relation() ==
              fixpoint_congruence(a, {{x, y}}));
      }
    }
  }
}

TEST_CASE("lattice examples") {
  const CongLattice z4(get("Z4"));
  REQUIRE(z4.size() == 3);
  CHECK(z4.leq(0, 1));
  CHECK(z4.leq(1, 2));
  CHECK(z4[1].block_lists() == Blocks{{0, 2}, {1, 3}});
  CHECK(is_modular(z4));
  CHECK(is_distributive(z4));

  const CongLattice k(get("klein4"));
  REQUIRE(k.size() == 5);
  for (std::size_t i = 1; i <= 3; ++i) {
    for (std::size_t j = 1; j <= 3; ++j) {
      if (i == j) continue;
      CHECK(k.meet(i, j) == k.bottom());
      CHECK(k.join(i, j) == k.top());
    }
  }
  CHECK(is_modular(k));
  CHECK_FALSE(is_distributive(k));

  const CongLattice bare4(get("bare-4"));
  CHECK(bare4.size() == 15);
  CHECK_FALSE(is_modular(bare4));

  CHECK(CongLattice(get("trivial-1")).size() == 1);
  CHECK_THROWS_AS(CongLattice(bare_set("nine", 9)), StructureError);
}

TEST_CASE("lattice invariants on the corpus") {
  for (const auto& a : builtin_corpus()) {
    CAPTURE(a.name());
    const CongLattice l(a);
    CHECK(l[l.bottom()].relation() == BinRel::identity(a.size()));
    CHECK(l[l.top()].relation() == BinRel::full(a.size(), a.size()));
    for (const auto& c : l.elements()) {
      CHECK(c.relation().is_equivalence());
      CHECK(is_compatible(a, c.relation()));
    }
    const auto perm = permutability(l);
    for (std::size_t i = 0; i < l.size(); ++i) {
      for (std::size_t j = 0; j < l.size(); ++j) {
        const std::size_t jn = l.join(i, j);
        CHECK(l.leq(i, jn));
        CHECK(l.leq(j, jn));
        for (std::size_t u = 0; u < l.size(); ++u) {
          if (l.leq(i, u) && l.leq(j, u)) CHECK(l.leq(jn, u));
        }
        const auto& a1 = l[i].relation();
        const auto& b1 = l[j].relation();
        if (perm.perm2) CHECK(l[jn].relation() == compose(a1, b1));
        if (perm.perm3) {
          CHECK(l[jn].relation() == compose(a1, compose(b1, a1)));
        }
      }
    }
    if (perm.perm2) CHECK(perm.perm3);
    if (is_distributive(l)) CHECK(is_modular(l));
  }
}

TEST_CASE("permutability examples") {
  const auto z4 = permutability(CongLattice(get("Z4")));
  CHECK(z4.perm2);
  CHECK(z4.perm3);
  const CongLattice bl(get("bare-4"));
  const auto bare = permutability(bl);
  CHECK_FALSE(bare.perm2);
  REQUIRE(bare.perm2_failure);
  const auto f = *bare.perm2_failure;
  const auto& a = bl[f.alpha].relation();
  const auto& b = bl[f.beta].relation();
  CHECK(compose(a, b).test(f.a, f.b) != compose(b, a).test(f.a, f.b));
}
