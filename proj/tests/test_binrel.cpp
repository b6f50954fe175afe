#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ualg/binrel.hpp"

using namespace ualg;

namespace {

BinRel rel(std::size_t n, std::initializer_list<Pair> ps) {
  std::vector<Pair> v(ps);
  return BinRel::from_pairs(n, n, v);
}

}  // namespace

TEST_CASE("compose examples") {
  CHECK(compose(rel(2, {{1, 0}}), rel(2, {{0, 1}})) == rel(2, {{0, 0}}));
  const BinRel r = rel(2, {{0, 0}, {0, 1}});
  CHECK(compose(BinRel::identity(2), r) == r);
  CHECK(compose(rel(2, {{0, 0}, {1, 0}}), r) == rel(2, {{0, 0}}));
  // Apply r first: x r y, y s z.
  const BinRel a = BinRel::from_pairs(2, 3, std::vector<Pair>{{0, 2}});
  const BinRel b = BinRel::from_pairs(3, 1, std::vector<Pair>{{2, 0}});
  const BinRel ba = compose(b, a);
  CHECK(ba.dom_size() == 2);
  CHECK(ba.cod_size() == 1);
  CHECK(ba.test(0, 0));
  CHECK_THROWS_AS(compose(a, b), std::invalid_argument);
}

TEST_CASE("converse examples") {
  CHECK(converse(rel(2, {{0, 1}})) == rel(2, {{1, 0}}));
  const BinRel s = rel(3, {{0, 1}, {1, 0}, {2, 2}});
  CHECK(converse(s) == s);
  CHECK(converse(rel(2, {{0, 0}, {1, 0}})) == rel(2, {{0, 0}, {0, 1}}));
}

TEST_CASE("meet, join and closures") {
  const BinRel r = rel(3, {{0, 1}, {1, 2}});
  CHECK(meet(r, BinRel::full(3, 3)) == r);
  CHECK(join_raw(r, BinRel(3, 3)) == r);
  CHECK(trans_close(r) == rel(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(symm_close(rel(3, {{0, 1}})) == rel(3, {{0, 1}, {1, 0}}));
  CHECK(refl_close(BinRel(2, 2)) == BinRel::identity(2));
  CHECK(equiv_close(rel(3, {{0, 1}})).is_equivalence());
  CHECK_THROWS_AS(meet(r, BinRel(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(trans_close(BinRel(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(rel(2, {{0, 2}}), std::out_of_range);
}

TEST_CASE("predicates") {
  CHECK(BinRel::identity(4).is_equivalence());
  CHECK_FALSE(rel(2, {{0, 0}, {0, 1}, {1, 1}}).is_symmetric());
  CHECK(rel(2, {{0, 0}, {0, 1}, {1, 1}}).is_transitive());
  CHECK_FALSE(rel(3, {{0, 1}, {1, 2}}).is_transitive());
  CHECK(BinRel(3, 3).empty());
}

TEST_CASE("canonical order") {
  // Absent < present, row-major.
  CHECK(rel(2, {{1, 1}}) < rel(2, {{0, 0}}));
  CHECK(BinRel(2, 2) < rel(2, {{1, 1}}));
  CHECK(BinRel(2, 2) < BinRel(3, 3));
}

TEST_CASE("wide relations cross word boundaries") {
  BinRel r(130, 130);
  r.set(0, 127);
  r.set(127, 129);
  const BinRel rr = compose(r, r);
  CHECK(rr.test(0, 129));
  CHECK(rr.count() == 1);
  CHECK(converse(r).test(129, 127));
  CHECK(trans_close(r).count() == 3);
}

TEST_CASE("random laws against the pair-set oracle") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 400; ++i) {
    const std::size_t a = 1 + rng() % 5, b = 1 + rng() % 5, c = 1 + rng() % 5,
                      d = 1 + rng() % 5;
    const BinRel r = oracle::random_rel(rng, a, b);
    const BinRel s = oracle::random_rel(rng, b, c);
    const BinRel t = oracle::random_rel(rng, c, d);
    CHECK(oracle::to_set(compose(s, r)) ==
          oracle::compose(oracle::to_set(s), oracle::to_set(r)));
    CHECK(compose(t, compose(s, r)) == compose(compose(t, s), r));
    CHECK(converse(compose(s, r)) == compose(converse(r), converse(s)));
    CHECK(converse(converse(r)) == r);
    const BinRel q = oracle::random_rel(rng, a, a);
    const auto qs = oracle::to_set(q);
    const BinRel tc = trans_close(q);
    CHECK(tc.is_transitive());
    CHECK(q.subset_of(tc));
    // Least: every pair of tc comes from a path in q.
    oracle::PairSet path = qs;
    for (std::size_t k = 0; k < a; ++k) {
      auto next = oracle::compose(qs, path);
      path.insert(next.begin(), next.end());
    }
    CHECK(oracle::to_set(tc) == path);
  }
}
