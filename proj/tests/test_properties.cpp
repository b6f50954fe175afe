#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ualg/corpus.hpp"
#include "ualg/properties.hpp"

using namespace ualg;

namespace {

const FiniteAlgebra& get(std::string_view name) {
  for (const auto& a : builtin_corpus()) {
    if (a.name() == name) return a;
  }
  throw std::runtime_error("missing builtin");
}

BinRel rel(std::size_t n, std::initializer_list<Pair> pairs) {
  BinRel r(n, n);
  for (auto [a, b] : pairs) r.set(a, b);
  return r;
}

TernaryRelView affine_z2() {
  TernaryRelView d(2, 2, 2);
  for (Element x = 0; x < 2; ++x) {
    for (Element a = 0; a < 2; ++a) d.set(x, a, x ^ a);
  }
  return d;
}

// Element form of (DD) over sets of triples, written without the view.
bool dd_oracle(const std::set<std::array<Element, 3>>& d, std::size_t n) {
  for (Element x = 0; x < n; ++x)
    for (Element a = 0; a < n; ++a)
      for (Element y = 0; y < n; ++y)
        for (Element b = 0; b < n; ++b)
          for (Element u = 0; u < n; ++u)
            for (Element v = 0; v < n; ++v)
              if (d.count({x, a, u}) && d.count({y, b, u}) &&
                  d.count({y, a, v}) && !d.count({x, a, v}))
                return false;
  return true;
}

std::set<std::array<Element, 3>> triples(const TernaryRelView& t) {
  std::set<std::array<Element, 3>> out;
  for (Element x = 0; x < t.x_size(); ++x)
    for (Element a = 0; a < t.a_size(); ++a)
      for (Element u = 0; u < t.u_size(); ++u)
        if (t.test(x, a, u)) out.insert({x, a, u});
  return out;
}

}  // namespace

TEST_CASE("property tokens round-trip") {
  CHECK(all_properties().size() == 7);
  for (auto p : all_properties()) {
    CHECK(parse_property(to_token(p)) == p);
  }
  CHECK_FALSE(parse_property("nope"));
}

TEST_CASE("is_difunctional examples") {
  CHECK(is_difunctional(BinRel::identity(3)));
  const BinRel z = rel(2, {{0, 0}, {1, 0}, {1, 1}});
  CHECK_FALSE(is_difunctional(z));
  CHECK(compose(z, compose(converse(z), z)) == BinRel::full(2, 2));
  CHECK(is_difunctional(rel(2, {{0, 0}, {1, 0}})));
  CHECK(difunctional_violation(z) == std::vector<Element>{0, 1, 0, 1});
}

TEST_CASE("kernel pairs") {
  const BinRel ex = kernel_pair_x(2, 3);
  const BinRel ea = kernel_pair_a(2, 3);
  CHECK(ex.count() == 2 * 9);
  CHECK(ea.count() == 3 * 4);
  CHECK(meet(ex, ea) == BinRel::identity(6));
  CHECK(ex.test(1 * 3 + 0, 1 * 3 + 2));
  CHECK(ea.test(0 * 3 + 2, 1 * 3 + 2));
}

TEST_CASE("reflexive relations: symmetric examples") {
  CHECK(check_reflexive_symmetric(get("Z2")).holds);
  CHECK(check_reflexive_symmetric(get("trivial-1")).holds);

  const auto chain = check_reflexive_symmetric(get("chain2"));
  CHECK_FALSE(chain.holds);
  CHECK(chain.exhaustive);
  REQUIRE(chain.counterexample);
  const BinRel le = rel(2, {{0, 0}, {0, 1}, {1, 1}});
  CHECK(chain.counterexample->relation("E")->relation == le);

  const auto bare = check_reflexive_symmetric(get("bare-2"));
  CHECK_FALSE(bare.holds);
  CHECK(bare.counterexample->relation("E")->relation == le);
  CHECK(reverify_property_counterexample(get("bare-2"),
                                         Property::ReflexiveSymmetric,
                                         *bare.counterexample));
}

TEST_CASE("EE° = E°E and PP°PP° = PP° examples") {
  for (auto name : {"Z2", "trivial-1"}) {
    CHECK(check_eeo_commute(get(name)).holds);
    CHECK(check_ppoppo(get(name)).holds);
  }
  // On the 2-element chain both products of ≤ with its converse are full.
  const BinRel le = rel(2, {{0, 0}, {0, 1}, {1, 1}});
  CHECK(compose(le, converse(le)) == BinRel::full(2, 2));
  CHECK(compose(converse(le), le) == BinRel::full(2, 2));
  CHECK_FALSE(eeo_violation(le));
  CHECK(check_eeo_commute(get("chain2")).holds);
  const auto c3 = check_eeo_commute(get("chain3"));
  CHECK_FALSE(c3.holds);
  CHECK(reverify_property_counterexample(get("chain3"), Property::EEoCommute,
                                         *c3.counterexample));
  const BinRel& e3 = c3.counterexample->relation("E")->relation;
  CHECK(oracle::compose(oracle::to_set(e3), oracle::converse(oracle::to_set(e3))) !=
        oracle::compose(oracle::converse(oracle::to_set(e3)), oracle::to_set(e3)));
}

TEST_CASE("(DD) and (PP) examples") {
  const FiniteAlgebra& z2 = get("Z2");
  const TernaryRelView d = affine_z2();
  const FiniteAlgebra z2sq = product_algebra(z2, z2);
  CHECK(is_compatible(z2sq, z2, d.relation()));
  CHECK(d.test(0, 0, 0));
  CHECK(d.test(1, 1, 0));
  CHECK(d.test(1, 0, 1));
  CHECK_FALSE(d.test(0, 0, 1));
  CHECK(dd_violation(d));
  CHECK(pp_violation(d));
  CHECK_FALSE(dd_relational(d));
  CHECK_FALSE(pp_relational(d));

  const auto dd = check_dd(z2);
  CHECK_FALSE(dd.holds);
  CHECK(dd.exhaustive);
  REQUIRE(dd.counterexample);
  CHECK(reverify_property_counterexample(z2, Property::DD, *dd.counterexample));
  const auto pp = check_pp(z2);
  CHECK_FALSE(pp.holds);
  CHECK(reverify_property_counterexample(z2, Property::PP, *pp.counterexample));
  // The only compatible D here is the affine one, up to the full relation.
  CHECK(dd.counterexample->relation("D")->relation == d.relation());

  for (auto name : {"bool2", "trivial-1"}) {
    CHECK(check_dd(get(name)).holds);
    CHECK(check_pp(get(name)).holds);
  }
  const auto fam = enumerate_ternary_relations(get("bool2"), get("bool2"),
                                               get("bool2"));
  CHECK(fam.exhaustive);
}

TEST_CASE("positive reflexive relations") {
  CHECK(check_positive_are_equivalences(get("Z2")).holds);
  CHECK(check_positive_are_equivalences(get("trivial-1")).holds);

  const auto v = check_positive_are_equivalences(get("bare-3"));
  CHECK_FALSE(v.holds);
  REQUIRE(v.counterexample);
  const auto* e = v.counterexample->relation("E");
  REQUIRE(e);
  REQUIRE(e->witness);
  CHECK(compose(converse(*e->witness), *e->witness) == e->relation);
  const BinRel expected = rel(3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2},
                                  {2, 1}, {2, 2}});
  CHECK(e->relation == expected);
  CHECK(v.counterexample->element("x") == Element{0});
  CHECK(v.counterexample->element("y") == Element{1});
  CHECK(v.counterexample->element("z") == Element{2});
  CHECK(reverify_property_counterexample(get("bare-3"),
                                         Property::PositiveAreEquivalences,
                                         *v.counterexample));
}

TEST_CASE("generated and enumerated methods agree") {
  for (const auto& a : builtin_corpus()) {
    for (auto p : all_properties()) {
      CAPTURE(a.name());
      CAPTURE(to_token(p));
      const auto g = check_property(a, p);
      const auto e = check_property(a, p, kDefaultBudget,
                                    PropertyMethod::Enumerated);
      CHECK(g.exhaustive);
      // A failure found by enumeration is a genuine failure; where the
      // enumeration is complete the verdicts coincide.
      if (!e.holds) CHECK_FALSE(g.holds);
      if (e.exhaustive) CHECK(g.holds == e.holds);
      for (const auto* v : {&g, &e}) {
        if (!v->holds) {
          REQUIRE(v->counterexample);
          CHECK(reverify_property_counterexample(a, p, *v->counterexample));
        }
      }
    }
  }
}

TEST_CASE("element and relational forms agree on enumerated relations") {
  for (const auto& a : builtin_corpus()) {
    if (a.size() > 3) continue;
    CAPTURE(a.name());
    for (const auto& d : enumerate_ternary_relations(a, a, a).relations) {
      const bool dd = !dd_violation(d);
      CHECK(dd == dd_relational(d));
      CHECK(dd == dd_oracle(triples(d), a.size()));
      CHECK(!pp_violation(d) == pp_relational(d));
    }
    for (const auto& p :
         enumerate_relations(a, RelClass::AllCompatible).relations) {
      CHECK(!ppoppo_violation(p) == ppoppo_relational(p));
      CHECK(!difunctional_violation(p) == is_difunctional(p));
    }
    for (const auto& e :
         enumerate_relations(a, RelClass::ReflexiveCompatible).relations) {
      CHECK(!eeo_violation(e) ==
            (compose(e, converse(e)) == compose(converse(e), e)));
    }
  }
}

TEST_CASE("element forms agree with relational forms on random relations") {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    const std::size_t x = 1 + rng() % 3, a = 1 + rng() % 3, u = 1 + rng() % 3;
    TernaryRelView d(x, a, u);
    for (Element i0 = 0; i0 < x; ++i0)
      for (Element j = 0; j < a; ++j)
        for (Element k = 0; k < u; ++k)
          if (rng() % 3 == 0) d.set(i0, j, k);
    CHECK(!dd_violation(d) == dd_relational(d));
    CHECK(!pp_violation(d) == pp_relational(d));
    CHECK(!ppoppo_violation(d.relation()) == ppoppo_relational(d.relation()));
    CHECK(!difunctional_violation(d.relation()) ==
          is_difunctional(d.relation()));
  }
}

TEST_CASE("(DD) and (PP) at A = 1") {
  for (const auto& a : builtin_corpus()) {
    CAPTURE(a.name());
    const FiniteAlgebra one = trivial_like(a);
    CHECK(check_dd(a, one, a).holds == check_difunctional_all(a).holds);
    CHECK(check_pp(a, one, a).holds == check_ppoppo(a).holds);
  }
  // As relations: a view with A = 1 is its own binary relation.
  const BinRel z = rel(2, {{0, 0}, {1, 0}, {1, 1}});
  const TernaryRelView v(z, 2, 1);
  CHECK(dd_relational(v) == is_difunctional(z));
  CHECK(pp_relational(v) == ppoppo_relational(z));
}

TEST_CASE("(DD) implies difunctionality and (PP) implies PP°PP° = PP°") {
  for (const auto& a : builtin_corpus()) {
    CAPTURE(a.name());
    if (check_dd(a).holds) CHECK(check_difunctional_all(a).holds);
    if (check_pp(a).holds) CHECK(check_ppoppo(a).holds);
  }
}

TEST_CASE("positive relations are symmetric") {
  for (const auto& a : builtin_corpus()) {
    if (a.size() > 3) continue;
    const auto fam =
        enumerate_relations(a, RelClass::ReflexivePositiveCompatible);
    for (std::size_t i = 0; i < fam.relations.size(); ++i) {
      const BinRel& e = fam.relations[i];
      CHECK(e == converse(e));
      CHECK(is_positive_setlevel(e));
      CHECK(compose(converse(fam.witnesses[i]), fam.witnesses[i]) == e);
    }
  }
}

TEST_CASE("tampered counterexamples are rejected") {
  const FiniteAlgebra& b3 = get("bare-3");
  for (auto p : all_properties()) {
    CAPTURE(to_token(p));
    const auto v = check_property(b3, p);
    REQUIRE_FALSE(v.holds);
    const Counterexample& cx = *v.counterexample;
    CHECK(reverify_property_counterexample(b3, p, cx));

    Counterexample no_rel = cx;
    no_rel.relations.clear();
    CHECK_FALSE(reverify_property_counterexample(b3, p, no_rel));

    Counterexample moved = cx;
    moved.elements.front().value = 7;
    CHECK_FALSE(reverify_property_counterexample(b3, p, moved));

    Counterexample filled = cx;
    auto& r = filled.relations.front();
    r.relation = BinRel::full(r.relation.dom_size(), r.relation.cod_size());
    if (r.witness) *r.witness = BinRel::full(3, 3);
    CHECK_FALSE(reverify_property_counterexample(b3, p, filled));
  }
  // A relation outside the class is rejected even with a failing assignment.
  const FiniteAlgebra& z2 = get("Z2");
  Counterexample cx;
  cx.check = "refl-symmetric";
  cx.relations.push_back({"E", rel(2, {{0, 0}, {0, 1}, {1, 1}}), {}, 0, 0});
  cx.elements = {{"x", 0}, {"y", 1}};
  CHECK_FALSE(
      reverify_property_counterexample(z2, Property::ReflexiveSymmetric, cx));
}

TEST_CASE("heterogeneous carriers") {
  const FiniteAlgebra& z2 = get("Z2");
  const FiniteAlgebra& z4 = get("Z4");
  CHECK_FALSE(check_dd(z2, z4, z2).holds);
  CHECK_FALSE(check_pp(z4, z2, z2).holds);
  const FiniteAlgebra& b = get("bool2");
  CHECK(check_dd(b, b, b).holds);
  const auto fam = enumerate_ternary_relations(z2, z4, z2);
  CHECK(fam.exhaustive);
  for (const auto& d : fam.relations) {
    CHECK(d.x_size() == 2);
    CHECK(d.a_size() == 4);
  }
  CHECK_THROWS_AS(TernaryRelView(BinRel(5, 2), 2, 2), std::invalid_argument);
}
