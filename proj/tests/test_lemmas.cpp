#include <set>

#include "doctest.h"
#include "ualg/congruence.hpp"
#include "ualg/corpus.hpp"
#include "ualg/lemmas.hpp"

using namespace ualg;

namespace {

const FiniteAlgebra& get(std::string_view name) {
  for (const auto& a : builtin_corpus()) {
    if (a.name() == name) return a;
  }
  throw std::runtime_error("missing builtin");
}

constexpr LemmaKind kLemmas[] = {LemmaKind::Shifting, LemmaKind::Triangular,
                                 LemmaKind::Trapezoid};

// Walks every triple of the (exhaustive) families and looks for a diagram
// violation directly.
bool brute_force_holds(const FiniteAlgebra& a, LemmaKind k, LemmaClasses c) {
  const auto fr = enumerate_relations(a, c.r);
  const auto fs = enumerate_relations(a, c.s);
  const auto ft = enumerate_relations(a, c.t);
  REQUIRE(fr.exhaustive);
  REQUIRE(fs.exhaustive);
  REQUIRE(ft.exhaustive);
  const bool side = k != LemmaKind::MajorityInequality;
  for (const auto& r : fr.relations) {
    for (const auto& s : fs.relations) {
      const BinRel m = meet(r, s);
      for (const auto& t : ft.relations) {
        if (side && !m.subset_of(t)) continue;
        if (diagram_violation(k, r, s, t)) return false;
      }
    }
  }
  return true;
}

std::vector<std::vector<Element>> blocks(const BinRel& r) {
  return Congruence::from_relation(r).block_lists();
}

}  // namespace

TEST_CASE("lemma tokens") {
  for (auto k : {LemmaKind::Shifting, LemmaKind::Triangular,
                 LemmaKind::Trapezoid, LemmaKind::MajorityInequality}) {
    CHECK(parse_lemma_kind(to_token(k)) == k);
  }
  CHECK_FALSE(parse_lemma_kind("pentagon"));
  CHECK(lemma_variables(LemmaKind::Triangular).size() == 3);
  CHECK(lemma_variables(LemmaKind::Shifting).size() == 4);
}

TEST_CASE("klein4 over congruences") {
  const auto& k = get("klein4");
  const LemmaClasses cong{RelClass::Congruence, RelClass::Congruence,
                          RelClass::Congruence};
  auto sl = check_lemma(k, LemmaKind::Shifting, cong);
  CHECK(sl.holds);
  CHECK(sl.exhaustive);
  CHECK(sl.status() == "holds");

  auto tl = check_lemma(k, LemmaKind::Triangular, cong);
  CHECK_FALSE(tl.holds);
  REQUIRE(tl.counterexample);
  const auto& cx = *tl.counterexample;
  CHECK(reverify_lemma_counterexample(k, LemmaKind::Triangular, cong, cx));
  const BinRel& alpha = cx.relation("R")->relation;
  const BinRel& beta = cx.relation("S")->relation;
  const BinRel& gamma = cx.relation("T")->relation;
  CHECK(alpha != beta);
  CHECK(beta != gamma);
  CHECK(alpha != gamma);
  for (const BinRel* r : {&alpha, &beta, &gamma}) {
    CHECK(blocks(*r).size() == 2);
  }
  CHECK(meet(alpha, beta) == BinRel::identity(4));
  const Element u = *cx.element("u"), y = *cx.element("y"),
                v = *cx.element("v");
  CHECK(gamma.test(u, y));
  CHECK(beta.test(y, v));
  CHECK(alpha.test(u, v));
  CHECK_FALSE(gamma.test(u, v));
  CHECK_FALSE(relational_inequality(k, LemmaKind::Triangular, alpha, beta,
                                    gamma));
}

TEST_CASE("bare 4-set breaks the Shifting Lemma with the classic triple") {
  const auto& b = get("bare-4");
  const LemmaClasses cong{RelClass::Congruence, RelClass::Congruence,
                          RelClass::Congruence};
  auto v = check_lemma(b, LemmaKind::Shifting, cong);
  CHECK_FALSE(v.holds);
  REQUIRE(v.counterexample);
  const auto& cx = *v.counterexample;
  CHECK(reverify_lemma_counterexample(b, LemmaKind::Shifting, cong, cx));
  const Element x = *cx.element("x"), y = *cx.element("y"),
                u = *cx.element("u"), w = *cx.element("v");
  CHECK(std::set<Element>{x, y, u, w}.size() == 4);
  using B = std::vector<std::vector<Element>>;
  auto sorted = [](B bl) {
    for (auto& blk : bl) std::sort(blk.begin(), blk.end());
    std::sort(bl.begin(), bl.end());
    return bl;
  };
  CHECK(sorted(blocks(cx.relation("R")->relation)) == sorted(B{{x, y}, {u, w}}));
  CHECK(sorted(blocks(cx.relation("S")->relation)) == sorted(B{{x, u}, {y, w}}));
  CHECK(sorted(blocks(cx.relation("T")->relation)) ==
        sorted(B{{x, y}, {u}, {w}}));
}

TEST_CASE("majority inequality examples") {
  CHECK(check_majority_inequality(get("chain2"), RelClass::ReflexiveCompatible)
            .holds);
  CHECK(check_majority_inequality(get("Z2"), RelClass::Congruence).holds);
  auto k = check_majority_inequality(get("klein4"), RelClass::Congruence);
  CHECK_FALSE(k.holds);
  REQUIRE(k.counterexample);
  const LemmaClasses cong{RelClass::Congruence, RelClass::Congruence,
                          RelClass::Congruence};
  CHECK(reverify_lemma_counterexample(get("klein4"),
                                      LemmaKind::MajorityInequality, cong,
                                      *k.counterexample));
}

TEST_CASE("relational inequality examples") {
  for (const auto& a : builtin_corpus()) {
    const std::size_t n = a.size();
    const BinRel full = BinRel::full(n, n);
    for (const auto& r : CongLattice(a).elements()) {
      for (auto k : kLemmas) {
        CHECK(relational_inequality(a, k, r.relation(), full, full));
      }
    }
  }
  const auto& z4 = get("Z4");
  const Pair p02[] = {{0, 2}};
  const BinRel theta = congruence_generated(z4, p02).relation();
  const BinRel full = BinRel::full(4, 4);
  for (auto k : kLemmas) CHECK(relational_inequality(z4, k, theta, full, full));
  CHECK_THROWS_AS(relational_inequality(z4, LemmaKind::Triangular, full, full,
                                        theta),
                  std::invalid_argument);
  CHECK_THROWS_AS(relational_inequality(z4, LemmaKind::Triangular,
                                        BinRel::full(3, 3), full, full),
                  std::invalid_argument);
}

TEST_CASE("element and relational forms agree on congruence triples") {
  for (const auto& a : builtin_corpus()) {
    const auto cs = CongLattice(a).elements();
    for (const auto& r : cs) {
      for (const auto& s : cs) {
        const BinRel m = meet(r.relation(), s.relation());
        for (const auto& t : cs) {
          if (!m.subset_of(t.relation())) continue;
          for (auto k : kLemmas) {
            const bool elem = !diagram_violation(k, r.relation(), s.relation(),
                                                 t.relation());
            CHECK(elem == relational_inequality(a, k, r.relation(),
                                                s.relation(), t.relation()));
          }
          const bool elem =
              !diagram_violation(LemmaKind::MajorityInequality, r.relation(),
                                 s.relation(), t.relation());
          CHECK(elem == relational_inequality(a, LemmaKind::MajorityInequality,
                                              r.relation(), s.relation(),
                                              t.relation()));
        }
      }
    }
  }
}

TEST_CASE("check_lemma agrees with brute-force triple enumeration") {
  const LemmaClasses combos[] = {
      {RelClass::Congruence, RelClass::Congruence, RelClass::Congruence},
      {RelClass::ReflexiveCompatible, RelClass::ReflexiveCompatible,
       RelClass::ReflexiveCompatible},
      {RelClass::ReflexiveCompatible, RelClass::Congruence,
       RelClass::ReflexiveCompatible},
      {RelClass::ReflexivePositiveCompatible, RelClass::ReflexiveCompatible,
       RelClass::ReflexivePositiveCompatible},
      {RelClass::AllCompatible, RelClass::AllCompatible,
       RelClass::AllCompatible},
  };
  for (const auto& a : builtin_corpus()) {
    for (const auto& c : combos) {
      const bool small = c.r == RelClass::Congruence || a.size() <= 3;
      if (!small) continue;
      for (auto k : {LemmaKind::Shifting, LemmaKind::Triangular,
                     LemmaKind::Trapezoid, LemmaKind::MajorityInequality}) {
        CAPTURE(a.name());
        CAPTURE(to_token(k));
        CAPTURE(to_token(c.r));
        CAPTURE(to_token(c.s));
        CAPTURE(to_token(c.t));
        auto v = check_lemma(a, k, c);
        CHECK(v.exhaustive);
        CHECK(v.holds == brute_force_holds(a, k, c));
        CHECK(v.holds != v.counterexample.has_value());
        if (v.counterexample) {
          CHECK(reverify_lemma_counterexample(a, k, c, *v.counterexample));
        }
      }
    }
  }
}

TEST_CASE("per-instance implications between lemmas") {
  const LemmaClasses combos[] = {
      {RelClass::Congruence, RelClass::Congruence, RelClass::Congruence},
      {RelClass::ReflexiveCompatible, RelClass::ReflexiveCompatible,
       RelClass::ReflexiveCompatible},
      {RelClass::ReflexivePositiveCompatible, RelClass::ReflexiveCompatible,
       RelClass::ReflexivePositiveCompatible},
  };
  for (const auto& a : builtin_corpus()) {
    CAPTURE(a.name());
    for (const auto& c : combos) {
      const bool sl = check_lemma(a, LemmaKind::Shifting, c).holds;
      const bool tl = check_lemma(a, LemmaKind::Triangular, c).holds;
      const bool tp = check_lemma(a, LemmaKind::Trapezoid, c).holds;
      if (tp) {
        CHECK(sl);
        CHECK(tl);
      }
    }
    if (is_modular(CongLattice(a))) {
      CHECK(check_lemma(a, LemmaKind::Shifting,
                        {RelClass::Congruence, RelClass::Congruence,
                         RelClass::Congruence})
                .holds);
    }
  }
}

TEST_CASE("tampered counterexamples are rejected") {
  const auto& k = get("klein4");
  const LemmaClasses cong{RelClass::Congruence, RelClass::Congruence,
                          RelClass::Congruence};
  auto tl = check_lemma(k, LemmaKind::Triangular, cong);
  REQUIRE(tl.counterexample);
  auto cx = *tl.counterexample;
  cx.relations[2].relation = BinRel::full(4, 4);
  CHECK_FALSE(reverify_lemma_counterexample(k, LemmaKind::Triangular, cong, cx));
  cx = *tl.counterexample;
  cx.elements.pop_back();
  CHECK_FALSE(reverify_lemma_counterexample(k, LemmaKind::Triangular, cong, cx));
  cx = *tl.counterexample;
  cx.relations[0].relation.reset(0, 0);
  CHECK_FALSE(reverify_lemma_counterexample(k, LemmaKind::Triangular, cong, cx));
}
