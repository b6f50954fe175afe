#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/binrel.hpp"
#include "ualg/relations.hpp"
#include "ualg/verdict.hpp"

namespace ualg {

// Element-wise schemas. Edges are read left to right and top to bottom, so
// "T(u,y)" means (u, y) is in T.
//
//   Shifting    R(x,y) T(x,y) S(x,u) S(y,v) R(u,v)  =>  T(u,v)
//   Triangular  T(u,y) S(y,v) R(u,v)                =>  T(u,v)
//   Trapezoid   T(x,y) S(x,u) S(y,v) R(u,v)         =>  T(u,v)
//   Majority    R(x,z) T(x,y) S(y,z)  =>  exists w: R(x,w) T(x,w) R(w,z) S(w,z)
//
// The first three are only asserted for triples with R meet S below T.
enum class LemmaKind { Shifting, Triangular, Trapezoid, MajorityInequality };

std::string_view to_token(LemmaKind k) noexcept;
std::optional<LemmaKind> parse_lemma_kind(std::string_view token) noexcept;

/// Variable names of the schema, in assignment order.
std::span<const std::string_view> lemma_variables(LemmaKind k) noexcept;

struct LemmaClasses {
  RelClass r;
  RelClass s;
  RelClass t;
};

/// First assignment (lexicographic, variables in lemma_variables order)
/// satisfying the premises of `k` for this fixed triple but not the
/// conclusion. Does not look at the side condition.
std::optional<std::vector<Element>> diagram_violation(LemmaKind k,
                                                      const BinRel& r,
                                                      const BinRel& s,
                                                      const BinRel& t);

/// The composed-relation form: R∧S(R∧T)S ≤ T, R∧ST ≤ T, R∧STS ≤ T, or
/// R∧ST ≤ (R∧S)(R∧T), with ST meaning "first T, then S". Throws
/// std::invalid_argument when a lemma's side condition R∧S ≤ T fails or
/// the relations are not square on the carrier.
bool relational_inequality(const FiniteAlgebra& alg, LemmaKind k,
                           const BinRel& r, const BinRel& s, const BinRel& t);

/// Decides the schema over all triples from the given classes.
LemmaVerdict check_lemma(const FiniteAlgebra& alg, LemmaKind k,
                         LemmaClasses classes,
                         std::size_t budget = kDefaultBudget);

LemmaVerdict check_majority_inequality(const FiniteAlgebra& alg, RelClass c,
                                       std::size_t budget = kDefaultBudget);

/// True iff `cx` names relations R, S, T of the given classes satisfying
/// the side condition and an assignment that breaks the schema.
bool reverify_lemma_counterexample(const FiniteAlgebra& alg, LemmaKind k,
                                   LemmaClasses classes,
                                   const Counterexample& cx);

}  // namespace ualg
