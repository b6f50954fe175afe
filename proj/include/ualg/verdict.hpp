#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ualg/binrel.hpp"

namespace ualg {

struct NamedRelation {
  std::string name;
  BinRel relation;
  /// For positive relations: a compatible R with R°R == relation.
  std::optional<BinRel> witness;
  /// Nonzero for a ternary relation (X x A) -> U; the domain index of the
  /// pair (x, a) is x * a_size + a.
  std::size_t x_size = 0;
  std::size_t a_size = 0;
};

struct NamedElement {
  std::string name;
  Element value;
};

/// Relations plus an element assignment that break a checked condition.
struct Counterexample {
  std::string check;
  std::vector<NamedRelation> relations;
  std::vector<NamedElement> elements;

  const NamedRelation* relation(std::string_view name) const;
  std::optional<Element> element(std::string_view name) const;
};

/// Outcome of a universally quantified check. `exhaustive` is false when
/// the quantified family was sampled or a closure ran out of budget.
struct Verdict {
  bool holds = true;
  bool exhaustive = true;
  std::optional<Counterexample> counterexample;

  /// "holds", "holds-on-sample" or "fails".
  std::string_view status() const noexcept {
    if (!holds) return "fails";
    return exhaustive ? "holds" : "holds-on-sample";
  }
};

using LemmaVerdict = Verdict;
using PropertyVerdict = Verdict;

inline const NamedRelation* Counterexample::relation(
    std::string_view name) const {
  for (const auto& r : relations) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

inline std::optional<Element> Counterexample::element(
    std::string_view name) const {
  for (const auto& e : elements) {
    if (e.name == name) return e.value;
  }
  return std::nullopt;
}

}  // namespace ualg
