#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/binrel.hpp"
#include "ualg/subpower.hpp"

namespace ualg {

/// Classes of relations on a single algebra that the checkers quantify over.
enum class RelClass {
  Congruence,
  ReflexiveCompatible,
  ReflexivePositiveCompatible,
  EquivalenceCompatible,  // same members as Congruence
  AllCompatible,
};

/// Short CLI token: cong, refl, pos, equiv, all.
std::string_view to_token(RelClass c) noexcept;
std::optional<RelClass> parse_rel_class(std::string_view token) noexcept;

/// Classes closed under arbitrary intersection. Each has a least member
/// above any set of pairs, see close_in_class.
bool is_intersection_closed(RelClass c) noexcept;

/// r, read as a subset of dom x cod, is a subuniverse of the product.
bool is_compatible(const FiniteAlgebra& dom, const FiniteAlgebra& cod,
                   const BinRel& r);
inline bool is_compatible(const FiniteAlgebra& alg, const BinRel& r) {
  return is_compatible(alg, alg, r);
}

/// Symmetric, and loops at both ends of every edge. Exactly the relations
/// of the form R°R for a set-level relation R.
bool is_positive_setlevel(const BinRel& e);

/// Class membership. Positive classes need the witness R with R°R = e.
bool in_class(const FiniteAlgebra& alg, RelClass c, const BinRel& r,
              const BinRel* positive_witness = nullptr);

/// Least member of an intersection-closed class containing `pairs`;
/// nullopt if the closure exceeds `budget`.
std::optional<BinRel> close_in_class(const FiniteAlgebra& alg, RelClass c,
                                     std::span<const Pair> pairs,
                                     std::size_t budget = kDefaultBudget);

/// Subalgebra of dom x cod generated by `pairs` (no diagonal added).
std::optional<BinRel> generated_relation(const FiniteAlgebra& dom,
                                         const FiniteAlgebra& cod,
                                         std::span<const Pair> pairs,
                                         std::size_t budget = kDefaultBudget);

/// Relations of one class in canonical order. For the positive class,
/// witnesses[i] is the first compatible R on the same carrier (canonical
/// order) with R°R == relations[i].
struct RelationFamily {
  RelClass cls;
  std::vector<BinRel> relations;
  std::vector<BinRel> witnesses;
  bool exhaustive = true;
};

/// Subset enumeration is exhaustive when n^2 <= 20 and 2^(n^2) <= budget;
/// otherwise the family is the closure of every generator set with at most
/// two pairs and `exhaustive` is false.
RelationFamily enumerate_relations(const FiniteAlgebra& alg, RelClass c,
                                   std::size_t budget = kDefaultBudget);

}  // namespace ualg
