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

/// A ternary relation D on X x A x U, held as a binary relation from the
/// paired carrier X x A (pair (x, a) at index x * |A| + a) to U.
class TernaryRelView {
 public:
  TernaryRelView(std::size_t x_size, std::size_t a_size, std::size_t u_size);
  /// Throws std::invalid_argument unless rel.dom_size() == x_size * a_size.
  TernaryRelView(BinRel rel, std::size_t x_size, std::size_t a_size);

  std::size_t x_size() const noexcept { return x_; }
  std::size_t a_size() const noexcept { return a_; }
  std::size_t u_size() const noexcept { return rel_.cod_size(); }
  std::size_t pair(Element x, Element a) const noexcept { return x * a_ + a; }

  bool test(Element x, Element a, Element u) const {
    return rel_.test(pair(x, a), u);
  }
  void set(Element x, Element a, Element u) { rel_.set(pair(x, a), u); }
  const BinRel& relation() const noexcept { return rel_; }

  friend bool operator==(const TernaryRelView&,
                         const TernaryRelView&) = default;

 private:
  BinRel rel_;
  std::size_t x_;
  std::size_t a_;
};

/// Kernel pairs of the projections X x A -> X and X x A -> A.
BinRel kernel_pair_x(std::size_t x_size, std::size_t a_size);
BinRel kernel_pair_a(std::size_t x_size, std::size_t a_size);

/// D D° D == D.
bool is_difunctional(const BinRel& d);

enum class Property {
  DifunctionalAll,
  ReflexiveSymmetric,
  EEoCommute,
  PPoPPo,
  DD,
  PP,
  PositiveAreEquivalences,
};

std::string_view to_token(Property p) noexcept;
std::optional<Property> parse_property(std::string_view token) noexcept;
std::span<const Property> all_properties() noexcept;

/// Generated: each property is refuted by a relation generated by the
/// pairs (or triples) its premises mention, so the checker enumerates
/// element assignments and closes them; this is exact for any carrier.
/// Enumerated: quantifies over enumerate_relations / the ternary
/// enumerator, and is exhaustive only where those are.
enum class PropertyMethod { Generated, Enumerated };

// Element forms. Each returns the first failing assignment of the named
// variables, in lexicographic order.

/// x D u, y D u, y D v, not x D v. Variables x, y, u, v.
std::optional<std::vector<Element>> difunctional_violation(const BinRel& d);
/// (x,y) in exactly one of E E° and E° E. Variables x, y.
std::optional<std::vector<Element>> eeo_violation(const BinRel& e);
/// x P u, y P u, y P v, z P v, and no w with x P w, z P w.
/// Variables x, y, z, u, v.
std::optional<std::vector<Element>> ppoppo_violation(const BinRel& p);
/// (x,a) D u, (y,b) D u, (y,a) D v, not (x,a) D v. Variables x, a, y, b,
/// u, v.
std::optional<std::vector<Element>> dd_violation(const TernaryRelView& d);
/// (x,a) P u, (y,b) P u, (y,c) P v, (z,a) P v, and no w with (x,a) P w,
/// (z,a) P w. Variables x, a, y, b, c, z, u, v.
std::optional<std::vector<Element>> pp_violation(const TernaryRelView& p);

// Relational forms, via compose / meet / converse and the kernel pairs.
// K stands for the relation "shares an image": compose(converse(P), P).
/// K K <= K.
bool ppoppo_relational(const BinRel& p);
/// compose(D, Eq(A) meet compose(Eq(X), K)) <= D.
bool dd_relational(const TernaryRelView& d);
/// Eq(A) meet compose(K, compose(Eq(X), K)) <= K.
bool pp_relational(const TernaryRelView& p);

/// Variable names of a property's counterexample assignment.
std::span<const std::string_view> property_variables(Property p) noexcept;

PropertyVerdict check_property(const FiniteAlgebra& alg, Property p,
                               std::size_t budget = kDefaultBudget,
                               PropertyMethod method = PropertyMethod::Generated);

PropertyVerdict check_difunctional_all(const FiniteAlgebra& alg,
                                       std::size_t budget = kDefaultBudget);
PropertyVerdict check_reflexive_symmetric(const FiniteAlgebra& alg,
                                          std::size_t budget = kDefaultBudget);
PropertyVerdict check_eeo_commute(const FiniteAlgebra& alg,
                                  std::size_t budget = kDefaultBudget);
PropertyVerdict check_ppoppo(const FiniteAlgebra& alg,
                             std::size_t budget = kDefaultBudget);
PropertyVerdict check_dd(const FiniteAlgebra& alg,
                         std::size_t budget = kDefaultBudget);
PropertyVerdict check_pp(const FiniteAlgebra& alg,
                         std::size_t budget = kDefaultBudget);
PropertyVerdict check_positive_are_equivalences(
    const FiniteAlgebra& alg, std::size_t budget = kDefaultBudget);

/// Heterogeneous versions over compatible D on X x A x U.
PropertyVerdict check_dd(const FiniteAlgebra& x, const FiniteAlgebra& a,
                         const FiniteAlgebra& u,
                         std::size_t budget = kDefaultBudget);
PropertyVerdict check_pp(const FiniteAlgebra& x, const FiniteAlgebra& a,
                         const FiniteAlgebra& u,
                         std::size_t budget = kDefaultBudget);

struct TernaryFamily {
  std::vector<TernaryRelView> relations;
  bool exhaustive = true;
};

/// Compatible ternary relations in canonical order. All subsets are
/// filtered when |X||A||U| <= 20; otherwise the family holds the closures
/// of at most two triples and of products of congruence blocks, and is
/// flagged non-exhaustive.
TernaryFamily enumerate_ternary_relations(const FiniteAlgebra& x,
                                          const FiniteAlgebra& a,
                                          const FiniteAlgebra& u,
                                          std::size_t budget = kDefaultBudget);

/// The counterexample's relation lies in the quantified class and its
/// assignment breaks the property.
bool reverify_property_counterexample(const FiniteAlgebra& alg, Property p,
                                      const Counterexample& cx);

}  // namespace ualg
