#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/subpower.hpp"

namespace ualg {

/// Argument patterns are lists of abstract variable indices; a constraint
/// is instantiated by every assignment of carrier elements to the
/// variables it mentions.
using Pattern = std::vector<std::size_t>;

struct Unknown {
  std::string name;
  std::size_t arity;
};

/// unknown(args) = value, with `value` an abstract variable.
struct FixedConstraint {
  std::size_t unknown;
  Pattern args;
  std::size_t value;
};

/// first(first_args) = second(second_args).
struct LinkedConstraint {
  std::size_t first;
  Pattern first_args;
  std::size_t second;
  Pattern second_args;
};

struct IdentitySystem {
  std::string name;
  std::vector<Unknown> unknowns;
  std::vector<FixedConstraint> fixed;
  std::vector<LinkedConstraint> linked;
};

/// Values of one operation on the tuples the system constrains.
struct TermWitness {
  std::size_t arity = 0;
  std::vector<std::vector<Element>> coords;
  std::vector<Element> values;
  std::optional<Term> term;

  std::optional<Element> value_at(std::span<const Element> args) const;
};

enum class SearchStatus { Found, NotFound, Inconclusive };

std::string_view to_token(SearchStatus s) noexcept;

struct TermSearchResult {
  SearchStatus status = SearchStatus::NotFound;
  std::map<std::string, TermWitness> witnesses;
  std::string note;

  bool found() const noexcept { return status == SearchStatus::Found; }
};

/// Decides whether operations in the clone of `alg` satisfy `sys`, by
/// membership in the subpower generated by the projections on the
/// constrained tuples. Inconclusive only when a closure exceeds `budget`.
TermSearchResult solve_identity_system(const FiniteAlgebra& alg,
                                       const IdentitySystem& sys,
                                       std::size_t budget = kDefaultBudget);

/// Every constraint instantiation holds in the witness tables, and every
/// attached term evaluates to its table.
bool verify_witnesses(const FiniteAlgebra& alg, const IdentitySystem& sys,
                      const TermSearchResult& res);

/// Tables of the given terms on the coordinates of `sys`. The result is
/// Found iff the tables satisfy the system.
TermSearchResult witnesses_from_terms(
    const FiniteAlgebra& alg, const IdentitySystem& sys,
    const std::map<std::string, Term>& terms);

/// t with variable i replaced by vars[i].
Term substitute(const Term& t, std::span<const Term> vars);

// The named systems.
IdentitySystem maltsev_system();
IdentitySystem pixley_system();
IdentitySystem majority_system();
IdentitySystem quaternary_pq_system();
/// quaternary_pq plus p(x,y,z,x) = x = q(x,y,z,x).
IdentitySystem quaternary_pqx_system();
IdentitySystem lipparini_rs_system();

/// Kind tokens: maltsev, pixley, majority, quaternary-pq, quaternary-pqx,
/// lipparini-rs.
std::span<const std::string_view> term_kinds() noexcept;
std::optional<IdentitySystem> named_system(std::string_view kind);

TermSearchResult find_maltsev(const FiniteAlgebra& alg,
                              std::size_t budget = kDefaultBudget);
TermSearchResult find_pixley(const FiniteAlgebra& alg,
                             std::size_t budget = kDefaultBudget);
TermSearchResult find_majority(const FiniteAlgebra& alg,
                               std::size_t budget = kDefaultBudget);
TermSearchResult find_quaternary_pq(const FiniteAlgebra& alg,
                                    std::size_t budget = kDefaultBudget);
TermSearchResult find_quaternary_pqx(const FiniteAlgebra& alg,
                                     std::size_t budget = kDefaultBudget);
TermSearchResult find_lipparini_rs(const FiniteAlgebra& alg,
                                   std::size_t budget = kDefaultBudget);

// Constructions between conditions. Each returns the derived witnesses on
// the target system's coordinates (status Found iff they verify), or
// nullopt when the source witness carries no term.

/// p(x,y,z,w) = m(x,y,z), q(x,y,z,w) = w.
std::optional<TermSearchResult> pq_from_maltsev(const FiniteAlgebra& alg,
                                                const TermSearchResult& m);
/// The Pixley term itself, checked against the Mal'tsev identities.
std::optional<TermSearchResult> maltsev_from_pixley(const FiniteAlgebra& alg,
                                                    const TermSearchResult& p);
/// m(x,y,z) = p(x, p(x,y,z), z).
std::optional<TermSearchResult> majority_from_pixley(
    const FiniteAlgebra& alg, const TermSearchResult& p);

}  // namespace ualg
