#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ualg/io.hpp"
#include "ualg/lemmas.hpp"
#include "ualg/terms.hpp"

namespace ualg {

/// How much a fact's status tells the ledger.
enum class Truth { True, False, TrueOnSample, Unknown };

struct Fact {
  /// holds, fails, holds-on-sample, found, not-found or inconclusive.
  std::string status;
  bool exhaustive = true;
  double runtime_ms = 0;
  /// Counterexample, failure witness or term tables; null when absent.
  Json witness;

  Truth truth() const noexcept;
};

struct FactVector {
  std::string algebra;
  std::size_t size = 0;
  std::map<std::string, Fact> facts;
  /// Raw term searches, kept for the witness constructions.
  std::map<std::string, TermSearchResult> terms;
  /// Congruence blocks in lattice order; empty past kMaxLatticeCarrier.
  std::vector<std::vector<std::vector<Element>>> congruences;

  const Fact& at(std::string_view name) const;
  Truth truth(std::string_view name) const { return at(name).truth(); }
};

/// Relation-class combinations the lemma facts are computed over. Fact
/// names are "<SL|TL|TpL>_<suffix>".
struct LemmaCombo {
  std::string_view suffix;
  LemmaClasses classes;
};
std::span<const LemmaCombo> lemma_combos() noexcept;

/// All fact names in report order.
std::vector<std::string> fact_names();

/// Runs every checker. Deterministic apart from runtime_ms.
FactVector compute_facts(const FiniteAlgebra& alg,
                         std::size_t budget = kDefaultBudget);

/// hypotheses => conclusions, or, when `equivalence` is set, all facts in
/// `conclusions` agree whenever the hypotheses hold.
struct LedgerClause {
  std::vector<std::string> hypotheses;
  std::vector<std::string> conclusions;
  bool equivalence = false;
};

struct LedgerEntry {
  std::string id;
  std::string statement;
  std::string basis;
  std::vector<LedgerClause> clauses;
  /// Also re-verify the term constructions (pixley to maltsev and
  /// majority, maltsev to pq).
  bool constructions = false;
};

/// L1 to L16.
const std::vector<LedgerEntry>& implication_ledger();

/// Converse directions that only make sense for whole varieties.
struct VarietyNote {
  std::string id;
  std::string statement;
  std::string probe;
};
const std::vector<VarietyNote>& variety_level_notes();

struct Violation {
  std::string ledger_id;
  std::string detail;
  Json counterexample;
};

/// Outcome per entry: ok, vacuous, conditional, undetermined or violated.
/// Sampled hypotheses make an entry conditional and never yield a
/// violation.
struct LedgerResult {
  std::map<std::string, std::string> outcomes;
  std::vector<Violation> violations;
};

LedgerResult verify_ledger(const FiniteAlgebra& alg, const FactVector& facts);

/// Cross-checks between modules: (DD)/(PP) at A = 1, element against
/// relational forms, lemma forms on congruence triples, joins, and replay
/// of every stored counterexample.
std::vector<Violation> check_invariants(const FiniteAlgebra& alg,
                                        const FactVector& facts,
                                        std::size_t budget = kDefaultBudget);

/// FIXTURE: a fact status differs from the fixture. COMPAT: a fixture
/// congruence is not a congruence of `alg`.
std::vector<Violation> compare_fixture(const FiniteAlgebra& alg,
                                       const FactVector& facts,
                                       const Json& fixture);

struct Report {
  FactVector facts;
  LedgerResult ledger;
  std::vector<Violation> violations;
};

Report verify_algebra(const FiniteAlgebra& alg,
                      std::size_t budget = kDefaultBudget,
                      const Json* fixture = nullptr);

/// Keys are sorted; runtime_ms only appears with `timings`.
Json report_to_json(const Report& r, bool timings = false);

}  // namespace ualg
