#include "ualg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

#include "ualg/congruence.hpp"
#include "ualg/properties.hpp"

namespace ualg {

namespace {

constexpr LemmaCombo kCombos[] = {
    {"cong",
     {RelClass::Congruence, RelClass::Congruence, RelClass::Congruence}},
    {"refl",
     {RelClass::ReflexiveCompatible, RelClass::ReflexiveCompatible,
      RelClass::ReflexiveCompatible}},
    {"refl_eqS",
     {RelClass::ReflexiveCompatible, RelClass::Congruence,
      RelClass::ReflexiveCompatible}},
    {"pos",
     {RelClass::ReflexivePositiveCompatible, RelClass::ReflexiveCompatible,
      RelClass::ReflexivePositiveCompatible}},
};

struct LemmaFact {
  std::string_view prefix;
  LemmaKind kind;
};
constexpr LemmaFact kLemmaFacts[] = {{"SL", LemmaKind::Shifting},
                                     {"TL", LemmaKind::Triangular},
                                     {"TpL", LemmaKind::Trapezoid}};

struct TermFact {
  std::string_view fact;
  std::string_view kind;
};
constexpr TermFact kTermFacts[] = {{"maltsev", "maltsev"},
                                   {"pixley", "pixley"},
                                   {"majority_term", "majority"},
                                   {"quaternary_pq", "quaternary-pq"},
                                   {"quaternary_pqx", "quaternary-pqx"},
                                   {"lipparini_rs", "lipparini-rs"}};

struct PropertyFact {
  std::string_view fact;
  Property property;
};
constexpr PropertyFact kPropertyFacts[] = {
    {"refl_symmetric", Property::ReflexiveSymmetric},
    {"difunctional_all", Property::DifunctionalAll},
    {"eeo_commute", Property::EEoCommute},
    {"ppoppo", Property::PPoPPo},
    {"dd", Property::DD},
    {"pp", Property::PP},
    {"positive_are_equiv", Property::PositiveAreEquivalences}};

constexpr RelClass kMajorityClass = RelClass::ReflexiveCompatible;

std::string lemma_fact_name(std::string_view prefix, std::string_view suffix) {
  return std::string(prefix) + "_" + std::string(suffix);
}

Fact from_verdict(const Verdict& v) {
  Fact f;
  f.status = std::string(v.status());
  f.exhaustive = v.exhaustive;
  if (v.counterexample) f.witness = counterexample_to_json(*v.counterexample);
  return f;
}

Fact from_search(const TermSearchResult& r) {
  Fact f;
  f.status = std::string(to_token(r.status));
  f.exhaustive = r.status != SearchStatus::Inconclusive;
  if (r.found()) f.witness = witnesses_to_json(r);
  return f;
}

Fact inconclusive(std::string why) {
  Fact f;
  f.status = "inconclusive";
  f.exhaustive = false;
  f.witness = Json{{"reason", std::move(why)}};
  return f;
}

Fact from_bool(bool holds) {
  Fact f;
  f.status = holds ? "holds" : "fails";
  return f;
}

Json blocks_json(const Congruence& c) { return c.block_lists(); }

std::string_view truth_word(Truth t) {
  switch (t) {
    case Truth::True: return "holds";
    case Truth::False: return "fails";
    case Truth::TrueOnSample: return "holds on sample";
    case Truth::Unknown: return "is inconclusive";
  }
  return "?";
}

// Worst first.
constexpr std::string_view kOutcomeOrder[] = {"violated", "undetermined",
                                              "conditional", "ok", "vacuous"};

std::size_t outcome_rank(std::string_view o) {
  for (std::size_t i = 0; i < std::size(kOutcomeOrder); ++i) {
    if (kOutcomeOrder[i] == o) return i;
  }
  return std::size(kOutcomeOrder);
}

struct ClauseOutcome {
  std::string outcome;
  std::optional<Violation> violation;
};

ClauseOutcome evaluate(const std::string& id, const LedgerClause& c,
                       const FactVector& fv) {
  bool sampled = false;
  for (const auto& h : c.hypotheses) {
    const Truth t = fv.truth(h);
    if (t == Truth::False) return {"vacuous", std::nullopt};
    if (t == Truth::Unknown) return {"undetermined", std::nullopt};
    sampled = sampled || t == Truth::TrueOnSample;
  }
  std::string hyp;
  for (const auto& h : c.hypotheses) hyp += (hyp.empty() ? "" : " and ") + h;
  if (hyp.empty()) hyp = "always";

  auto found_violation = [&](std::string detail,
                             const std::string& fact) -> ClauseOutcome {
    if (sampled) return {"conditional", std::nullopt};
    return {"violated",
            Violation{id, std::move(detail), fv.at(fact).witness}};
  };

  bool unknown = false;
  if (c.equivalence) {
    std::optional<std::string> exact_true, exact_false;
    bool sampled_true = false;
    for (const auto& name : c.conclusions) {
      switch (fv.truth(name)) {
        case Truth::True: exact_true = exact_true.value_or(name); break;
        case Truth::False: exact_false = exact_false.value_or(name); break;
        case Truth::TrueOnSample: sampled_true = true; break;
        case Truth::Unknown: unknown = true; break;
      }
    }
    if (exact_true && exact_false) {
      return found_violation(hyp + ": " + *exact_true + " holds but " +
                                 *exact_false + " fails",
                             *exact_false);
    }
    if (unknown) return {"undetermined", std::nullopt};
    if (sampled_true && exact_false) return {"conditional", std::nullopt};
    return {sampled ? "conditional" : "ok", std::nullopt};
  }
  for (const auto& name : c.conclusions) {
    const Truth t = fv.truth(name);
    if (t == Truth::False) {
      return found_violation(hyp + " but " + name + " fails", name);
    }
    unknown = unknown || t == Truth::Unknown;
  }
  if (unknown) return {"undetermined", std::nullopt};
  return {sampled ? "conditional" : "ok", std::nullopt};
}

std::vector<LedgerEntry> make_ledger() {
  std::vector<LedgerEntry> l;
  auto add = [&](std::string id, std::string statement, std::string basis,
                 std::vector<LedgerClause> clauses, bool constructions = false) {
    l.push_back({std::move(id), std::move(statement), std::move(basis),
                 std::move(clauses), constructions});
  };
  add("L1", "maltsev => refl_symmetric, difunctional_all, perm2",
      "a Mal'tsev term makes reflexive compatible relations symmetric and "
      "compatible relations difunctional",
      {{{"maltsev"}, {"refl_symmetric", "difunctional_all", "perm2"}}});
  add("L2", "quaternary_pq => eeo_commute, ppoppo, perm3",
      "the quaternary Goursat terms give EE° = E°E and PP°PP° = PP°",
      {{{"quaternary_pq"}, {"eeo_commute", "ppoppo", "perm3"}}});
  std::vector<LedgerClause> l3;
  for (const auto& c : kCombos) {
    l3.push_back({{lemma_fact_name("TpL", c.suffix)},
                  {lemma_fact_name("SL", c.suffix),
                   lemma_fact_name("TL", c.suffix)}});
  }
  add("L3", "TpL_c => SL_c, TL_c for every class combination",
      "both diagrams are special cases of the trapezoid", std::move(l3));
  add("L4", "perm2 => (TL_cong <=> TpL_cong <=> distributive)",
      "for permuting congruences the join is a relational product",
      {{{"perm2"}, {"TL_cong", "TpL_cong", "distributive"}, true}});
  add("L5", "quaternary_pq and TL_cong => TpL_cong",
      "the Goursat terms upgrade the triangle to the trapezoid",
      {{{"quaternary_pq", "TL_cong"}, {"TpL_cong"}}});
  add("L6", "perm3 => (TpL_cong <=> distributive)",
      "for 3-permuting congruences the join is STS; the converse always holds",
      {{{"perm3"}, {"TpL_cong", "distributive"}, true}});
  add("L7", "majority_term => majority_inequality, TpL_cong",
      "a majority term gives R∧ST ≤ (R∧S)(R∧T) and the trapezoid",
      {{{"majority_term"}, {"majority_inequality", "TpL_cong"}}});
  add("L8", "maltsev and distributive => TL_refl, TpL_refl",
      "under a Mal'tsev term reflexive compatible relations are congruences",
      {{{"maltsev", "distributive"}, {"TL_refl", "TpL_refl"}}});
  add("L9", "pixley => dd", "a Pixley term forces the ternary property",
      {{{"pixley"}, {"dd"}}});
  add("L10", "dd => difunctional_all",
      "the ternary property with a one-element middle factor is "
      "difunctionality",
      {{{"dd"}, {"difunctional_all"}}});
  add("L11", "lipparini_rs => pp",
      "the r, s terms force the positive ternary property",
      {{{"lipparini_rs"}, {"pp"}}});
  add("L12", "pp => ppoppo",
      "the positive ternary property with a one-element middle factor",
      {{{"pp"}, {"ppoppo"}}});
  add("L13", "quaternary_pq => positive_are_equiv",
      "Goursat terms make reflexive positive relations transitive",
      {{{"quaternary_pq"}, {"positive_are_equiv"}}});
  add("L14", "modular => SL_cong",
      "the modular law on congruences gives the shifting property",
      {{{"modular"}, {"SL_cong"}}});
  add("L15",
      "perm2 => perm3; distributive => modular; pixley => maltsev, "
      "majority_term; maltsev => quaternary_pq",
      "order-theoretic, and by explicit term constructions",
      {{{"perm2"}, {"perm3"}},
       {{"distributive"}, {"modular"}},
       {{"pixley"}, {"maltsev", "majority_term"}},
       {{"maltsev"}, {"quaternary_pq"}}},
      true);
  add("L16", "quaternary_pqx <=> lipparini_rs",
      "the two identity systems are interderivable",
      {{{}, {"quaternary_pqx", "lipparini_rs"}, true}});
  return l;
}

std::vector<VarietyNote> make_notes() {
  return {
      {"V1", "refl_symmetric or difunctional_all => maltsev",
       "rerun the checks on subalgebras of powers carrying the free "
       "relations"},
      {"V2", "eeo_commute or ppoppo => quaternary_pq",
       "same, with the relations of the Goursat matrix"},
      {"V3", "TL_refl and TpL_refl => maltsev and distributive",
       "check TL_refl on the algebra carried by a reflexive relation"},
      {"V4", "dd => pixley", "check dd over X x A x U with A a subpower"},
      {"V5", "pp => lipparini_rs", "as V4 for the positive property"},
      {"V6", "positive_are_equiv => quaternary_pq",
       "check positivity witnesses living on other carriers"},
  };
}

bool replay_fact(const FiniteAlgebra& alg, std::string_view name,
                 const Fact& f) {
  const Counterexample cx = counterexample_from_json(f.witness);
  for (const auto& p : kPropertyFacts) {
    if (p.fact == name) {
      return reverify_property_counterexample(alg, p.property, cx);
    }
  }
  if (name == "majority_inequality") {
    return reverify_lemma_counterexample(
        alg, LemmaKind::MajorityInequality,
        {kMajorityClass, kMajorityClass, kMajorityClass}, cx);
  }
  for (const auto& c : kCombos) {
    for (const auto& l : kLemmaFacts) {
      if (lemma_fact_name(l.prefix, c.suffix) == name) {
        return reverify_lemma_counterexample(alg, l.kind, c.classes, cx);
      }
    }
  }
  return false;
}

}  // namespace

Truth Fact::truth() const noexcept {
  if (status == "holds" || status == "found") {
    return exhaustive ? Truth::True : Truth::TrueOnSample;
  }
  if (status == "holds-on-sample") return Truth::TrueOnSample;
  if (status == "fails" || status == "not-found") return Truth::False;
  return Truth::Unknown;
}

const Fact& FactVector::at(std::string_view name) const {
  auto it = facts.find(std::string(name));
  if (it == facts.end()) {
    throw std::out_of_range("unknown fact " + std::string(name));
  }
  return it->second;
}

std::span<const LemmaCombo> lemma_combos() noexcept { return kCombos; }

std::vector<std::string> fact_names() {
  std::vector<std::string> out;
  for (const auto& t : kTermFacts) out.emplace_back(t.fact);
  for (auto n : {"perm2", "perm3", "modular", "distributive"}) {
    out.emplace_back(n);
  }
  for (const auto& c : kCombos) {
    for (const auto& l : kLemmaFacts) {
      out.push_back(lemma_fact_name(l.prefix, c.suffix));
    }
  }
  out.emplace_back("majority_inequality");
  for (const auto& p : kPropertyFacts) out.emplace_back(p.fact);
  return out;
}

FactVector compute_facts(const FiniteAlgebra& alg, std::size_t budget) {
  FactVector fv;
  fv.algebra = alg.name();
  fv.size = alg.size();
  auto timed = [&](const std::string& name, const std::function<Fact()>& run) {
    const auto t0 = std::chrono::steady_clock::now();
    Fact f;
    try {
      f = run();
    } catch (const StructureError& e) {
      f = inconclusive(e.what());
    }
    f.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    fv.facts[name] = std::move(f);
  };

  for (const auto& t : kTermFacts) {
    timed(std::string(t.fact), [&] {
      auto r = solve_identity_system(alg, *named_system(t.kind), budget);
      Fact f = from_search(r);
      fv.terms[std::string(t.fact)] = std::move(r);
      return f;
    });
  }

  std::optional<CongLattice> lattice;
  if (alg.size() <= kMaxLatticeCarrier) {
    lattice.emplace(alg);
    for (const auto& c : lattice->elements()) {
      fv.congruences.push_back(c.block_lists());
    }
  }
  const std::string too_big = "carrier exceeds the congruence lattice limit";
  std::optional<PermutabilityReport> perm;
  auto perm_fact = [&](bool second) -> Fact {
    if (!lattice) return inconclusive(too_big);
    if (!perm) perm = permutability(*lattice);
    Fact f = from_bool(second ? perm->perm2 : perm->perm3);
    const auto& fail = second ? perm->perm2_failure : perm->perm3_failure;
    if (fail) {
      f.witness = {{"alpha", blocks_json((*lattice)[fail->alpha])},
                   {"beta", blocks_json((*lattice)[fail->beta])},
                   {"pair", {fail->a, fail->b}}};
    }
    return f;
  };
  timed("perm2", [&] { return perm_fact(true); });
  timed("perm3", [&] { return perm_fact(false); });
  auto law_fact = [&](bool modular) -> Fact {
    if (!lattice) return inconclusive(too_big);
    auto v = modular ? modular_violation(*lattice)
                     : distributive_violation(*lattice);
    Fact f = from_bool(!v);
    if (v) {
      Json triple = Json::array();
      for (auto i : *v) triple.push_back(blocks_json((*lattice)[i]));
      f.witness = {{"triple", triple}};
    }
    return f;
  };
  timed("modular", [&] { return law_fact(true); });
  timed("distributive", [&] { return law_fact(false); });

  for (const auto& c : kCombos) {
    for (const auto& l : kLemmaFacts) {
      timed(lemma_fact_name(l.prefix, c.suffix), [&] {
        return from_verdict(check_lemma(alg, l.kind, c.classes, budget));
      });
    }
  }
  timed("majority_inequality", [&] {
    return from_verdict(check_majority_inequality(alg, kMajorityClass, budget));
  });
  for (const auto& p : kPropertyFacts) {
    timed(std::string(p.fact), [&] {
      return from_verdict(check_property(alg, p.property, budget));
    });
  }
  return fv;
}

const std::vector<LedgerEntry>& implication_ledger() {
  static const std::vector<LedgerEntry> ledger = make_ledger();
  return ledger;
}

const std::vector<VarietyNote>& variety_level_notes() {
  static const std::vector<VarietyNote> notes = make_notes();
  return notes;
}

LedgerResult verify_ledger(const FiniteAlgebra& alg, const FactVector& fv) {
  LedgerResult res;
  for (const auto& e : implication_ledger()) {
    std::string worst = "vacuous";
    for (const auto& c : e.clauses) {
      auto o = evaluate(e.id, c, fv);
      if (o.violation) res.violations.push_back(std::move(*o.violation));
      if (outcome_rank(o.outcome) < outcome_rank(worst)) worst = o.outcome;
    }
    if (e.constructions) {
      auto check = [&](const char* what, const char* from,
                       const std::optional<TermSearchResult>& r) {
        if (r && !r->found()) {
          res.violations.push_back(
              {e.id, std::string(what) + " built from the " + from +
                         " witness does not verify",
               witnesses_to_json(*r)});
          worst = "violated";
        }
      };
      const auto& terms = fv.terms;
      if (auto p = terms.find("pixley"); p != terms.end() && p->second.found()) {
        check("Mal'tsev term", "Pixley", maltsev_from_pixley(alg, p->second));
        check("majority term", "Pixley", majority_from_pixley(alg, p->second));
      }
      if (auto m = terms.find("maltsev");
          m != terms.end() && m->second.found()) {
        check("quaternary terms", "Mal'tsev", pq_from_maltsev(alg, m->second));
      }
    }
    res.outcomes[e.id] = worst;
  }
  return res;
}

std::vector<Violation> check_invariants(const FiniteAlgebra& alg,
                                        const FactVector& fv,
                                        std::size_t budget) {
  std::vector<Violation> out;
  auto flag = [&](std::string id, std::string detail, Json cx = nullptr) {
    out.push_back({std::move(id), std::move(detail), std::move(cx)});
  };

  // (DD) and (PP) with a one-element middle factor.
  const FiniteAlgebra one = trivial_like(alg);
  auto a1 = [&](const char* id, const PropertyVerdict& v, const char* other) {
    const Truth t = fv.truth(other);
    if (!v.exhaustive || (t != Truth::True && t != Truth::False)) return;
    if (v.holds != (t == Truth::True)) {
      flag(id, std::string("A = 1 instance ") + std::string(v.status()) +
                   " but " + other + " " + std::string(truth_word(t)));
    }
  };
  a1("INV-DD-A1", check_dd(alg, one, alg, budget), "difunctional_all");
  a1("INV-PP-A1", check_pp(alg, one, alg, budget), "ppoppo");

  // Element and relational forms.
  auto stored_ternary = [&](const char* fact) -> std::optional<TernaryRelView> {
    const Fact& f = fv.at(fact);
    if (f.witness.is_null()) return std::nullopt;
    const auto cx = counterexample_from_json(f.witness);
    const auto& r = cx.relations.front();
    return TernaryRelView(r.relation, r.x_size, r.a_size);
  };
  if (auto d = stored_ternary("dd"); d && dd_relational(*d)) {
    flag("INV-DD-forms", "stored dd counterexample passes the relational form",
         fv.at("dd").witness);
  }
  if (auto p = stored_ternary("pp"); p && pp_relational(*p)) {
    flag("INV-PP-forms", "stored pp counterexample passes the relational form",
         fv.at("pp").witness);
  }
  if (alg.size() <= 3) {
    for (const auto& d : enumerate_ternary_relations(alg, alg, alg, budget)
                             .relations) {
      if (!dd_violation(d) != dd_relational(d)) {
        flag("INV-DD-forms", "element and relational forms disagree",
             relation_to_json(d.relation()));
      }
      if (!pp_violation(d) != pp_relational(d)) {
        flag("INV-PP-forms", "element and relational forms disagree",
             relation_to_json(d.relation()));
      }
    }
  }
  if (alg.size() <= 4) {
    for (const auto& p :
         enumerate_relations(alg, RelClass::AllCompatible, budget).relations) {
      if (!difunctional_violation(p) != is_difunctional(p)) {
        flag("INV-DD-forms", "difunctional forms disagree",
             relation_to_json(p));
      }
      if (!ppoppo_violation(p) != ppoppo_relational(p)) {
        flag("INV-PP-forms", "PP°PP° forms disagree", relation_to_json(p));
      }
    }
  }

  if (alg.size() <= kMaxLatticeCarrier) {
    const CongLattice l(alg);
    const std::size_t m = l.size();
    // Lemma forms on congruence triples, when there are not too many.
    if (m * m * m <= 200000) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          for (std::size_t k = 0; k < m; ++k) {
            const BinRel& r = l[i].relation();
            const BinRel& s = l[j].relation();
            const BinRel& t = l[k].relation();
            const bool side = meet(r, s).subset_of(t);
            for (const auto& lf : kLemmaFacts) {
              if (!side) continue;
              if (!diagram_violation(lf.kind, r, s, t) !=
                  relational_inequality(alg, lf.kind, r, s, t)) {
                flag("INV-LEMMA-forms",
                     std::string(to_token(lf.kind)) +
                         " forms disagree on a congruence triple",
                     Json{blocks_json(l[i]), blocks_json(l[j]),
                          blocks_json(l[k])});
              }
            }
            if (!diagram_violation(LemmaKind::MajorityInequality, r, s, t) !=
                relational_inequality(alg, LemmaKind::MajorityInequality, r,
                                      s, t)) {
              flag("INV-LEMMA-forms", "majority forms disagree",
                   Json{blocks_json(l[i]), blocks_json(l[j]),
                        blocks_json(l[k])});
            }
          }
        }
      }
    }
    // Joins against the equivalence closure, and the permutable shapes.
    const bool p2 = fv.truth("perm2") == Truth::True;
    const bool p3 = fv.truth("perm3") == Truth::True;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        const BinRel& x = l[a].relation();
        const BinRel& y = l[b].relation();
        const BinRel& j = l[l.join(a, b)].relation();
        const Json pair = {blocks_json(l[a]), blocks_json(l[b])};
        if (j != equiv_close(join_raw(x, y))) {
          flag("INV-JOIN", "join is not the generated equivalence", pair);
        }
        if (p2 && j != compose(x, y)) {
          flag("INV-JOIN", "perm2 holds but the join is not αβ", pair);
        }
        if (p3 && j != compose(x, compose(y, x))) {
          flag("INV-JOIN", "perm3 holds but the join is not αβα", pair);
        }
      }
    }
  }

  // Every stored counterexample and term witness replays.
  for (const auto& [name, f] : fv.facts) {
    if (f.status == "fails" && !f.witness.is_null() &&
        f.witness.contains("check") && !replay_fact(alg, name, f)) {
      flag("INV-REPLAY", name + " counterexample does not re-verify",
           f.witness);
    }
  }
  for (const auto& t : kTermFacts) {
    const auto& r = fv.terms.at(std::string(t.fact));
    if (r.found() && !verify_witnesses(alg, *named_system(t.kind), r)) {
      flag("INV-REPLAY", std::string(t.fact) + " witness does not verify",
           witnesses_to_json(r));
    }
  }
  return out;
}

std::vector<Violation> compare_fixture(const FiniteAlgebra& alg,
                                       const FactVector& fv,
                                       const Json& fixture) {
  std::vector<Violation> out;
  if (fixture.value("size", std::size_t{0}) != alg.size()) {
    out.push_back({"FIXTURE", "carrier size differs from the fixture", nullptr});
    return out;
  }
  const Json facts = fixture.value("facts", Json::object());
  for (const auto& [name, f] : fv.facts) {
    auto it = facts.find(name);
    if (it == facts.end()) {
      out.push_back({"FIXTURE", name + " is missing from the fixture", nullptr});
      continue;
    }
    const std::string expected = it->value("status", "");
    if (expected != f.status) {
      out.push_back({"FIXTURE",
                     name + ": expected " + expected + ", got " + f.status,
                     f.witness});
    }
  }
  for (const auto& blocks : fixture.value("congruences", Json::array())) {
    std::vector<std::size_t> block_of(alg.size(), alg.size());
    bool partition = true;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (const auto& e : blocks[b]) {
        const auto v = e.get<std::size_t>();
        if (v >= alg.size() || block_of[v] != alg.size()) {
          partition = false;
        } else {
          block_of[v] = b;
        }
      }
    }
    partition = partition && std::find(block_of.begin(), block_of.end(),
                                       alg.size()) == block_of.end();
    if (!partition) {
      out.push_back({"COMPAT", "fixture congruence is not a partition", blocks});
      continue;
    }
    const Congruence c = Congruence::from_blocks(block_of);
    if (!is_compatible(alg, c.relation())) {
      out.push_back({"COMPAT",
                     "fixture congruence is not compatible with the operations",
                     blocks});
    }
  }
  return out;
}

Report verify_algebra(const FiniteAlgebra& alg, std::size_t budget,
                      const Json* fixture) {
  Report r;
  r.facts = compute_facts(alg, budget);
  r.ledger = verify_ledger(alg, r.facts);
  r.violations = r.ledger.violations;
  auto inv = check_invariants(alg, r.facts, budget);
  r.violations.insert(r.violations.end(), inv.begin(), inv.end());
  if (fixture != nullptr) {
    auto fx = compare_fixture(alg, r.facts, *fixture);
    r.violations.insert(r.violations.end(), fx.begin(), fx.end());
  }
  return r;
}

Json report_to_json(const Report& r, bool timings) {
  Json facts = Json::object();
  for (const auto& [name, f] : r.facts.facts) {
    Json jf = {{"status", f.status}, {"exhaustive", f.exhaustive}};
    switch (f.truth()) {
      case Truth::True:
      case Truth::TrueOnSample: jf["value"] = true; break;
      case Truth::False: jf["value"] = false; break;
      case Truth::Unknown: jf["value"] = nullptr; break;
    }
    if (!f.witness.is_null()) jf["witness"] = f.witness;
    if (timings) jf["runtime_ms"] = f.runtime_ms;
    facts[name] = std::move(jf);
  }
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json jv = {{"ledger_id", v.ledger_id}, {"detail", v.detail}};
    if (!v.counterexample.is_null()) jv["counterexample"] = v.counterexample;
    violations.push_back(std::move(jv));
  }
  Json notes = Json::array();
  for (const auto& n : variety_level_notes()) {
    notes.push_back({{"id", n.id},
                     {"statement", n.statement},
                     {"status", "variety-level, not per-algebra checkable"},
                     {"probe", n.probe}});
  }
  return {{"algebra", r.facts.algebra},
          {"size", r.facts.size},
          {"facts", facts},
          {"ledger", r.ledger.outcomes},
          {"violations", violations},
          {"variety_level", notes},
          {"congruences", r.facts.congruences}};
}

}  // namespace ualg
