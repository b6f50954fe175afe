#include "ualg/lemmas.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace ualg {

namespace {

enum Role { kR = 0, kS = 1, kT = 2 };

struct Edge {
  Role role;
  int from;
  int to;
};

struct Schema {
  std::span<const std::string_view> vars;
  std::span<const Edge> premises;
  // Conclusion pair for the three lemmas; majority uses (0, 2).
  int cu;
  int cv;
};

constexpr std::string_view kVarsXYUV[] = {"x", "y", "u", "v"};
constexpr std::string_view kVarsUYV[] = {"u", "y", "v"};
constexpr std::string_view kVarsXYZ[] = {"x", "y", "z"};

constexpr Edge kShifting[] = {
    {kR, 0, 1}, {kT, 0, 1}, {kS, 0, 2}, {kS, 1, 3}, {kR, 2, 3}};
constexpr Edge kTriangular[] = {{kT, 0, 1}, {kS, 1, 2}, {kR, 0, 2}};
constexpr Edge kTrapezoid[] = {{kT, 0, 1}, {kS, 0, 2}, {kS, 1, 3}, {kR, 2, 3}};
constexpr Edge kMajority[] = {{kR, 0, 2}, {kT, 0, 1}, {kS, 1, 2}};

Schema schema(LemmaKind k) {
  switch (k) {
    case LemmaKind::Shifting: return {kVarsXYUV, kShifting, 2, 3};
    case LemmaKind::Triangular: return {kVarsUYV, kTriangular, 0, 2};
    case LemmaKind::Trapezoid: return {kVarsXYUV, kTrapezoid, 2, 3};
    case LemmaKind::MajorityInequality: return {kVarsXYZ, kMajority, 0, 2};
  }
  throw std::logic_error("unknown lemma kind");
}

bool premises_hold(const Schema& sc, std::span<const Element> a,
                   const std::array<const BinRel*, 3>& rel) {
  for (const auto& e : sc.premises) {
    if (!rel[e.role]->test(a[e.from], a[e.to])) return false;
  }
  return true;
}

bool conclusion_fails(LemmaKind k, const Schema& sc, std::span<const Element> a,
                      const std::array<const BinRel*, 3>& rel) {
  const Element p = a[sc.cu];
  const Element q = a[sc.cv];
  if (k != LemmaKind::MajorityInequality) return !rel[kT]->test(p, q);
  const BinRel& r = *rel[kR];
  for (Element w = 0; w < r.cod_size(); ++w) {
    if (r.test(p, w) && rel[kT]->test(p, w) && r.test(w, q) &&
        rel[kS]->test(w, q)) {
      return false;
    }
  }
  return true;
}

// Advances `a` as an odometer over {0..n-1}^k; false after the last tuple.
bool next_assignment(std::vector<Element>& a, std::size_t n) {
  std::size_t pos = a.size();
  while (pos-- > 0) {
    if (++a[pos] < n) return true;
    a[pos] = 0;
  }
  return false;
}

void require_square(const FiniteAlgebra& alg, const BinRel& r,
                    std::string_view name) {
  if (r.dom_size() != alg.size() || r.cod_size() != alg.size()) {
    throw std::invalid_argument(std::string(name) +
                                " is not a relation on the carrier");
  }
}

// Candidate relations for one role. Intersection-closed classes contribute
// only the least member containing the required pairs: every premise and
// the side condition are monotone, and failure of the conclusion is
// antitone, so a counterexample exists iff one exists with least members.
class RoleSource {
 public:
  RoleSource(const FiniteAlgebra& alg, RelClass c, std::size_t budget,
             const RelationFamily* family)
      : alg_(alg), cls_(c), budget_(budget), family_(family) {}

  bool closed() const { return family_ == nullptr; }

  const std::optional<BinRel>& least(std::vector<Pair> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    auto it = cache_.find(pairs);
    if (it == cache_.end()) {
      auto r = close_in_class(alg_, cls_, pairs, budget_);
      it = cache_.emplace(std::move(pairs), std::move(r)).first;
    }
    return it->second;
  }

  const RelationFamily& family() const { return *family_; }

 private:
  const FiniteAlgebra& alg_;
  RelClass cls_;
  std::size_t budget_;
  const RelationFamily* family_;
  std::map<std::vector<Pair>, std::optional<BinRel>> cache_;
};

bool contains_all(const BinRel& r, std::span<const Pair> pairs) {
  for (auto [a, b] : pairs) {
    if (!r.test(a, b)) return false;
  }
  return true;
}

struct Pick {
  const BinRel* rel;
  const BinRel* witness;
};

LemmaVerdict run_check(const FiniteAlgebra& alg, LemmaKind k,
                       LemmaClasses classes, std::size_t budget) {
  const Schema sc = schema(k);
  const bool side = k != LemmaKind::MajorityInequality;
  const std::size_t n = alg.size();
  const std::array<RelClass, 3> cls = {classes.r, classes.s, classes.t};

  std::map<RelClass, RelationFamily> families;
  LemmaVerdict verdict;
  for (auto c : cls) {
    if (is_intersection_closed(c) || families.contains(c)) continue;
    auto fam = enumerate_relations(alg, c, budget);
    verdict.exhaustive = verdict.exhaustive && fam.exhaustive;
    families.emplace(c, std::move(fam));
  }
  std::array<RoleSource, 3> src = {
      RoleSource(alg, cls[0], budget,
                 families.contains(cls[0]) ? &families.at(cls[0]) : nullptr),
      RoleSource(alg, cls[1], budget,
                 families.contains(cls[1]) ? &families.at(cls[1]) : nullptr),
      RoleSource(alg, cls[2], budget,
                 families.contains(cls[2]) ? &families.at(cls[2]) : nullptr)};

  auto candidates = [&](Role role, const std::vector<Pair>& need,
                        const BinRel* below) {
    std::vector<Pick> out;
    auto& s = src[role];
    if (s.closed()) {
      std::vector<Pair> gens = need;
      if (below != nullptr) {
        const auto extra = below->pairs();
        gens.insert(gens.end(), extra.begin(), extra.end());
      }
      const auto& r = s.least(std::move(gens));
      if (r) {
        out.push_back({&*r, nullptr});
      } else {
        verdict.exhaustive = false;
      }
      return out;
    }
    const auto& fam = s.family();
    for (std::size_t i = 0; i < fam.relations.size(); ++i) {
      const BinRel& r = fam.relations[i];
      if (!contains_all(r, need)) continue;
      if (below != nullptr && !below->subset_of(r)) continue;
      const BinRel* w = i < fam.witnesses.size() ? &fam.witnesses[i] : nullptr;
      out.push_back({&r, w});
    }
    return out;
  };

  std::vector<Element> a(sc.vars.size(), 0);
  do {
    std::array<std::vector<Pair>, 3> need;
    for (const auto& e : sc.premises) {
      need[e.role].emplace_back(a[e.from], a[e.to]);
    }
    const auto rs = candidates(kR, need[kR], nullptr);
    const auto ss = candidates(kS, need[kS], nullptr);
    for (const auto& r : rs) {
      for (const auto& s : ss) {
        std::optional<BinRel> m;
        if (side) m = meet(*r.rel, *s.rel);
        const auto ts = candidates(kT, need[kT], m ? &*m : nullptr);
        for (const auto& t : ts) {
          const std::array<const BinRel*, 3> rel = {r.rel, s.rel, t.rel};
          if (!conclusion_fails(k, sc, a, rel)) continue;
          Counterexample cx;
          cx.check = std::string(to_token(k));
          const std::array<Pick, 3> picks = {r, s, t};
          constexpr std::string_view names[] = {"R", "S", "T"};
          for (int i = 0; i < 3; ++i) {
            NamedRelation nr{std::string(names[i]), *picks[i].rel, {}, 0, 0};
            if (picks[i].witness != nullptr) nr.witness = *picks[i].witness;
            cx.relations.push_back(std::move(nr));
          }
          for (std::size_t i = 0; i < a.size(); ++i) {
            cx.elements.push_back({std::string(sc.vars[i]), a[i]});
          }
          verdict.holds = false;
          verdict.counterexample = std::move(cx);
          return verdict;
        }
      }
    }
  } while (next_assignment(a, n));
  return verdict;
}

}  // namespace

std::string_view to_token(LemmaKind k) noexcept {
  switch (k) {
    case LemmaKind::Shifting: return "shifting";
    case LemmaKind::Triangular: return "triangular";
    case LemmaKind::Trapezoid: return "trapezoid";
    case LemmaKind::MajorityInequality: return "majority";
  }
  return "?";
}

std::optional<LemmaKind> parse_lemma_kind(std::string_view token) noexcept {
  for (auto k : {LemmaKind::Shifting, LemmaKind::Triangular,
                 LemmaKind::Trapezoid, LemmaKind::MajorityInequality}) {
    if (to_token(k) == token) return k;
  }
  return std::nullopt;
}

std::span<const std::string_view> lemma_variables(LemmaKind k) noexcept {
  switch (k) {
    case LemmaKind::Triangular: return kVarsUYV;
    case LemmaKind::MajorityInequality: return kVarsXYZ;
    default: return kVarsXYUV;
  }
}

std::optional<std::vector<Element>> diagram_violation(LemmaKind k,
                                                      const BinRel& r,
                                                      const BinRel& s,
                                                      const BinRel& t) {
  const std::size_t n = r.dom_size();
  for (const BinRel* x : {&r, &s, &t}) {
    if (x->dom_size() != n || x->cod_size() != n) {
      throw std::invalid_argument("relations must share one square carrier");
    }
  }
  const Schema sc = schema(k);
  const std::array<const BinRel*, 3> rel = {&r, &s, &t};
  std::vector<Element> a(sc.vars.size(), 0);
  do {
    if (premises_hold(sc, a, rel) && conclusion_fails(k, sc, a, rel)) return a;
  } while (next_assignment(a, n));
  return std::nullopt;
}

bool relational_inequality(const FiniteAlgebra& alg, LemmaKind k,
                           const BinRel& r, const BinRel& s, const BinRel& t) {
  require_square(alg, r, "R");
  require_square(alg, s, "S");
  require_square(alg, t, "T");
  if (k != LemmaKind::MajorityInequality && !meet(r, s).subset_of(t)) {
    throw std::invalid_argument("side condition R meet S <= T fails");
  }
  switch (k) {
    case LemmaKind::Shifting:
      return meet(r, compose(s, compose(meet(r, t), s))).subset_of(t);
    case LemmaKind::Triangular: return meet(r, compose(s, t)).subset_of(t);
    case LemmaKind::Trapezoid:
      return meet(r, compose(s, compose(t, s))).subset_of(t);
    case LemmaKind::MajorityInequality:
      return meet(r, compose(s, t))
          .subset_of(compose(meet(r, s), meet(r, t)));
  }
  return false;
}

LemmaVerdict check_lemma(const FiniteAlgebra& alg, LemmaKind k,
                         LemmaClasses classes, std::size_t budget) {
  return run_check(alg, k, classes, budget);
}

LemmaVerdict check_majority_inequality(const FiniteAlgebra& alg, RelClass c,
                                       std::size_t budget) {
  return run_check(alg, LemmaKind::MajorityInequality, {c, c, c}, budget);
}

bool reverify_lemma_counterexample(const FiniteAlgebra& alg, LemmaKind k,
                                   LemmaClasses classes,
                                   const Counterexample& cx) {
  const NamedRelation* nr[3] = {cx.relation("R"), cx.relation("S"),
                                cx.relation("T")};
  const RelClass cls[3] = {classes.r, classes.s, classes.t};
  for (int i = 0; i < 3; ++i) {
    if (nr[i] == nullptr) return false;
    const BinRel* w = nr[i]->witness ? &*nr[i]->witness : nullptr;
    if (!in_class(alg, cls[i], nr[i]->relation, w)) return false;
  }
  const BinRel& r = nr[0]->relation;
  const BinRel& s = nr[1]->relation;
  const BinRel& t = nr[2]->relation;
  if (k != LemmaKind::MajorityInequality && !meet(r, s).subset_of(t)) {
    return false;
  }
  const Schema sc = schema(k);
  std::vector<Element> a;
  for (auto name : sc.vars) {
    auto v = cx.element(name);
    if (!v || *v >= alg.size()) return false;
    a.push_back(*v);
  }
  const std::array<const BinRel*, 3> rel = {&r, &s, &t};
  return premises_hold(sc, a, rel) && conclusion_fails(k, sc, a, rel);
}

}  // namespace ualg
