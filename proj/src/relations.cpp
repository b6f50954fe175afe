#include "ualg/relations.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "ualg/congruence.hpp"

namespace ualg {

std::string_view to_token(RelClass c) noexcept {
  switch (c) {
    case RelClass::Congruence: return "cong";
    case RelClass::ReflexiveCompatible: return "refl";
    case RelClass::ReflexivePositiveCompatible: return "pos";
    case RelClass::EquivalenceCompatible: return "equiv";
    case RelClass::AllCompatible: return "all";
  }
  return "?";
}

std::optional<RelClass> parse_rel_class(std::string_view token) noexcept {
  for (auto c : {RelClass::Congruence, RelClass::ReflexiveCompatible,
                 RelClass::ReflexivePositiveCompatible,
                 RelClass::EquivalenceCompatible, RelClass::AllCompatible}) {
    if (to_token(c) == token) return c;
  }
  return std::nullopt;
}

bool is_intersection_closed(RelClass c) noexcept {
  return c != RelClass::ReflexivePositiveCompatible;
}

bool is_compatible(const FiniteAlgebra& dom, const FiniteAlgebra& cod,
                   const BinRel& r) {
  if (!dom.same_signature(cod)) {
    throw StructureError("signature mismatch between '" + dom.name() +
                         "' and '" + cod.name() + "'");
  }
  if (r.dom_size() != dom.size() || r.cod_size() != cod.size()) {
    throw std::invalid_argument("relation sorts do not match the carriers");
  }
  const auto pairs = r.pairs();
  std::vector<std::size_t> idx;
  for (const auto& f : dom.operations()) {
    const auto& g = cod.op(f.name());
    const std::size_t k = f.arity();
    if (k == 0) {
      if (!r.test(f.at(0), g.at(0))) return false;
      continue;
    }
    if (pairs.empty()) continue;
    idx.assign(k, 0);
    while (true) {
      std::size_t fi = 0;
      std::size_t gi = 0;
      for (std::size_t pos = 0; pos < k; ++pos) {
        fi = fi * dom.size() + pairs[idx[pos]].first;
        gi = gi * cod.size() + pairs[idx[pos]].second;
      }
      if (!r.test(f.at(fi), g.at(gi))) return false;
      std::size_t pos = k;
      while (pos-- > 0) {
        if (++idx[pos] < pairs.size()) break;
        idx[pos] = 0;
      }
      if (pos == static_cast<std::size_t>(-1)) break;
    }
  }
  return true;
}

bool is_positive_setlevel(const BinRel& e) {
  if (!e.is_square() || !e.is_symmetric()) return false;
  for (std::size_t x = 0; x < e.dom_size(); ++x) {
    for (std::size_t y = 0; y < e.cod_size(); ++y) {
      if (e.test(x, y) && !(e.test(x, x) && e.test(y, y))) return false;
    }
  }
  return true;
}

bool in_class(const FiniteAlgebra& alg, RelClass c, const BinRel& r,
              const BinRel* positive_witness) {
  if (r.dom_size() != alg.size() || r.cod_size() != alg.size()) return false;
  if (!is_compatible(alg, r)) return false;
  switch (c) {
    case RelClass::Congruence:
    case RelClass::EquivalenceCompatible: return r.is_equivalence();
    case RelClass::ReflexiveCompatible: return r.is_reflexive();
    case RelClass::AllCompatible: return true;
    case RelClass::ReflexivePositiveCompatible:
      return r.is_reflexive() && positive_witness != nullptr &&
             positive_witness->dom_size() == alg.size() &&
             positive_witness->cod_size() == alg.size() &&
             is_compatible(alg, *positive_witness) &&
             compose(converse(*positive_witness), *positive_witness) == r;
  }
  return false;
}

std::optional<BinRel> generated_relation(const FiniteAlgebra& dom,
                                         const FiniteAlgebra& cod,
                                         std::span<const Pair> pairs,
                                         std::size_t budget) {
  const FiniteAlgebra* factors[] = {&dom, &cod};
  std::vector<std::vector<Element>> gens;
  gens.reserve(pairs.size());
  for (auto [a, b] : pairs) gens.push_back({a, b});
  auto sp = generate_subproduct(factors, gens, budget);
  if (!sp) return std::nullopt;
  BinRel r(dom.size(), cod.size());
  for (std::size_t i = 0; i < sp->size(); ++i) {
    auto v = sp->at(i);
    r.set(v[0], v[1]);
  }
  return r;
}

std::optional<BinRel> close_in_class(const FiniteAlgebra& alg, RelClass c,
                                     std::span<const Pair> pairs,
                                     std::size_t budget) {
  switch (c) {
    case RelClass::Congruence:
    case RelClass::EquivalenceCompatible:
      return congruence_generated(alg, pairs).relation();
    case RelClass::ReflexiveCompatible: {
      std::vector<Pair> gens(pairs.begin(), pairs.end());
      for (Element i = 0; i < alg.size(); ++i) gens.emplace_back(i, i);
      return generated_relation(alg, alg, gens, budget);
    }
    case RelClass::AllCompatible:
      return generated_relation(alg, alg, pairs, budget);
    case RelClass::ReflexivePositiveCompatible: break;
  }
  throw std::invalid_argument("close_in_class: class '" +
                              std::string(to_token(c)) +
                              "' is not closed under intersection");
}

namespace {

bool subsets_exhaustive(std::size_t n, std::size_t budget) {
  const std::size_t bits = n * n;
  return bits <= 20 && (std::size_t{1} << bits) <= budget;
}

std::vector<BinRel> sorted_unique(std::unordered_set<BinRel, BinRelHash> set) {
  std::vector<BinRel> out(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Closures of every generator set of at most two pairs.
std::vector<BinRel> sampled_closures(const FiniteAlgebra& alg, RelClass c,
                                     std::size_t budget) {
  const std::size_t n = alg.size();
  std::vector<Pair> all;
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) all.emplace_back(a, b);
  }
  std::unordered_set<BinRel, BinRelHash> found;
  auto add = [&](std::span<const Pair> gens) {
    if (auto r = close_in_class(alg, c, gens, budget)) found.insert(*r);
  };
  add({});
  for (std::size_t i = 0; i < all.size(); ++i) {
    add(std::span<const Pair>(&all[i], 1));
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const Pair two[] = {all[i], all[j]};
      add(two);
    }
  }
  return sorted_unique(std::move(found));
}

std::vector<BinRel> compatible_subsets(const FiniteAlgebra& alg,
                                       bool reflexive) {
  const std::size_t n = alg.size();
  std::vector<Pair> free_pairs;
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (!reflexive || a != b) free_pairs.emplace_back(a, b);
    }
  }
  std::vector<BinRel> out;
  const std::size_t total = std::size_t{1} << free_pairs.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    BinRel r = reflexive ? BinRel::identity(n) : BinRel(n, n);
    for (std::size_t i = 0; i < free_pairs.size(); ++i) {
      if (mask >> i & 1u) r.set(free_pairs[i].first, free_pairs[i].second);
    }
    if (is_compatible(alg, r)) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RelationFamily enumerate_relations(const FiniteAlgebra& alg, RelClass c,
                                   std::size_t budget) {
  RelationFamily fam{c, {}, {}, true};
  const std::size_t n = alg.size();
  switch (c) {
    case RelClass::Congruence:
    case RelClass::EquivalenceCompatible: {
      if (n <= kMaxLatticeCarrier) {
        for (const auto& cg : all_congruences(alg)) {
          fam.relations.push_back(cg.relation());
        }
        std::sort(fam.relations.begin(), fam.relations.end());
      } else {
        fam.relations = sampled_closures(alg, c, budget);
        fam.exhaustive = false;
      }
      break;
    }
    case RelClass::ReflexiveCompatible:
    case RelClass::AllCompatible: {
      const bool reflexive = c == RelClass::ReflexiveCompatible;
      if (subsets_exhaustive(n, budget)) {
        fam.relations = compatible_subsets(alg, reflexive);
      } else {
        fam.relations = sampled_closures(alg, c, budget);
        fam.exhaustive = false;
      }
      break;
    }
    case RelClass::ReflexivePositiveCompatible: {
      auto base = enumerate_relations(alg, RelClass::AllCompatible, budget);
      std::map<BinRel, BinRel> first_witness;
      for (const auto& r : base.relations) {
        BinRel e = compose(converse(r), r);
        if (e.is_reflexive()) first_witness.try_emplace(std::move(e), r);
      }
      for (auto& [e, w] : first_witness) {
        fam.relations.push_back(e);
        fam.witnesses.push_back(w);
      }
      fam.exhaustive = base.exhaustive;
      break;
    }
  }
  return fam;
}

}  // namespace ualg
