#include "ualg/terms.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace ualg {

namespace {

std::size_t variable_count(const Pattern& a, const Pattern& b,
                           std::size_t extra = 0) {
  std::size_t m = extra;
  for (auto v : a) m = std::max(m, v);
  for (auto v : b) m = std::max(m, v);
  return m + 1;
}

// Calls f(assignment) for every assignment of carrier elements to `vars`
// variables, in lexicographic order.
template <typename F>
void for_each_assignment(std::size_t n, std::size_t vars, F&& f) {
  std::vector<Element> a(vars, 0);
  while (true) {
    f(std::as_const(a));
    std::size_t pos = vars;
    while (pos-- > 0) {
      if (++a[pos] < n) break;
      a[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) return;
  }
}

std::vector<Element> instantiate(const Pattern& p,
                                 const std::vector<Element>& a) {
  std::vector<Element> out;
  out.reserve(p.size());
  for (auto v : p) out.push_back(a[v]);
  return out;
}

void check_shape(const IdentitySystem& sys) {
  auto check = [&](std::size_t u, const Pattern& p) {
    if (u >= sys.unknowns.size()) {
      throw std::invalid_argument("constraint names an unknown unknown");
    }
    if (p.size() != sys.unknowns[u].arity) {
      throw std::invalid_argument("pattern length differs from the arity of " +
                                  sys.unknowns[u].name);
    }
  };
  for (const auto& c : sys.fixed) check(c.unknown, c.args);
  for (const auto& c : sys.linked) {
    check(c.first, c.first_args);
    check(c.second, c.second_args);
  }
}

// Sorted, deduplicated constrained tuples of each unknown.
std::vector<std::vector<std::vector<Element>>> constraint_coords(
    const IdentitySystem& sys, std::size_t n) {
  check_shape(sys);
  std::vector<std::set<std::vector<Element>>> sets(sys.unknowns.size());
  for (const auto& c : sys.fixed) {
    for_each_assignment(n, variable_count(c.args, {}, c.value),
                        [&](const std::vector<Element>& a) {
                          sets[c.unknown].insert(instantiate(c.args, a));
                        });
  }
  for (const auto& c : sys.linked) {
    for_each_assignment(n, variable_count(c.first_args, c.second_args),
                        [&](const std::vector<Element>& a) {
                          sets[c.first].insert(instantiate(c.first_args, a));
                          sets[c.second].insert(instantiate(c.second_args, a));
                        });
  }
  std::vector<std::vector<std::vector<Element>>> out;
  for (auto& s : sets) out.emplace_back(s.begin(), s.end());
  return out;
}

std::size_t coord_index(const std::vector<std::vector<Element>>& coords,
                        const std::vector<Element>& t) {
  auto it = std::lower_bound(coords.begin(), coords.end(), t);
  return static_cast<std::size_t>(it - coords.begin());
}

// Coordinate i of unknown u must equal coordinate j of unknown w.
struct Equality {
  std::size_t u;
  std::size_t i;
  std::size_t w;
  std::size_t j;
  auto operator<=>(const Equality&) const = default;
};

std::vector<std::size_t> generator_vars(std::size_t arity) {
  std::vector<std::size_t> v(arity);
  for (std::size_t i = 0; i < arity; ++i) v[i] = i;
  return v;
}

}  // namespace

std::optional<Element> TermWitness::value_at(
    std::span<const Element> args) const {
  const std::vector<Element> key(args.begin(), args.end());
  auto it = std::lower_bound(coords.begin(), coords.end(), key);
  if (it == coords.end() || *it != key) return std::nullopt;
  return values[static_cast<std::size_t>(it - coords.begin())];
}

std::string_view to_token(SearchStatus s) noexcept {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NotFound: return "not-found";
    case SearchStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

TermSearchResult solve_identity_system(const FiniteAlgebra& alg,
                                       const IdentitySystem& sys,
                                       std::size_t budget) {
  const std::size_t n = alg.size();
  const std::size_t count = sys.unknowns.size();
  const auto coords = constraint_coords(sys, n);
  TermSearchResult res;

  // Required values from the fixed constraints.
  std::vector<std::vector<std::optional<Element>>> required(count);
  for (std::size_t u = 0; u < count; ++u) required[u].resize(coords[u].size());
  for (const auto& c : sys.fixed) {
    bool conflict = false;
    for_each_assignment(
        n, variable_count(c.args, {}, c.value),
        [&](const std::vector<Element>& a) {
          const auto t = instantiate(c.args, a);
          auto& slot = required[c.unknown][coord_index(coords[c.unknown], t)];
          if (slot && *slot != a[c.value]) conflict = true;
          slot = a[c.value];
        });
    if (conflict) {
      res.status = SearchStatus::NotFound;
      res.note = "conflicting required values for " +
                 sys.unknowns[c.unknown].name;
      return res;
    }
  }

  std::set<Equality> equalities;
  for (const auto& c : sys.linked) {
    for_each_assignment(
        n, variable_count(c.first_args, c.second_args),
        [&](const std::vector<Element>& a) {
          Equality e{c.first, coord_index(coords[c.first],
                                          instantiate(c.first_args, a)),
                     c.second, coord_index(coords[c.second],
                                           instantiate(c.second_args, a))};
          if (e.u > e.w || (e.u == e.w && e.i > e.j)) {
            std::swap(e.u, e.w);
            std::swap(e.i, e.j);
          }
          if (e.u != e.w || e.i != e.j) equalities.insert(e);
        });
  }

  // Closures of the projections, grown in lockstep. Elements meeting an
  // unknown's own constraints become candidates; each new candidate is
  // tried against the candidates found so far for the other unknowns.
  std::vector<std::optional<SubpowerClosure>> spaces(count);
  std::vector<std::size_t> seen(count, 0);
  std::vector<std::vector<std::size_t>> candidates(count);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> self_links(
      count);
  // links[u][w]: pairs (coordinate of u, coordinate of w) that must agree.
  std::vector<std::map<std::size_t,
                       std::vector<std::pair<std::size_t, std::size_t>>>>
      links(count);
  for (const auto& e : equalities) {
    if (e.u == e.w) {
      self_links[e.u].emplace_back(e.i, e.j);
    } else {
      links[e.u][e.w].emplace_back(e.i, e.j);
      links[e.w][e.u].emplace_back(e.j, e.i);
    }
  }
  // buckets[u][w]: candidates of u keyed by their values on links[u][w].
  std::vector<std::map<std::size_t,
                       std::unordered_map<std::string, std::vector<std::size_t>>>>
      buckets(count);

  for (std::size_t u = 0; u < count; ++u) {
    const std::size_t arity = sys.unknowns[u].arity;
    const std::size_t width = coords[u].size();
    if (width == 0) continue;
    std::vector<std::vector<Element>> gens(arity, std::vector<Element>(width));
    for (std::size_t c = 0; c < width; ++c) {
      for (std::size_t i = 0; i < arity; ++i) gens[i][c] = coords[u][c][i];
    }
    std::vector<const FiniteAlgebra*> factors(width, &alg);
    spaces[u].emplace(factors, gens, budget, true);
  }

  auto view = [&](std::size_t u, std::size_t idx) {
    return spaces[u]->elements().at(idx);
  };
  auto keep = [&](std::size_t u, std::size_t idx) {
    auto v = view(u, idx);
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (required[u][c] && v[c] != *required[u][c]) return false;
    }
    for (auto [i, j] : self_links[u]) {
      if (v[i] != v[j]) return false;
    }
    return true;
  };
  auto key_of = [&](std::size_t u, std::size_t idx, std::size_t w) {
    std::string key;
    for (const auto& link : links[u][w]) {
      key.push_back(static_cast<char>(view(u, idx)[link.first]));
    }
    return key;
  };

  // Extends `chosen` (unknown -> candidate index) to every unknown.
  std::vector<std::optional<std::size_t>> chosen(count);
  auto consistent = [&](std::size_t u, std::size_t idx) {
    for (const auto& [w, pairs] : links[u]) {
      if (!chosen[w]) continue;
      for (auto [i, j] : pairs) {
        if (view(u, idx)[i] != view(w, *chosen[w])[j]) return false;
      }
    }
    return true;
  };
  auto extend = [&](auto&& self) -> bool {
    std::optional<std::size_t> next;
    for (std::size_t u = 0; u < count && !next; ++u) {
      if (spaces[u] && !chosen[u]) next = u;
    }
    if (!next) return true;
    const std::size_t u = *next;
    // Use the bucket of an already chosen partner when there is one.
    const std::vector<std::size_t>* pool = &candidates[u];
    for (const auto& [w, pairs] : links[u]) {
      if (!chosen[w]) continue;
      std::string key;
      for (const auto& link : pairs) {
        key.push_back(static_cast<char>(view(w, *chosen[w])[link.second]));
      }
      auto& b = buckets[u][w];
      auto it = b.find(key);
      if (it == b.end()) return false;
      pool = &it->second;
      break;
    }
    for (std::size_t idx : *pool) {
      if (!consistent(u, idx)) continue;
      chosen[u] = idx;
      if (self(self)) return true;
    }
    chosen[u].reset();
    return false;
  };

  bool solved = std::none_of(spaces.begin(), spaces.end(),
                             [](const auto& sp) { return sp.has_value(); });
  bool open = true;
  while (!solved && open) {
    open = false;
    for (std::size_t u = 0; u < count && !solved; ++u) {
      if (!spaces[u]) continue;
      auto state = spaces[u]->state();
      if (seen[u] == spaces[u]->elements().size() &&
          state == SubpowerClosure::State::Open) {
        state = spaces[u]->step();
      }
      if (state == SubpowerClosure::State::OverBudget) {
        res.status = SearchStatus::Inconclusive;
        res.note = "closure for " + sys.unknowns[u].name +
                   " exceeds budget " + std::to_string(budget);
        return res;
      }
      if (state == SubpowerClosure::State::Open) open = true;
      const std::size_t size = spaces[u]->elements().size();
      for (; seen[u] < size && !solved; ++seen[u]) {
        const std::size_t idx = seen[u];
        if (!keep(u, idx)) continue;
        candidates[u].push_back(idx);
        for (const auto& [w, pairs] : links[u]) {
          buckets[u][w][key_of(u, idx, w)].push_back(idx);
        }
        std::fill(chosen.begin(), chosen.end(), std::nullopt);
        chosen[u] = idx;
        solved = extend(extend);
      }
      if (seen[u] < size) open = true;
    }
  }
  if (!solved) {
    res.status = SearchStatus::NotFound;
    for (std::size_t u = 0; u < count; ++u) {
      if (spaces[u] && candidates[u].empty()) {
        res.note = "no operation for " + sys.unknowns[u].name +
                   " meets its own constraints";
        return res;
      }
    }
    res.note = "no compatible choice for the linked unknowns";
    return res;
  }

  res.status = SearchStatus::Found;
  for (std::size_t u = 0; u < count; ++u) {
    const auto& unk = sys.unknowns[u];
    TermWitness w;
    w.arity = unk.arity;
    w.coords = coords[u];
    if (!spaces[u]) {
      if (unk.arity > 0) w.term = Term::variable(0);
    } else {
      const Subpower& sp = spaces[u]->elements();
      w.values = sp.vector_at(*chosen[u]);
      w.term = sp.term_for(*chosen[u], alg, generator_vars(unk.arity));
    }
    res.witnesses.emplace(unk.name, std::move(w));
  }
  return res;
}

bool verify_witnesses(const FiniteAlgebra& alg, const IdentitySystem& sys,
                      const TermSearchResult& res) {
  const std::size_t n = alg.size();
  std::vector<const TermWitness*> w;
  for (const auto& u : sys.unknowns) {
    auto it = res.witnesses.find(u.name);
    if (it == res.witnesses.end() || it->second.arity != u.arity) return false;
    if (it->second.coords.size() != it->second.values.size()) return false;
    w.push_back(&it->second);
  }
  bool ok = true;
  for (const auto& c : sys.fixed) {
    for_each_assignment(n, variable_count(c.args, {}, c.value),
                        [&](const std::vector<Element>& a) {
                          auto v = w[c.unknown]->value_at(instantiate(c.args, a));
                          ok = ok && v && *v == a[c.value];
                        });
  }
  for (const auto& c : sys.linked) {
    for_each_assignment(
        n, variable_count(c.first_args, c.second_args),
        [&](const std::vector<Element>& a) {
          auto v1 = w[c.first]->value_at(instantiate(c.first_args, a));
          auto v2 = w[c.second]->value_at(instantiate(c.second_args, a));
          ok = ok && v1 && v2 && *v1 == *v2;
        });
  }
  for (const auto* t : w) {
    if (!t->term) continue;
    try {
      validate_term(alg, *t->term);
      if (t->term->input_arity() > t->arity) return false;
      for (std::size_t c = 0; c < t->coords.size(); ++c) {
        if (eval_term(alg, *t->term, t->coords[c]) != t->values[c]) {
          return false;
        }
      }
    } catch (const StructureError&) {
      return false;
    }
  }
  return ok;
}

TermSearchResult witnesses_from_terms(const FiniteAlgebra& alg,
                                      const IdentitySystem& sys,
                                      const std::map<std::string, Term>& terms) {
  const auto coords = constraint_coords(sys, alg.size());
  TermSearchResult res;
  for (std::size_t u = 0; u < sys.unknowns.size(); ++u) {
    const auto& unk = sys.unknowns[u];
    auto it = terms.find(unk.name);
    if (it == terms.end()) {
      res.status = SearchStatus::NotFound;
      res.note = "no term for " + unk.name;
      return res;
    }
    TermWitness w;
    w.arity = unk.arity;
    w.coords = coords[u];
    w.term = it->second;
    for (const auto& c : coords[u]) {
      w.values.push_back(eval_term(alg, it->second, c));
    }
    res.witnesses.emplace(unk.name, std::move(w));
  }
  res.status = verify_witnesses(alg, sys, res) ? SearchStatus::Found
                                               : SearchStatus::NotFound;
  if (!res.found()) res.note = "derived terms do not satisfy " + sys.name;
  return res;
}

Term substitute(const Term& t, std::span<const Term> vars) {
  if (t.is_variable()) {
    if (t.index() >= vars.size()) {
      throw StructureError("substitution is missing variable x" +
                           std::to_string(t.index()));
    }
    return vars[t.index()];
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(substitute(a, vars));
  return Term::apply(t.op(), std::move(args));
}

namespace {

constexpr std::size_t kX = 0, kY = 1, kZ = 2;

}  // namespace

IdentitySystem maltsev_system() {
  return {"maltsev",
          {{"p", 3}},
          {{0, {kX, kY, kY}, kX}, {0, {kY, kY, kX}, kX}},
          {}};
}

IdentitySystem pixley_system() {
  return {"pixley",
          {{"p", 3}},
          {{0, {kX, kY, kY}, kX}, {0, {kX, kX, kY}, kY}, {0, {kX, kY, kX}, kX}},
          {}};
}

IdentitySystem majority_system() {
  return {"majority",
          {{"m", 3}},
          {{0, {kX, kX, kY}, kX}, {0, {kX, kY, kX}, kX}, {0, {kY, kX, kX}, kX}},
          {}};
}

IdentitySystem quaternary_pq_system() {
  return {"quaternary-pq",
          {{"p", 4}, {"q", 4}},
          {{0, {kX, kY, kY, kZ}, kX}, {1, {kX, kY, kY, kZ}, kZ}},
          {{0, {kX, kX, kY, kY}, 1, {kX, kX, kY, kY}}}};
}

IdentitySystem quaternary_pqx_system() {
  auto sys = quaternary_pq_system();
  sys.name = "quaternary-pqx";
  sys.fixed.push_back({0, {kX, kY, kZ, kX}, kX});
  sys.fixed.push_back({1, {kX, kY, kZ, kX}, kX});
  return sys;
}

IdentitySystem lipparini_rs_system() {
  return {"lipparini-rs",
          {{"r", 3}, {"s", 3}},
          {{0, {kX, kY, kY}, kX},
           {1, {kX, kX, kY}, kY},
           {0, {kX, kY, kX}, kX},
           {1, {kX, kY, kX}, kX}},
          {{0, {kX, kX, kY}, 1, {kX, kY, kY}}}};
}

namespace {

constexpr std::string_view kKinds[] = {"maltsev",        "pixley",
                                       "majority",       "quaternary-pq",
                                       "quaternary-pqx", "lipparini-rs"};

}  // namespace

std::span<const std::string_view> term_kinds() noexcept { return kKinds; }

std::optional<IdentitySystem> named_system(std::string_view kind) {
  if (kind == "maltsev") return maltsev_system();
  if (kind == "pixley") return pixley_system();
  if (kind == "majority") return majority_system();
  if (kind == "quaternary-pq") return quaternary_pq_system();
  if (kind == "quaternary-pqx") return quaternary_pqx_system();
  if (kind == "lipparini-rs") return lipparini_rs_system();
  return std::nullopt;
}

TermSearchResult find_maltsev(const FiniteAlgebra& alg, std::size_t budget) {
  return solve_identity_system(alg, maltsev_system(), budget);
}
TermSearchResult find_pixley(const FiniteAlgebra& alg, std::size_t budget) {
  return solve_identity_system(alg, pixley_system(), budget);
}
TermSearchResult find_majority(const FiniteAlgebra& alg, std::size_t budget) {
  return solve_identity_system(alg, majority_system(), budget);
}
TermSearchResult find_quaternary_pq(const FiniteAlgebra& alg,
                                    std::size_t budget) {
  return solve_identity_system(alg, quaternary_pq_system(), budget);
}
TermSearchResult find_quaternary_pqx(const FiniteAlgebra& alg,
                                     std::size_t budget) {
  return solve_identity_system(alg, quaternary_pqx_system(), budget);
}
TermSearchResult find_lipparini_rs(const FiniteAlgebra& alg,
                                   std::size_t budget) {
  return solve_identity_system(alg, lipparini_rs_system(), budget);
}

namespace {

const Term* term_of(const TermSearchResult& r, const std::string& name) {
  if (!r.found()) return nullptr;
  auto it = r.witnesses.find(name);
  if (it == r.witnesses.end() || !it->second.term) return nullptr;
  return &*it->second.term;
}

}  // namespace

std::optional<TermSearchResult> pq_from_maltsev(const FiniteAlgebra& alg,
                                                const TermSearchResult& m) {
  const Term* t = term_of(m, "p");
  if (t == nullptr) return std::nullopt;
  const Term vars[] = {Term::variable(0), Term::variable(1), Term::variable(2)};
  return witnesses_from_terms(
      alg, quaternary_pq_system(),
      {{"p", substitute(*t, vars)}, {"q", Term::variable(3)}});
}

std::optional<TermSearchResult> maltsev_from_pixley(const FiniteAlgebra& alg,
                                                    const TermSearchResult& p) {
  const Term* t = term_of(p, "p");
  if (t == nullptr) return std::nullopt;
  return witnesses_from_terms(alg, maltsev_system(), {{"p", *t}});
}

std::optional<TermSearchResult> majority_from_pixley(
    const FiniteAlgebra& alg, const TermSearchResult& p) {
  const Term* t = term_of(p, "p");
  if (t == nullptr) return std::nullopt;
  const Term x = Term::variable(0), z = Term::variable(2);
  const Term inner[] = {x, Term::variable(1), z};
  const Term outer[] = {x, substitute(*t, inner), z};
  return witnesses_from_terms(alg, majority_system(),
                              {{"m", substitute(*t, outer)}});
}

}  // namespace ualg
