#include "ualg/properties.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

#include "ualg/congruence.hpp"

namespace ualg {

TernaryRelView::TernaryRelView(std::size_t x_size, std::size_t a_size,
                               std::size_t u_size)
    : rel_(x_size * a_size, u_size), x_(x_size), a_(a_size) {}

TernaryRelView::TernaryRelView(BinRel rel, std::size_t x_size,
                               std::size_t a_size)
    : rel_(std::move(rel)), x_(x_size), a_(a_size) {
  if (rel_.dom_size() != x_size * a_size) {
    throw std::invalid_argument("ternary view: domain is not X x A");
  }
}

BinRel kernel_pair_x(std::size_t x_size, std::size_t a_size) {
  BinRel k(x_size * a_size, x_size * a_size);
  for (std::size_t x = 0; x < x_size; ++x) {
    for (std::size_t a = 0; a < a_size; ++a) {
      for (std::size_t b = 0; b < a_size; ++b) {
        k.set(x * a_size + a, x * a_size + b);
      }
    }
  }
  return k;
}

BinRel kernel_pair_a(std::size_t x_size, std::size_t a_size) {
  BinRel k(x_size * a_size, x_size * a_size);
  for (std::size_t x = 0; x < x_size; ++x) {
    for (std::size_t y = 0; y < x_size; ++y) {
      for (std::size_t a = 0; a < a_size; ++a) {
        k.set(x * a_size + a, y * a_size + a);
      }
    }
  }
  return k;
}

bool is_difunctional(const BinRel& d) {
  return compose(d, compose(converse(d), d)) == d;
}

namespace {

constexpr std::string_view kVarsXY[] = {"x", "y"};
constexpr std::string_view kVarsXYUV[] = {"x", "y", "u", "v"};
constexpr std::string_view kVarsXYZ[] = {"x", "y", "z"};
constexpr std::string_view kVarsXYZUV[] = {"x", "y", "z", "u", "v"};
constexpr std::string_view kVarsDD[] = {"x", "a", "y", "b", "u", "v"};
constexpr std::string_view kVarsPP[] = {"x", "a", "y", "b",
                                        "c", "z", "u", "v"};

constexpr Property kProperties[] = {
    Property::DifunctionalAll, Property::ReflexiveSymmetric,
    Property::EEoCommute,      Property::PPoPPo,
    Property::DD,              Property::PP,
    Property::PositiveAreEquivalences};

// Advances `a` through the box bounds[0] x ... x bounds[k-1] in
// lexicographic order; false after the last tuple.
bool next_in_box(std::vector<Element>& a, std::span<const std::size_t> bounds) {
  std::size_t pos = a.size();
  while (pos-- > 0) {
    if (++a[pos] < bounds[pos]) return true;
    a[pos] = 0;
  }
  return false;
}

bool box_empty(std::span<const std::size_t> bounds) {
  return std::any_of(bounds.begin(), bounds.end(),
                     [](std::size_t b) { return b == 0; });
}

template <typename F>
std::optional<std::vector<Element>> first_in_box(
    std::span<const std::size_t> bounds, F&& pred) {
  if (box_empty(bounds)) return std::nullopt;
  std::vector<Element> a(bounds.size(), 0);
  do {
    if (pred(a)) return a;
  } while (next_in_box(a, bounds));
  return std::nullopt;
}

bool share_image(const BinRel& p, std::size_t x, std::size_t z) {
  for (std::size_t w = 0; w < p.cod_size(); ++w) {
    if (p.test(x, w) && p.test(z, w)) return true;
  }
  return false;
}

bool eeo_differs(const BinRel& e, Element x, Element y) {
  bool left = false;   // some z with z E x and z E y
  bool right = false;  // some z with x E z and y E z
  for (std::size_t z = 0; z < e.dom_size(); ++z) {
    left = left || (e.test(z, x) && e.test(z, y));
    right = right || (e.test(x, z) && e.test(y, z));
  }
  return left != right;
}

bool pp_fails_at(const TernaryRelView& p, std::span<const Element> v) {
  const Element x = v[0], a = v[1], y = v[2], b = v[3], c = v[4], z = v[5],
                u = v[6], w = v[7];
  return p.test(x, a, u) && p.test(y, b, u) && p.test(y, c, w) &&
         p.test(z, a, w) &&
         !share_image(p.relation(), p.pair(x, a), p.pair(z, a));
}

bool dd_fails_at(const TernaryRelView& d, std::span<const Element> v) {
  const Element x = v[0], a = v[1], y = v[2], b = v[3], u = v[4], w = v[5];
  return d.test(x, a, u) && d.test(y, b, u) && d.test(y, a, w) &&
         !d.test(x, a, w);
}

bool ppoppo_fails_at(const BinRel& p, std::span<const Element> v) {
  const Element x = v[0], y = v[1], z = v[2], u = v[3], w = v[4];
  return p.test(x, u) && p.test(y, u) && p.test(y, w) && p.test(z, w) &&
         !share_image(p, x, z);
}

bool difunctional_fails_at(const BinRel& d, std::span<const Element> v) {
  return d.test(v[0], v[2]) && d.test(v[1], v[2]) && d.test(v[1], v[3]) &&
         !d.test(v[0], v[3]);
}

bool transitivity_fails_at(const BinRel& e, std::span<const Element> v) {
  return e.test(v[0], v[1]) && e.test(v[1], v[2]) && !e.test(v[0], v[2]);
}

std::string_view relation_name(Property p) {
  switch (p) {
    case Property::DifunctionalAll:
    case Property::DD: return "D";
    case Property::PPoPPo:
    case Property::PP: return "P";
    default: return "E";
  }
}

Counterexample make_cx(Property p, NamedRelation rel,
                       std::span<const Element> values) {
  Counterexample cx;
  cx.check = std::string(to_token(p));
  cx.relations.push_back(std::move(rel));
  const auto names = property_variables(p);
  for (std::size_t i = 0; i < values.size(); ++i) {
    cx.elements.push_back({std::string(names[i]), values[i]});
  }
  return cx;
}

NamedRelation named(Property p, BinRel r) {
  return NamedRelation{std::string(relation_name(p)), std::move(r), {}, 0, 0};
}

NamedRelation named(Property p, const TernaryRelView& t) {
  return NamedRelation{std::string(relation_name(p)), t.relation(), {},
                       t.x_size(), t.a_size()};
}

// Memoized closures keyed by the sorted generator list.
class BinaryClosures {
 public:
  BinaryClosures(const FiniteAlgebra& alg, bool reflexive, std::size_t budget)
      : alg_(alg), reflexive_(reflexive), budget_(budget) {}

  const std::optional<BinRel>& get(std::vector<Pair> gens) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    auto it = cache_.find(gens);
    if (it != cache_.end()) return it->second;
    std::optional<BinRel> r =
        reflexive_ ? close_in_class(alg_, RelClass::ReflexiveCompatible, gens,
                                    budget_)
                   : generated_relation(alg_, alg_, gens, budget_);
    return cache_.emplace(std::move(gens), std::move(r)).first->second;
  }

 private:
  const FiniteAlgebra& alg_;
  bool reflexive_;
  std::size_t budget_;
  std::map<std::vector<Pair>, std::optional<BinRel>> cache_;
};

using Triple = std::array<Element, 3>;

class TernaryClosures {
 public:
  TernaryClosures(const FiniteAlgebra& x, const FiniteAlgebra& a,
                  const FiniteAlgebra& u, std::size_t budget)
      : factors_{&x, &a, &u}, budget_(budget) {}

  const std::optional<TernaryRelView>& get(std::vector<Triple> gens) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    auto it = cache_.find(gens);
    if (it != cache_.end()) return it->second;
    std::vector<std::vector<Element>> vs;
    for (const auto& g : gens) vs.push_back({g[0], g[1], g[2]});
    std::optional<TernaryRelView> out;
    if (auto sp = generate_subproduct(factors_, vs, budget_)) {
      TernaryRelView t(factors_[0]->size(), factors_[1]->size(),
                       factors_[2]->size());
      for (std::size_t i = 0; i < sp->size(); ++i) {
        auto v = sp->at(i);
        t.set(v[0], v[1], v[2]);
      }
      out = std::move(t);
    }
    return cache_.emplace(std::move(gens), std::move(out)).first->second;
  }

 private:
  std::array<const FiniteAlgebra*, 3> factors_;
  std::size_t budget_;
  std::map<std::vector<Triple>, std::optional<TernaryRelView>> cache_;
};

// Runs `attempt` on every assignment in the box until it returns a
// counterexample. `attempt` may clear `exhaustive` on budget failures.
template <typename F>
PropertyVerdict scan(std::span<const std::size_t> bounds, F&& attempt) {
  PropertyVerdict v;
  if (box_empty(bounds)) return v;
  std::vector<Element> a(bounds.size(), 0);
  do {
    if (auto cx = attempt(std::as_const(a), v.exhaustive)) {
      v.holds = false;
      v.counterexample = std::move(cx);
      return v;
    }
  } while (next_in_box(a, bounds));
  return v;
}

PropertyVerdict generated_refl_symmetric(const FiniteAlgebra& alg,
                                         std::size_t budget) {
  const std::size_t n = alg.size();
  BinaryClosures cl(alg, true, budget);
  const std::size_t bounds[] = {n, n};
  return scan(bounds, [&](const std::vector<Element>& a,
                          bool& exhaustive) -> std::optional<Counterexample> {
    const auto& e = cl.get({{a[0], a[1]}});
    if (!e) {
      exhaustive = false;
      return std::nullopt;
    }
    if (e->test(a[1], a[0])) return std::nullopt;
    return make_cx(Property::ReflexiveSymmetric,
                   named(Property::ReflexiveSymmetric, *e), a);
  });
}

PropertyVerdict generated_difunctional(const FiniteAlgebra& alg,
                                       std::size_t budget) {
  const std::size_t n = alg.size();
  BinaryClosures cl(alg, false, budget);
  const std::size_t bounds[] = {n, n, n, n};
  return scan(bounds, [&](const std::vector<Element>& a,
                          bool& exhaustive) -> std::optional<Counterexample> {
    const auto& d = cl.get({{a[0], a[2]}, {a[1], a[2]}, {a[1], a[3]}});
    if (!d) {
      exhaustive = false;
      return std::nullopt;
    }
    if (!difunctional_fails_at(*d, a)) return std::nullopt;
    return make_cx(Property::DifunctionalAll,
                   named(Property::DifunctionalAll, *d), a);
  });
}

PropertyVerdict generated_eeo(const FiniteAlgebra& alg, std::size_t budget) {
  const std::size_t n = alg.size();
  BinaryClosures cl(alg, true, budget);
  // Variables x, y, z: z E x and z E y, or x E z and y E z.
  const std::size_t bounds[] = {n, n, n};
  return scan(bounds, [&](const std::vector<Element>& a,
                          bool& exhaustive) -> std::optional<Counterexample> {
    const Element x = a[0], y = a[1], z = a[2];
    for (const auto& gens : {std::vector<Pair>{{z, x}, {z, y}},
                             std::vector<Pair>{{x, z}, {y, z}}}) {
      const auto& e = cl.get(gens);
      if (!e) {
        exhaustive = false;
        continue;
      }
      if (eeo_differs(*e, x, y)) {
        const Element pair[] = {x, y};
        return make_cx(Property::EEoCommute, named(Property::EEoCommute, *e),
                       pair);
      }
    }
    return std::nullopt;
  });
}

PropertyVerdict generated_ppoppo(const FiniteAlgebra& alg,
                                 std::size_t budget) {
  const std::size_t n = alg.size();
  BinaryClosures cl(alg, false, budget);
  const std::size_t bounds[] = {n, n, n, n, n};
  return scan(bounds, [&](const std::vector<Element>& a,
                          bool& exhaustive) -> std::optional<Counterexample> {
    const Element x = a[0], y = a[1], z = a[2], u = a[3], v = a[4];
    if (x == z || u == v) return std::nullopt;  // w = u works
    const auto& p = cl.get({{x, u}, {y, u}, {y, v}, {z, v}});
    if (!p) {
      exhaustive = false;
      return std::nullopt;
    }
    if (!ppoppo_fails_at(*p, a)) return std::nullopt;
    return make_cx(Property::PPoPPo, named(Property::PPoPPo, *p), a);
  });
}

PropertyVerdict generated_dd(const FiniteAlgebra& x, const FiniteAlgebra& a,
                             const FiniteAlgebra& u, std::size_t budget) {
  TernaryClosures cl(x, a, u, budget);
  const std::size_t bounds[] = {x.size(), a.size(), x.size(),
                                a.size(), u.size(), u.size()};
  return scan(bounds, [&](const std::vector<Element>& v,
                          bool& exhaustive) -> std::optional<Counterexample> {
    const auto& d = cl.get({Triple{v[0], v[1], v[4]}, Triple{v[2], v[3], v[4]},
                            Triple{v[2], v[1], v[5]}});
    if (!d) {
      exhaustive = false;
      return std::nullopt;
    }
    if (!dd_fails_at(*d, v)) return std::nullopt;
    return make_cx(Property::DD, named(Property::DD, *d), v);
  });
}

PropertyVerdict generated_pp(const FiniteAlgebra& x, const FiniteAlgebra& a,
                             const FiniteAlgebra& u, std::size_t budget) {
  TernaryClosures cl(x, a, u, budget);
  const std::size_t bounds[] = {x.size(), a.size(), x.size(), a.size(),
                                a.size(), x.size(), u.size(), u.size()};
  return scan(bounds, [&](const std::vector<Element>& v,
                          bool& exhaustive) -> std::optional<Counterexample> {
    // With x = z or u = v the conclusion holds with w = u.
    if (v[0] == v[5] || v[6] == v[7]) return std::nullopt;
    const auto& p = cl.get({Triple{v[0], v[1], v[6]}, Triple{v[2], v[3], v[6]},
                            Triple{v[2], v[4], v[7]}, Triple{v[5], v[1], v[7]}});
    if (!p) {
      exhaustive = false;
      return std::nullopt;
    }
    if (!pp_fails_at(*p, v)) return std::nullopt;
    return make_cx(Property::PP, named(Property::PP, *p), v);
  });
}

PropertyVerdict generated_positive(const FiniteAlgebra& alg,
                                   std::size_t budget) {
  const std::size_t n = alg.size();
  BinaryClosures cl(alg, false, budget);
  // Variables x, y, z, u, v with x R u, y R u, y R v, z R v. R must be
  // total for R°R to be reflexive; extra pairs are tried in order.
  const std::size_t bounds[] = {n, n, n, n, n};
  return scan(bounds, [&](const std::vector<Element>& a,
                          bool& exhaustive) -> std::optional<Counterexample> {
    const Element x = a[0], y = a[1], z = a[2], u = a[3], v = a[4];
    if (x == z || u == v) return std::nullopt;
    auto total = [&](auto&& self,
                     std::vector<Pair> gens) -> std::optional<BinRel> {
      const auto& r = cl.get(gens);
      if (!r) {
        exhaustive = false;
        return std::nullopt;
      }
      if (share_image(*r, x, z)) return std::nullopt;
      for (Element e = 0; e < n; ++e) {
        bool has = false;
        for (Element w = 0; w < n && !has; ++w) has = r->test(e, w);
        if (has) continue;
        for (Element w = 0; w < n; ++w) {
          auto more = gens;
          more.emplace_back(e, w);
          if (auto found = self(self, std::move(more))) return found;
        }
        return std::nullopt;
      }
      return *r;
    };
    auto r = total(total, {{x, u}, {y, u}, {y, v}, {z, v}});
    if (!r) return std::nullopt;
    NamedRelation nr = named(Property::PositiveAreEquivalences,
                             compose(converse(*r), *r));
    nr.witness = *r;
    const Element vals[] = {x, y, z};
    return make_cx(Property::PositiveAreEquivalences, std::move(nr), vals);
  });
}

// Enumerated variants: first relation in canonical order with a violation.
template <typename Rel, typename Find>
PropertyVerdict over_family(Property p, const std::vector<Rel>& rels,
                            const std::vector<BinRel>* witnesses,
                            bool exhaustive, Find&& find) {
  PropertyVerdict v;
  v.exhaustive = exhaustive;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    if (auto a = find(rels[i])) {
      NamedRelation nr = named(p, rels[i]);
      if (witnesses != nullptr && i < witnesses->size()) {
        nr.witness = (*witnesses)[i];
      }
      v.holds = false;
      v.counterexample = make_cx(p, std::move(nr), *a);
      return v;
    }
  }
  return v;
}

PropertyVerdict enumerated(const FiniteAlgebra& alg, Property p,
                           std::size_t budget) {
  const std::size_t n = alg.size();
  switch (p) {
    case Property::ReflexiveSymmetric: {
      auto fam = enumerate_relations(alg, RelClass::ReflexiveCompatible, budget);
      return over_family(p, fam.relations, nullptr, fam.exhaustive,
                         [&](const BinRel& e) {
                           const std::size_t b[] = {n, n};
                           return first_in_box(b, [&](const auto& a) {
                             return e.test(a[0], a[1]) && !e.test(a[1], a[0]);
                           });
                         });
    }
    case Property::DifunctionalAll: {
      auto fam = enumerate_relations(alg, RelClass::AllCompatible, budget);
      return over_family(p, fam.relations, nullptr, fam.exhaustive,
                         difunctional_violation);
    }
    case Property::EEoCommute: {
      auto fam = enumerate_relations(alg, RelClass::ReflexiveCompatible, budget);
      return over_family(p, fam.relations, nullptr, fam.exhaustive,
                         eeo_violation);
    }
    case Property::PPoPPo: {
      auto fam = enumerate_relations(alg, RelClass::AllCompatible, budget);
      return over_family(p, fam.relations, nullptr, fam.exhaustive,
                         ppoppo_violation);
    }
    case Property::DD: {
      auto fam = enumerate_ternary_relations(alg, alg, alg, budget);
      return over_family(p, fam.relations, nullptr, fam.exhaustive,
                         dd_violation);
    }
    case Property::PP: {
      auto fam = enumerate_ternary_relations(alg, alg, alg, budget);
      return over_family(p, fam.relations, nullptr, fam.exhaustive,
                         pp_violation);
    }
    case Property::PositiveAreEquivalences: {
      auto fam = enumerate_relations(alg, RelClass::ReflexivePositiveCompatible,
                                     budget);
      return over_family(p, fam.relations, &fam.witnesses, fam.exhaustive,
                         [&](const BinRel& e) {
                           const std::size_t b[] = {n, n, n};
                           return first_in_box(b, [&](const auto& a) {
                             return transitivity_fails_at(e, a);
                           });
                         });
    }
  }
  throw std::logic_error("unknown property");
}

}  // namespace

std::string_view to_token(Property p) noexcept {
  switch (p) {
    case Property::DifunctionalAll: return "difunctional-all";
    case Property::ReflexiveSymmetric: return "refl-symmetric";
    case Property::EEoCommute: return "eeo-commute";
    case Property::PPoPPo: return "ppoppo";
    case Property::DD: return "dd";
    case Property::PP: return "pp";
    case Property::PositiveAreEquivalences: return "positive-are-equiv";
  }
  return "?";
}

std::optional<Property> parse_property(std::string_view token) noexcept {
  for (auto p : kProperties) {
    if (to_token(p) == token) return p;
  }
  return std::nullopt;
}

std::span<const Property> all_properties() noexcept { return kProperties; }

std::span<const std::string_view> property_variables(Property p) noexcept {
  switch (p) {
    case Property::DifunctionalAll: return kVarsXYUV;
    case Property::ReflexiveSymmetric:
    case Property::EEoCommute: return kVarsXY;
    case Property::PPoPPo: return kVarsXYZUV;
    case Property::DD: return kVarsDD;
    case Property::PP: return kVarsPP;
    case Property::PositiveAreEquivalences: return kVarsXYZ;
  }
  return {};
}

std::optional<std::vector<Element>> difunctional_violation(const BinRel& d) {
  const std::size_t b[] = {d.dom_size(), d.dom_size(), d.cod_size(),
                           d.cod_size()};
  return first_in_box(b, [&](const auto& a) {
    return difunctional_fails_at(d, a);
  });
}

std::optional<std::vector<Element>> eeo_violation(const BinRel& e) {
  if (!e.is_square()) throw std::invalid_argument("relation is not square");
  const std::size_t b[] = {e.dom_size(), e.dom_size()};
  return first_in_box(b, [&](const auto& a) {
    return eeo_differs(e, a[0], a[1]);
  });
}

std::optional<std::vector<Element>> ppoppo_violation(const BinRel& p) {
  const std::size_t x = p.dom_size(), u = p.cod_size();
  const std::size_t b[] = {x, x, x, u, u};
  return first_in_box(b, [&](const auto& a) { return ppoppo_fails_at(p, a); });
}

std::optional<std::vector<Element>> dd_violation(const TernaryRelView& d) {
  const std::size_t b[] = {d.x_size(), d.a_size(), d.x_size(),
                           d.a_size(), d.u_size(), d.u_size()};
  return first_in_box(b, [&](const auto& a) { return dd_fails_at(d, a); });
}

std::optional<std::vector<Element>> pp_violation(const TernaryRelView& p) {
  const std::size_t b[] = {p.x_size(), p.a_size(), p.x_size(), p.a_size(),
                           p.a_size(), p.x_size(), p.u_size(), p.u_size()};
  return first_in_box(b, [&](const auto& a) { return pp_fails_at(p, a); });
}

bool ppoppo_relational(const BinRel& p) {
  const BinRel k = compose(converse(p), p);
  return compose(k, k).subset_of(k);
}

bool dd_relational(const TernaryRelView& d) {
  const BinRel& r = d.relation();
  const BinRel k = compose(converse(r), r);
  const BinRel eq_x = kernel_pair_x(d.x_size(), d.a_size());
  const BinRel eq_a = kernel_pair_a(d.x_size(), d.a_size());
  const BinRel l = meet(eq_a, compose(eq_x, k));
  return compose(r, l).subset_of(r);
}

bool pp_relational(const TernaryRelView& p) {
  const BinRel& r = p.relation();
  const BinRel k = compose(converse(r), r);
  const BinRel eq_x = kernel_pair_x(p.x_size(), p.a_size());
  const BinRel eq_a = kernel_pair_a(p.x_size(), p.a_size());
  return meet(eq_a, compose(k, compose(eq_x, k))).subset_of(k);
}

PropertyVerdict check_property(const FiniteAlgebra& alg, Property p,
                               std::size_t budget, PropertyMethod method) {
  if (method == PropertyMethod::Enumerated) return enumerated(alg, p, budget);
  switch (p) {
    case Property::DifunctionalAll: return generated_difunctional(alg, budget);
    case Property::ReflexiveSymmetric:
      return generated_refl_symmetric(alg, budget);
    case Property::EEoCommute: return generated_eeo(alg, budget);
    case Property::PPoPPo: return generated_ppoppo(alg, budget);
    case Property::DD: return generated_dd(alg, alg, alg, budget);
    case Property::PP: return generated_pp(alg, alg, alg, budget);
    case Property::PositiveAreEquivalences:
      return generated_positive(alg, budget);
  }
  throw std::logic_error("unknown property");
}

PropertyVerdict check_difunctional_all(const FiniteAlgebra& alg,
                                       std::size_t budget) {
  return check_property(alg, Property::DifunctionalAll, budget);
}
PropertyVerdict check_reflexive_symmetric(const FiniteAlgebra& alg,
                                          std::size_t budget) {
  return check_property(alg, Property::ReflexiveSymmetric, budget);
}
PropertyVerdict check_eeo_commute(const FiniteAlgebra& alg,
                                  std::size_t budget) {
  return check_property(alg, Property::EEoCommute, budget);
}
PropertyVerdict check_ppoppo(const FiniteAlgebra& alg, std::size_t budget) {
  return check_property(alg, Property::PPoPPo, budget);
}
PropertyVerdict check_dd(const FiniteAlgebra& alg, std::size_t budget) {
  return check_property(alg, Property::DD, budget);
}
PropertyVerdict check_pp(const FiniteAlgebra& alg, std::size_t budget) {
  return check_property(alg, Property::PP, budget);
}
PropertyVerdict check_positive_are_equivalences(const FiniteAlgebra& alg,
                                                std::size_t budget) {
  return check_property(alg, Property::PositiveAreEquivalences, budget);
}

PropertyVerdict check_dd(const FiniteAlgebra& x, const FiniteAlgebra& a,
                         const FiniteAlgebra& u, std::size_t budget) {
  return generated_dd(x, a, u, budget);
}

PropertyVerdict check_pp(const FiniteAlgebra& x, const FiniteAlgebra& a,
                         const FiniteAlgebra& u, std::size_t budget) {
  return generated_pp(x, a, u, budget);
}

TernaryFamily enumerate_ternary_relations(const FiniteAlgebra& x,
                                          const FiniteAlgebra& a,
                                          const FiniteAlgebra& u,
                                          std::size_t budget) {
  const FiniteAlgebra xa = product_algebra(x, a);
  const std::size_t cells = xa.size() * u.size();
  TernaryFamily fam;
  std::set<BinRel> found;
  if (cells <= 20 && (std::size_t{1} << cells) <= budget) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << cells); ++mask) {
      BinRel r(xa.size(), u.size());
      for (std::size_t c = 0; c < cells; ++c) {
        if (mask >> c & 1u) r.set(c / u.size(), c % u.size());
      }
      if (is_compatible(xa, u, r)) found.insert(std::move(r));
    }
  } else {
    fam.exhaustive = false;
    TernaryClosures cl(x, a, u, budget);
    std::vector<Triple> all;
    for (Element i = 0; i < x.size(); ++i)
      for (Element j = 0; j < a.size(); ++j)
        for (Element k = 0; k < u.size(); ++k) all.push_back({i, j, k});
    auto add = [&](std::vector<Triple> gens) {
      if (const auto& t = cl.get(std::move(gens))) found.insert(t->relation());
    };
    add({});
    for (std::size_t i = 0; i < all.size(); ++i) {
      add({all[i]});
      for (std::size_t j = i + 1; j < all.size(); ++j) add({all[i], all[j]});
    }
    auto blocks_of = [](const FiniteAlgebra& alg) {
      std::set<std::vector<Element>> out;
      if (alg.size() > kMaxLatticeCarrier) return out;
      for (const auto& c : all_congruences(alg)) {
        for (auto& b : c.block_lists()) out.insert(std::move(b));
      }
      return out;
    };
    const auto bx = blocks_of(x), ba = blocks_of(a), bu = blocks_of(u);
    for (const auto& p : bx) {
      for (const auto& q : ba) {
        for (const auto& r : bu) {
          std::vector<Triple> gens;
          for (Element i : p)
            for (Element j : q)
              for (Element k : r) gens.push_back({i, j, k});
          add(std::move(gens));
        }
      }
    }
  }
  for (const auto& r : found) fam.relations.emplace_back(r, x.size(), a.size());
  return fam;
}

bool reverify_property_counterexample(const FiniteAlgebra& alg, Property p,
                                      const Counterexample& cx) {
  const NamedRelation* nr = cx.relation(relation_name(p));
  if (nr == nullptr) return false;
  const std::size_t n = alg.size();
  std::vector<Element> v;
  for (auto name : property_variables(p)) {
    auto e = cx.element(name);
    if (!e || *e >= n) return false;
    v.push_back(*e);
  }
  const BinRel& r = nr->relation;
  const bool ternary = p == Property::DD || p == Property::PP;
  if (ternary) {
    if (nr->x_size != n || nr->a_size != n || r.dom_size() != n * n ||
        r.cod_size() != n) {
      return false;
    }
    if (!is_compatible(product_algebra(alg, alg), alg, r)) return false;
    const TernaryRelView t(r, n, n);
    return p == Property::DD ? dd_fails_at(t, v) : pp_fails_at(t, v);
  }
  if (r.dom_size() != n || r.cod_size() != n) return false;
  switch (p) {
    case Property::ReflexiveSymmetric:
      return in_class(alg, RelClass::ReflexiveCompatible, r) &&
             r.test(v[0], v[1]) && !r.test(v[1], v[0]);
    case Property::EEoCommute:
      return in_class(alg, RelClass::ReflexiveCompatible, r) &&
             eeo_differs(r, v[0], v[1]);
    case Property::DifunctionalAll:
      return is_compatible(alg, r) && difunctional_fails_at(r, v);
    case Property::PPoPPo:
      return is_compatible(alg, r) && ppoppo_fails_at(r, v);
    case Property::PositiveAreEquivalences: {
      const BinRel* w = nr->witness ? &*nr->witness : nullptr;
      return in_class(alg, RelClass::ReflexivePositiveCompatible, r, w) &&
             transitivity_fails_at(r, v);
    }
    default: return false;
  }
}

}  // namespace ualg
