#include "ualg/congruence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ualg {

Congruence Congruence::from_blocks(std::span<const std::size_t> block_of) {
  Congruence c;
  const std::size_t n = block_of.size();
  c.block_of_.resize(n);
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = renumber.try_emplace(block_of[i], renumber.size());
    c.block_of_[i] = it->second;
  }
  c.blocks_ = renumber.size();
  c.rel_ = BinRel(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (c.block_of_[i] == c.block_of_[j]) c.rel_.set(i, j);
    }
  }
  return c;
}

Congruence Congruence::from_relation(const BinRel& r) {
  if (!r.is_equivalence()) {
    throw std::invalid_argument("relation is not an equivalence");
  }
  std::vector<std::size_t> block(r.dom_size());
  for (std::size_t i = 0; i < r.dom_size(); ++i) {
    std::size_t first = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (r.test(i, j)) {
        first = j;
        break;
      }
    }
    block[i] = first;
  }
  return from_blocks(block);
}

std::vector<std::vector<Element>> Congruence::block_lists() const {
  std::vector<std::vector<Element>> out(blocks_);
  for (std::size_t i = 0; i < block_of_.size(); ++i) {
    out[block_of_[i]].push_back(static_cast<Element>(i));
  }
  return out;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Calls emit(f(..a..), f(..b..)) for every basic translation: one argument
// position varies between a and b, the others range over the carrier.
template <typename Emit>
void for_each_translation(const FiniteAlgebra& alg, Element a, Element b,
                          Emit&& emit) {
  const std::size_t n = alg.size();
  for (const auto& f : alg.operations()) {
    const std::size_t k = f.arity();
    if (k == 0) continue;
    const std::size_t others = checked_power(n, k - 1);
    for (std::size_t pos = 0; pos < k; ++pos) {
      const std::size_t stride = checked_power(n, k - 1 - pos);
      for (std::size_t rest = 0; rest < others; ++rest) {
        // Split `rest` into the digits before and after `pos`.
        const std::size_t high = rest / stride;
        const std::size_t low = rest % stride;
        const std::size_t base = (high * n) * stride + low;
        emit(f.at(base + a * stride), f.at(base + b * stride));
      }
    }
  }
}

}  // namespace

Congruence congruence_generated(const FiniteAlgebra& alg,
                                std::span<const Pair> pairs) {
  const std::size_t n = alg.size();
  UnionFind uf(n);
  std::deque<Pair> work(pairs.begin(), pairs.end());
  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop_front();
    if (a >= n || b >= n) throw std::out_of_range("pair outside carrier");
    if (!uf.unite(a, b)) continue;
    for_each_translation(alg, a, b, [&](Element fa, Element fb) {
      if (fa != fb) work.emplace_back(fa, fb);
    });
  }
  std::vector<std::size_t> block(n);
  for (std::size_t i = 0; i < n; ++i) block[i] = uf.find(i);
  return Congruence::from_blocks(block);
}

std::vector<std::vector<std::size_t>> enumerate_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return {{}};
  std::vector<std::size_t> rg(n, 0);
  // Restricted growth strings: rg[i] <= 1 + max(rg[0..i-1]).
  auto rec = [&](auto&& self, std::size_t i, std::size_t max_used) -> void {
    if (i == n) {
      out.push_back(rg);
      return;
    }
    for (std::size_t v = 0; v <= max_used + 1; ++v) {
      rg[i] = v;
      self(self, i + 1, std::max(max_used, v));
    }
  };
  rg[0] = 0;
  rec(rec, 1, 0);
  return out;
}

bool is_compatible_partition(const FiniteAlgebra& alg,
                             std::span<const std::size_t> block_of) {
  const std::size_t n = alg.size();
  for (const auto& f : alg.operations()) {
    if (f.arity() == 0) continue;
    for (Element a = 0; a < n; ++a) {
      for (Element b = a + 1; b < n; ++b) {
        if (block_of[a] != block_of[b]) continue;
        bool ok = true;
        for_each_translation(alg, a, b, [&](Element fa, Element fb) {
          if (block_of[fa] != block_of[fb]) ok = false;
        });
        if (!ok) return false;
      }
    }
  }
  return true;
}

std::vector<Congruence> all_congruences(const FiniteAlgebra& alg) {
  if (alg.size() > kMaxLatticeCarrier) {
    throw StructureError("congruence enumeration supports carriers up to " +
                         std::to_string(kMaxLatticeCarrier) + ", '" +
                         alg.name() + "' has " + std::to_string(alg.size()));
  }
  std::vector<Congruence> out;
  for (const auto& p : enumerate_partitions(alg.size())) {
    if (is_compatible_partition(alg, p)) {
      out.push_back(Congruence::from_blocks(p));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Congruence& a, const Congruence& b) {
              if (a.block_count() != b.block_count()) {
                return a.block_count() > b.block_count();
              }
              return a.block_of() < b.block_of();
            });
  return out;
}

CongLattice::CongLattice(const FiniteAlgebra& alg)
    : elements_(all_congruences(alg)) {
  const std::size_t m = elements_.size();
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index[elements_[i].block_of()] = i;
  leq_.assign(m * m, false);
  meet_.assign(m * m, 0);
  join_.assign(m * m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const auto& ra = elements_[a].relation();
      const auto& rb = elements_[b].relation();
      leq_[a * m + b] = ra.subset_of(rb);
      if (b < a) {
        meet_[a * m + b] = meet_[b * m + a];
        join_[a * m + b] = join_[b * m + a];
        continue;
      }
      const auto lo = Congruence::from_relation(ualg::meet(ra, rb));
      meet_[a * m + b] = index.at(lo.block_of());
      const auto pairs = join_raw(ra, rb).pairs();
      const auto hi = congruence_generated(alg, pairs);
      join_[a * m + b] = index.at(hi.block_of());
    }
  }
}

std::optional<std::size_t> CongLattice::index_of(const Congruence& c) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == c) return i;
  }
  return std::nullopt;
}

std::optional<std::array<std::size_t, 3>> modular_violation(
    const CongLattice& l) {
  const std::size_t m = l.size();
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t z = 0; z < m; ++z) {
      if (!l.leq(x, z)) continue;
      for (std::size_t y = 0; y < m; ++y) {
        if (l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z)) {
          return std::array<std::size_t, 3>{x, y, z};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::array<std::size_t, 3>> distributive_violation(
    const CongLattice& l) {
  const std::size_t m = l.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t c = 0; c < m; ++c) {
        if (l.leq(l.meet(a, b), c) && !l.leq(l.meet(a, l.join(b, c)), c)) {
          return std::array<std::size_t, 3>{a, b, c};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

std::optional<Pair> first_difference(const BinRel& x, const BinRel& y) {
  for (std::size_t a = 0; a < x.dom_size(); ++a) {
    for (std::size_t b = 0; b < x.cod_size(); ++b) {
      if (x.test(a, b) != y.test(a, b)) return Pair{Element(a), Element(b)};
    }
  }
  return std::nullopt;
}

}  // namespace

PermutabilityReport permutability(const CongLattice& l) {
  PermutabilityReport rep;
  const std::size_t m = l.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const auto& ra = l[a].relation();
      const auto& rb = l[b].relation();
      const BinRel ab = compose(ra, rb);
      const BinRel ba = compose(rb, ra);
      if (rep.perm2) {
        if (auto d = first_difference(ab, ba)) {
          rep.perm2 = false;
          rep.perm2_failure = PermutabilityFailure{a, b, d->first, d->second};
        }
      }
      if (rep.perm3) {
        if (auto d = first_difference(compose(ra, ba), compose(rb, ab))) {
          rep.perm3 = false;
          rep.perm3_failure = PermutabilityFailure{a, b, d->first, d->second};
        }
      }
      if (!rep.perm2 && !rep.perm3) return rep;
    }
  }
  return rep;
}

}  // namespace ualg
