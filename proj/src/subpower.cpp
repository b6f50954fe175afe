#include "ualg/subpower.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <string_view>
#include <unordered_map>

namespace ualg {

namespace {

constexpr std::uint32_t kEmptySlot = 0xffffffffu;

std::size_t hash_bytes(const Subpower::Coord* p, std::size_t n) {
  return std::hash<std::string_view>{}(
      std::string_view(reinterpret_cast<const char*>(p), n));
}

}  // namespace

class SubpowerBuilder {
 public:
  SubpowerBuilder(std::size_t width, bool track) : track_(track) {
    sp_.width_ = width;
    sp_.slots_.assign(64, kEmptySlot);
  }

  Subpower::Coord* scratch() {
    sp_.data_.resize((sp_.count_ + 1) * sp_.width_);
    return sp_.data_.data() + sp_.count_ * sp_.width_;
  }

  // Inserts the scratch vector. Returns true if it was new.
  bool commit(Subpower::Origin&& origin) {
    const std::size_t w = sp_.width_;
    const Subpower::Coord* v = sp_.data_.data() + sp_.count_ * w;
    const std::size_t mask = sp_.slots_.size() - 1;
    std::size_t slot = hash_bytes(v, w) & mask;
    while (sp_.slots_[slot] != kEmptySlot) {
      const auto* other = sp_.data_.data() + sp_.slots_[slot] * w;
      if (std::memcmp(other, v, w) == 0) return false;
      slot = (slot + 1) & mask;
    }
    sp_.slots_[slot] = static_cast<std::uint32_t>(sp_.count_);
    ++sp_.count_;
    if (track_) sp_.origins_.push_back(std::move(origin));
    if (sp_.count_ * 2 > sp_.slots_.size()) rehash();
    return true;
  }

  std::size_t size() const { return sp_.count_; }
  const Subpower& view() const { return sp_; }
  const Subpower::Coord* row(std::size_t i) const {
    return sp_.data_.data() + i * sp_.width_;
  }

  Subpower finish() {
    sp_.data_.resize(sp_.count_ * sp_.width_);
    return std::move(sp_);
  }

 private:
  void rehash() {
    const std::size_t w = sp_.width_;
    std::vector<std::uint32_t> slots(sp_.slots_.size() * 2, kEmptySlot);
    const std::size_t mask = slots.size() - 1;
    for (std::size_t i = 0; i < sp_.count_; ++i) {
      std::size_t slot = hash_bytes(sp_.data_.data() + i * w, w) & mask;
      while (slots[slot] != kEmptySlot) slot = (slot + 1) & mask;
      slots[slot] = static_cast<std::uint32_t>(i);
    }
    sp_.slots_ = std::move(slots);
  }

  Subpower sp_;
  bool track_;
};

std::vector<Element> Subpower::vector_at(std::size_t i) const {
  auto v = at(i);
  return {v.begin(), v.end()};
}

std::optional<std::size_t> Subpower::find(std::span<const Coord> v) const {
  if (v.size() != width_ || slots_.empty()) return std::nullopt;
  const std::size_t mask = slots_.size() - 1;
  std::size_t slot = hash_bytes(v.data(), width_) & mask;
  while (slots_[slot] != kEmptySlot) {
    if (std::memcmp(data_.data() + slots_[slot] * width_, v.data(), width_) ==
        0) {
      return slots_[slot];
    }
    slot = (slot + 1) & mask;
  }
  return std::nullopt;
}

std::optional<std::size_t> Subpower::find(std::span<const Element> v) const {
  if (v.size() != width_) return std::nullopt;
  std::vector<Coord> bytes(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= kMaxCarrier) return std::nullopt;
    bytes[i] = static_cast<Coord>(v[i]);
  }
  return find(std::span<const Coord>(bytes));
}

std::vector<std::size_t> Subpower::lex_order() const {
  std::vector<std::size_t> order(count_);
  for (std::size_t i = 0; i < count_; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    return std::memcmp(data_.data() + a * width_, data_.data() + b * width_,
                       width_) < 0;
  });
  return order;
}

std::vector<std::vector<Element>> Subpower::sorted_elements() const {
  std::vector<std::vector<Element>> out;
  out.reserve(count_);
  for (std::size_t i : lex_order()) out.push_back(vector_at(i));
  return out;
}

std::optional<Term> Subpower::term_for(
    std::size_t i, const FiniteAlgebra& signature,
    std::span<const std::size_t> generator_vars, std::size_t max_nodes) const {
  if (!tracks_origins() || i >= count_) return std::nullopt;
  // Node counts first so oversized trees are rejected before building.
  std::unordered_map<std::size_t, std::size_t> nodes;
  std::function<std::size_t(std::size_t)> count_nodes =
      [&](std::size_t e) -> std::size_t {
    if (auto it = nodes.find(e); it != nodes.end()) return it->second;
    const auto& o = origins_[e];
    std::size_t c = 1;
    if (o.kind == Origin::Kind::Operation) {
      for (std::size_t a : o.args) {
        c += count_nodes(a);
        if (c > max_nodes) break;
      }
    }
    c = std::min(c, max_nodes + 1);
    nodes.emplace(e, c);
    return c;
  };
  if (count_nodes(i) > max_nodes) return std::nullopt;

  std::function<Term(std::size_t)> build = [&](std::size_t e) -> Term {
    const auto& o = origins_[e];
    if (o.kind == Origin::Kind::Generator) {
      return Term::variable(generator_vars[o.generator]);
    }
    std::vector<Term> args;
    args.reserve(o.args.size());
    for (std::size_t a : o.args) args.push_back(build(a));
    return Term::apply(signature.operations()[o.op].name(), std::move(args));
  };
  return build(i);
}

struct SubpowerClosure::Impl {
  Impl(std::size_t width, bool track) : builder(width, track) {}

  SubpowerBuilder builder;
  std::vector<const OperationTable*> ops;
  std::vector<std::vector<const Element*>> tables;
  std::vector<std::size_t> carrier;
  std::size_t budget = 0;
  bool track = false;
  std::size_t next = 0;
  State state = State::Open;
  std::vector<std::size_t> idx;

  bool add(Subpower::Origin&& origin) {
    if (builder.commit(std::move(origin)) && builder.size() > budget) {
      state = State::OverBudget;
      return false;
    }
    return true;
  }

  // Applies every operation to the index tuples drawn from 0..i that
  // contain i, each tuple once, keyed by the first position holding i.
  void process(std::size_t i) {
    const std::size_t width = carrier.size();
    for (std::size_t o = 0; o < ops.size(); ++o) {
      const std::size_t k = ops[o]->arity();
      if (k == 0) continue;
      idx.assign(k, 0);
      for (std::size_t first = 0; first < k; ++first) {
        if (first > 0 && i == 0) break;
        std::fill(idx.begin(), idx.end(), 0);
        idx[first] = i;
        while (true) {
          auto* s = builder.scratch();
          for (std::size_t j = 0; j < width; ++j) {
            std::size_t flat = 0;
            for (std::size_t pos = 0; pos < k; ++pos) {
              flat = flat * carrier[j] + builder.row(idx[pos])[j];
            }
            s[j] = static_cast<Subpower::Coord>(tables[o][j][flat]);
          }
          Subpower::Origin origin{Subpower::Origin::Kind::Operation, 0, o, {}};
          if (track) origin.args = idx;
          if (!add(std::move(origin))) return;
          // Odometer over every position except `first`.
          std::size_t pos = k;
          while (pos-- > 0) {
            if (pos == first) continue;
            const std::size_t bound = pos < first ? i : i + 1;
            if (++idx[pos] < bound) break;
            idx[pos] = 0;
          }
          if (pos == static_cast<std::size_t>(-1)) break;
        }
      }
    }
  }
};

SubpowerClosure::SubpowerClosure(
    std::span<const FiniteAlgebra* const> factors,
    std::span<const std::vector<Element>> generators, std::size_t budget,
    bool track_origins) {
  const std::size_t width = factors.size();
  if (width == 0) throw StructureError("subpower width must be at least 1");
  const FiniteAlgebra& base = *factors[0];
  for (const auto* f : factors) {
    if (!base.same_signature(*f)) {
      throw StructureError("factors '" + base.name() + "' and '" + f->name() +
                           "' have different signatures");
    }
  }
  impl_ = std::make_unique<Impl>(width, track_origins);
  Impl& m = *impl_;
  m.budget = budget;
  m.track = track_origins;
  // tables[op][coord] in base's operation order.
  m.carrier.resize(width);
  for (std::size_t j = 0; j < width; ++j) m.carrier[j] = factors[j]->size();
  for (const auto& op : base.operations()) {
    m.ops.push_back(&op);
    std::vector<const Element*> t(width);
    for (std::size_t j = 0; j < width; ++j) {
      t[j] = factors[j]->op(op.name()).table().data();
    }
    m.tables.push_back(std::move(t));
  }

  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto& gen = generators[g];
    if (gen.size() != width) {
      throw StructureError("generator length " + std::to_string(gen.size()) +
                           " does not match width " + std::to_string(width));
    }
    for (std::size_t j = 0; j < width; ++j) {
      if (gen[j] >= m.carrier[j]) {
        throw StructureError("generator coordinate outside carrier");
      }
    }
  }
  for (std::size_t g = 0; g < generators.size(); ++g) {
    auto* s = m.builder.scratch();
    for (std::size_t j = 0; j < width; ++j) {
      s[j] = static_cast<Subpower::Coord>(generators[g][j]);
    }
    if (!m.add({Subpower::Origin::Kind::Generator, g, 0, {}})) return;
  }
  for (std::size_t o = 0; o < m.ops.size(); ++o) {
    if (m.ops[o]->arity() != 0) continue;
    auto* s = m.builder.scratch();
    for (std::size_t j = 0; j < width; ++j) {
      s[j] = static_cast<Subpower::Coord>(m.tables[o][j][0]);
    }
    if (!m.add({Subpower::Origin::Kind::Operation, 0, o, {}})) return;
  }
  if (m.builder.size() == 0) m.state = State::Closed;
}

SubpowerClosure::~SubpowerClosure() = default;
SubpowerClosure::SubpowerClosure(SubpowerClosure&&) noexcept = default;
SubpowerClosure& SubpowerClosure::operator=(SubpowerClosure&&) noexcept =
    default;

SubpowerClosure::State SubpowerClosure::state() const noexcept {
  return impl_->state;
}

SubpowerClosure::State SubpowerClosure::step() {
  Impl& m = *impl_;
  if (m.state != State::Open) return m.state;
  m.process(m.next++);
  if (m.state == State::Open && m.next == m.builder.size()) {
    m.state = State::Closed;
  }
  return m.state;
}

SubpowerClosure::State SubpowerClosure::run() {
  while (step() == State::Open) {
  }
  return impl_->state;
}

const Subpower& SubpowerClosure::elements() const noexcept {
  return impl_->builder.view();
}

Subpower SubpowerClosure::take() && { return impl_->builder.finish(); }

std::optional<Subpower> generate_subproduct(
    std::span<const FiniteAlgebra* const> factors,
    std::span<const std::vector<Element>> generators, std::size_t budget,
    bool track_origins) {
  SubpowerClosure c(factors, generators, budget, track_origins);
  if (c.run() != SubpowerClosure::State::Closed) return std::nullopt;
  return std::move(c).take();
}

std::optional<Subpower> generate_subpower(
    const FiniteAlgebra& alg, std::size_t width,
    std::span<const std::vector<Element>> generators, std::size_t budget,
    bool track_origins) {
  std::vector<const FiniteAlgebra*> factors(width, &alg);
  return generate_subproduct(factors, generators, budget, track_origins);
}

}  // namespace ualg
