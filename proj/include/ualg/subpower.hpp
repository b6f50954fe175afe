#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ualg/algebra.hpp"

namespace ualg {

inline constexpr std::size_t kDefaultBudget = 5'000'000;

/// A closed subset of a finite product B_0 x ... x B_{m-1} of algebras
/// sharing one signature. Elements are stored in discovery order; each
/// remembers how it was produced so that a term can be rebuilt for it.
class Subpower {
 public:
  using Coord = std::uint8_t;

  /// How an element entered the closure.
  struct Origin {
    enum class Kind { Generator, Operation } kind;
    std::size_t generator = 0;      // Generator: index into the input list
    std::size_t op = 0;             // Operation: index in factor 0's ops
    std::vector<std::size_t> args;  // Operation: element indices
  };

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return count_; }

  std::span<const Coord> at(std::size_t i) const {
    return {data_.data() + i * width_, width_};
  }
  std::vector<Element> vector_at(std::size_t i) const;

  std::optional<std::size_t> find(std::span<const Coord> v) const;
  std::optional<std::size_t> find(std::span<const Element> v) const;
  bool contains(std::span<const Element> v) const {
    return find(v).has_value();
  }

  /// Element indices sorted lexicographically by coordinates.
  std::vector<std::size_t> lex_order() const;
  /// Elements in lexicographic order.
  std::vector<std::vector<Element>> sorted_elements() const;

  bool tracks_origins() const noexcept { return !origins_.empty(); }
  const Origin& origin(std::size_t i) const { return origins_.at(i); }

  /// Rebuilds a term for element i, generator g becoming variable
  /// `generator_vars[g]`. Gives up past `max_nodes` nodes.
  std::optional<Term> term_for(std::size_t i, const FiniteAlgebra& signature,
                               std::span<const std::size_t> generator_vars,
                               std::size_t max_nodes = 4096) const;

 private:
  friend class SubpowerBuilder;

  std::size_t width_ = 0;
  std::size_t count_ = 0;
  std::vector<Coord> data_;
  std::vector<std::uint32_t> slots_;
  std::vector<Origin> origins_;
};

/// Incremental closure. Each step applies every operation to the tuples
/// whose newest entry is the next unprocessed element, so callers can
/// inspect elements as they appear and stop early.
class SubpowerClosure {
 public:
  enum class State { Open, Closed, OverBudget };

  /// Seeds the generators, then the constants. Throws StructureError on
  /// mismatched signatures or malformed generators.
  SubpowerClosure(std::span<const FiniteAlgebra* const> factors,
                  std::span<const std::vector<Element>> generators,
                  std::size_t budget = kDefaultBudget,
                  bool track_origins = false);
  ~SubpowerClosure();
  SubpowerClosure(SubpowerClosure&&) noexcept;
  SubpowerClosure& operator=(SubpowerClosure&&) noexcept;

  State state() const noexcept;
  State step();
  State run();

  /// Everything found so far; closed only once state() is Closed.
  const Subpower& elements() const noexcept;
  Subpower take() &&;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Least subset of the product of `factors` containing `generators` and the
/// constants, closed under every operation applied coordinatewise. Returns
/// nullopt when the closure would hold more than `budget` elements.
std::optional<Subpower> generate_subproduct(
    std::span<const FiniteAlgebra* const> factors,
    std::span<const std::vector<Element>> generators,
    std::size_t budget = kDefaultBudget, bool track_origins = false);

/// Closure inside alg^width.
std::optional<Subpower> generate_subpower(
    const FiniteAlgebra& alg, std::size_t width,
    std::span<const std::vector<Element>> generators,
    std::size_t budget = kDefaultBudget, bool track_origins = false);

}  // namespace ualg
