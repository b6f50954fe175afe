#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/binrel.hpp"

namespace ualg {

/// Largest carrier for which all partitions are enumerated (Bell(8) = 4140).
inline constexpr std::size_t kMaxLatticeCarrier = 8;

/// Compatible equivalence, held both as a canonical block-id vector
/// (restricted growth string) and as a relation.
class Congruence {
 public:
  /// Block ids may be arbitrary; they are renumbered in order of first use.
  static Congruence from_blocks(std::span<const std::size_t> block_of);
  /// Throws std::invalid_argument unless `r` is an equivalence.
  static Congruence from_relation(const BinRel& r);

  std::size_t size() const noexcept { return block_of_.size(); }
  const std::vector<std::size_t>& block_of() const noexcept {
    return block_of_;
  }
  std::size_t block_count() const noexcept { return blocks_; }
  const BinRel& relation() const noexcept { return rel_; }
  std::vector<std::vector<Element>> block_lists() const;

  friend bool operator==(const Congruence& a, const Congruence& b) {
    return a.block_of_ == b.block_of_;
  }

 private:
  std::vector<std::size_t> block_of_;
  std::size_t blocks_ = 0;
  BinRel rel_;
};

/// Least congruence containing `pairs`.
Congruence congruence_generated(const FiniteAlgebra& alg,
                                std::span<const Pair> pairs);

/// All set partitions of {0..n-1} as restricted growth strings, in
/// lexicographic order.
std::vector<std::vector<std::size_t>> enumerate_partitions(std::size_t n);

bool is_compatible_partition(const FiniteAlgebra& alg,
                             std::span<const std::size_t> block_of);

/// Every congruence, ordered by block count descending then block vector.
/// Throws StructureError when the carrier exceeds kMaxLatticeCarrier.
std::vector<Congruence> all_congruences(const FiniteAlgebra& alg);

class CongLattice {
 public:
  explicit CongLattice(const FiniteAlgebra& alg);

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Congruence>& elements() const noexcept {
    return elements_;
  }
  const Congruence& operator[](std::size_t i) const { return elements_[i]; }
  std::size_t bottom() const noexcept { return 0; }
  std::size_t top() const noexcept { return elements_.size() - 1; }

  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }
  std::size_t meet(std::size_t a, std::size_t b) const {
    return meet_[a * size() + b];
  }
  std::size_t join(std::size_t a, std::size_t b) const {
    return join_[a * size() + b];
  }
  std::optional<std::size_t> index_of(const Congruence& c) const;

 private:
  std::vector<Congruence> elements_;
  std::vector<bool> leq_;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
};

inline CongLattice congruence_lattice(const FiniteAlgebra& alg) {
  return CongLattice(alg);
}

/// Triples of lattice indices breaking the law, if any.
std::optional<std::array<std::size_t, 3>> modular_violation(
    const CongLattice& l);
std::optional<std::array<std::size_t, 3>> distributive_violation(
    const CongLattice& l);

inline bool is_modular(const CongLattice& l) {
  return !modular_violation(l).has_value();
}
inline bool is_distributive(const CongLattice& l) {
  return !distributive_violation(l).has_value();
}

/// (a, b) lies in one side of the permutability equation but not the other.
struct PermutabilityFailure {
  std::size_t alpha;
  std::size_t beta;
  Element a;
  Element b;
};

struct PermutabilityReport {
  bool perm2 = true;
  bool perm3 = true;
  std::optional<PermutabilityFailure> perm2_failure;
  std::optional<PermutabilityFailure> perm3_failure;
};

PermutabilityReport permutability(const CongLattice& l);

}  // namespace ualg
