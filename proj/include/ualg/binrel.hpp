#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"

namespace ualg {

using Pair = std::pair<Element, Element>;

/// Binary relation from {0..dom-1} to {0..cod-1} stored as a bit matrix,
/// one word-aligned row per domain element.
class BinRel {
 public:
  using Word = std::uint64_t;

  BinRel() = default;
  BinRel(std::size_t dom, std::size_t cod);

  static BinRel identity(std::size_t n);
  static BinRel full(std::size_t dom, std::size_t cod);
  static BinRel from_pairs(std::size_t dom, std::size_t cod,
                           std::span<const Pair> pairs);

  std::size_t dom_size() const noexcept { return dom_; }
  std::size_t cod_size() const noexcept { return cod_; }
  bool is_square() const noexcept { return dom_ == cod_; }

  bool test(std::size_t x, std::size_t y) const {
    return (bits_[x * words_ + y / 64] >> (y % 64)) & 1u;
  }
  void set(std::size_t x, std::size_t y) {
    bits_[x * words_ + y / 64] |= Word{1} << (y % 64);
  }
  void reset(std::size_t x, std::size_t y) {
    bits_[x * words_ + y / 64] &= ~(Word{1} << (y % 64));
  }

  std::span<const Word> row(std::size_t x) const {
    return {bits_.data() + x * words_, words_};
  }
  std::span<Word> row(std::size_t x) { return {bits_.data() + x * words_, words_}; }
  std::size_t words_per_row() const noexcept { return words_; }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }

  bool is_reflexive() const noexcept;
  bool is_symmetric() const noexcept;
  bool is_transitive() const noexcept;
  bool is_equivalence() const noexcept {
    return is_reflexive() && is_symmetric() && is_transitive();
  }
  /// Every pair of `this` is in `other` (same sorts required).
  bool subset_of(const BinRel& other) const;

  /// Related pairs in row-major order.
  std::vector<Pair> pairs() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const BinRel&, const BinRel&) = default;
  /// Sorts first by sorts, then lexicographically on the row-major bit
  /// sequence with absent < present.
  friend std::strong_ordering operator<=>(const BinRel& a, const BinRel& b);

 private:
  std::size_t dom_ = 0;
  std::size_t cod_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> bits_;
};

struct BinRelHash {
  std::size_t operator()(const BinRel& r) const noexcept { return r.hash(); }
};

/// sr: first r (X to Y), then s (Y to Z).
BinRel compose(const BinRel& s, const BinRel& r);
BinRel converse(const BinRel& r);
BinRel meet(const BinRel& r, const BinRel& s);
BinRel join_raw(const BinRel& r, const BinRel& s);
BinRel refl_close(const BinRel& r);
BinRel symm_close(const BinRel& r);
BinRel trans_close(const BinRel& r);
/// Least equivalence containing r.
inline BinRel equiv_close(const BinRel& r) {
  return trans_close(symm_close(refl_close(r)));
}

}  // namespace ualg
