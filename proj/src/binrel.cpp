#include "ualg/binrel.hpp"

#include <bit>
#include <stdexcept>

namespace ualg {

namespace {

void require_same_sorts(const BinRel& a, const BinRel& b, const char* what) {
  if (a.dom_size() != b.dom_size() || a.cod_size() != b.cod_size()) {
    throw std::invalid_argument(std::string(what) + ": relation sorts differ");
  }
}

void require_square(const BinRel& r, const char* what) {
  if (!r.is_square()) {
    throw std::invalid_argument(std::string(what) +
                                ": relation must be square");
  }
}

}  // namespace

BinRel::BinRel(std::size_t dom, std::size_t cod)
    : dom_(dom), cod_(cod), words_((cod + 63) / 64), bits_(dom * words_, 0) {}

BinRel BinRel::identity(std::size_t n) {
  BinRel r(n, n);
  for (std::size_t i = 0; i < n; ++i) r.set(i, i);
  return r;
}

BinRel BinRel::full(std::size_t dom, std::size_t cod) {
  BinRel r(dom, cod);
  for (std::size_t x = 0; x < dom; ++x) {
    for (std::size_t y = 0; y < cod; ++y) r.set(x, y);
  }
  return r;
}

BinRel BinRel::from_pairs(std::size_t dom, std::size_t cod,
                          std::span<const Pair> pairs) {
  BinRel r(dom, cod);
  for (auto [x, y] : pairs) {
    if (x >= dom || y >= cod) {
      throw std::out_of_range("pair (" + std::to_string(x) + "," +
                              std::to_string(y) + ") outside " +
                              std::to_string(dom) + "x" + std::to_string(cod));
    }
    r.set(x, y);
  }
  return r;
}

std::size_t BinRel::count() const noexcept {
  std::size_t c = 0;
  for (Word w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BinRel::is_reflexive() const noexcept {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < dom_; ++i) {
    if (!test(i, i)) return false;
  }
  return true;
}

bool BinRel::is_symmetric() const noexcept {
  if (!is_square()) return false;
  for (std::size_t x = 0; x < dom_; ++x) {
    for (std::size_t y = x + 1; y < cod_; ++y) {
      if (test(x, y) != test(y, x)) return false;
    }
  }
  return true;
}

bool BinRel::is_transitive() const noexcept {
  if (!is_square()) return false;
  return compose(*this, *this).subset_of(*this);
}

bool BinRel::subset_of(const BinRel& other) const {
  require_same_sorts(*this, other, "subset_of");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~other.bits_[i]) return false;
  }
  return true;
}

std::vector<Pair> BinRel::pairs() const {
  std::vector<Pair> out;
  for (std::size_t x = 0; x < dom_; ++x) {
    for (std::size_t y = 0; y < cod_; ++y) {
      if (test(x, y)) out.emplace_back(Element(x), Element(y));
    }
  }
  return out;
}

std::size_t BinRel::hash() const noexcept {
  std::size_t h = dom_ * 1000003u ^ cod_;
  for (Word w : bits_) h = (h ^ w) * 0x100000001b3ull;
  return h;
}

std::strong_ordering operator<=>(const BinRel& a, const BinRel& b) {
  if (auto c = a.dom_ <=> b.dom_; c != 0) return c;
  if (auto c = a.cod_ <=> b.cod_; c != 0) return c;
  for (std::size_t i = 0; i < a.bits_.size(); ++i) {
    const BinRel::Word diff = a.bits_[i] ^ b.bits_[i];
    if (diff == 0) continue;
    const int lowest = std::countr_zero(diff);
    return ((a.bits_[i] >> lowest) & 1u) ? std::strong_ordering::greater
                                         : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

BinRel compose(const BinRel& s, const BinRel& r) {
  if (r.cod_size() != s.dom_size()) {
    throw std::invalid_argument("compose: codomain of r (" +
                                std::to_string(r.cod_size()) +
                                ") differs from domain of s (" +
                                std::to_string(s.dom_size()) + ")");
  }
  BinRel out(r.dom_size(), s.cod_size());
  for (std::size_t x = 0; x < r.dom_size(); ++x) {
    auto dst = out.row(x);
    for (std::size_t y = 0; y < r.cod_size(); ++y) {
      if (!r.test(x, y)) continue;
      auto src = s.row(y);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
    }
  }
  return out;
}

BinRel converse(const BinRel& r) {
  BinRel out(r.cod_size(), r.dom_size());
  for (std::size_t x = 0; x < r.dom_size(); ++x) {
    for (std::size_t y = 0; y < r.cod_size(); ++y) {
      if (r.test(x, y)) out.set(y, x);
    }
  }
  return out;
}

BinRel meet(const BinRel& r, const BinRel& s) {
  require_same_sorts(r, s, "meet");
  BinRel out = r;
  for (std::size_t x = 0; x < r.dom_size(); ++x) {
    auto dst = out.row(x);
    auto src = s.row(x);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] &= src[w];
  }
  return out;
}

BinRel join_raw(const BinRel& r, const BinRel& s) {
  require_same_sorts(r, s, "join_raw");
  BinRel out = r;
  for (std::size_t x = 0; x < r.dom_size(); ++x) {
    auto dst = out.row(x);
    auto src = s.row(x);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
  }
  return out;
}

BinRel refl_close(const BinRel& r) {
  require_square(r, "refl_close");
  BinRel out = r;
  for (std::size_t i = 0; i < r.dom_size(); ++i) out.set(i, i);
  return out;
}

BinRel symm_close(const BinRel& r) {
  require_square(r, "symm_close");
  return join_raw(r, converse(r));
}

BinRel trans_close(const BinRel& r) {
  require_square(r, "trans_close");
  // Warshall on bit rows.
  BinRel out = r;
  const std::size_t n = r.dom_size();
  for (std::size_t k = 0; k < n; ++k) {
    auto via = std::vector<BinRel::Word>(out.row(k).begin(), out.row(k).end());
    for (std::size_t i = 0; i < n; ++i) {
      if (!out.test(i, k)) continue;
      auto dst = out.row(i);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= via[w];
    }
  }
  return out;
}

}  // namespace ualg
