#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ualg {

/// Carrier elements are the integers 0..n-1.
using Element = std::uint32_t;

/// Largest carrier supported. Subpower coordinates are stored as bytes.
inline constexpr std::size_t kMaxCarrier = 256;

/// Thrown for malformed algebras, terms and signature mismatches.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finitary operation given by its full table, row-major over args.
class OperationTable {
 public:
  OperationTable(std::string name, std::size_t arity, std::size_t carrier,
                 std::vector<Element> table);

  const std::string& name() const noexcept { return name_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t carrier() const noexcept { return carrier_; }
  std::span<const Element> table() const noexcept { return table_; }

  Element operator()(std::span<const Element> args) const;
  Element at(std::size_t flat_index) const { return table_[flat_index]; }

  friend bool operator==(const OperationTable&,
                         const OperationTable&) = default;

 private:
  std::string name_;
  std::size_t arity_;
  std::size_t carrier_;
  std::vector<Element> table_;
};

class FiniteAlgebra {
 public:
  FiniteAlgebra(std::string name, std::size_t size,
                std::vector<OperationTable> ops);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return size_; }
  const std::vector<OperationTable>& operations() const noexcept {
    return ops_;
  }

  /// nullptr when the algebra has no operation of that name.
  const OperationTable* find(std::string_view op_name) const noexcept;
  const OperationTable& op(std::string_view op_name) const;

  /// Same operation names with the same arities (order-insensitive).
  bool same_signature(const FiniteAlgebra& other) const noexcept;

  friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

 private:
  std::string name_;
  std::size_t size_;
  std::vector<OperationTable> ops_;
};

/// Expression tree over an algebra's signature.
class Term {
 public:
  static Term variable(std::size_t index);
  static Term apply(std::string op, std::vector<Term> args);

  bool is_variable() const noexcept { return is_variable_; }
  std::size_t index() const noexcept { return index_; }
  const std::string& op() const noexcept { return op_; }
  const std::vector<Term>& args() const noexcept { return args_; }

  /// One more than the largest variable index (0 for ground terms).
  std::size_t input_arity() const noexcept;
  std::size_t node_count() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  bool is_variable_ = true;
  std::size_t index_ = 0;
  std::string op_;
  std::vector<Term> args_;
};

/// Checks op names and arities of `t` against `alg`; throws StructureError.
void validate_term(const FiniteAlgebra& alg, const Term& t);

Element eval_term(const FiniteAlgebra& alg, const Term& t,
                  std::span<const Element> args);

/// Table of the term operation of `t` in `arity` variables, computed
/// bottom-up with one value vector per distinct subterm.
OperationTable term_operation(const FiniteAlgebra& alg, const Term& t,
                              std::size_t arity, std::string name = "t");

/// Componentwise product; pair (i, j) is encoded as i * |b| + j.
FiniteAlgebra product_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// One-element algebra with the signature of `alg`.
FiniteAlgebra trivial_like(const FiniteAlgebra& alg);

/// n^k, throwing StructureError on overflow past `limit`.
std::size_t checked_power(std::size_t n, std::size_t k,
                          std::size_t limit = std::size_t(1) << 40);

}  // namespace ualg
