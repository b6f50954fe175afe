#include "ualg/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ualg {

std::size_t checked_power(std::size_t n, std::size_t k, std::size_t limit) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n != 0 && result > limit / n) {
      throw StructureError("table size " + std::to_string(n) + "^" +
                           std::to_string(k) + " is too large");
    }
    result *= n;
  }
  return result;
}

OperationTable::OperationTable(std::string name, std::size_t arity,
                               std::size_t carrier, std::vector<Element> table)
    : name_(std::move(name)),
      arity_(arity),
      carrier_(carrier),
      table_(std::move(table)) {
  if (name_.empty()) throw StructureError("operation name must be non-empty");
  const std::size_t expected = checked_power(carrier_, arity_, 1u << 26);
  if (table_.size() != expected) {
    throw StructureError("operation '" + name_ + "' of arity " +
                         std::to_string(arity_) + " needs " +
                         std::to_string(expected) + " entries, got " +
                         std::to_string(table_.size()));
  }
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] >= carrier_) {
      throw StructureError("operation '" + name_ + "' entry " +
                           std::to_string(i) + " = " +
                           std::to_string(table_[i]) + " is outside carrier");
    }
  }
}

Element OperationTable::operator()(std::span<const Element> args) const {
  if (args.size() != arity_) {
    throw StructureError("operation '" + name_ + "' expects " +
                         std::to_string(arity_) + " arguments");
  }
  std::size_t index = 0;
  for (Element a : args) {
    if (a >= carrier_) throw StructureError("argument outside carrier");
    index = index * carrier_ + a;
  }
  return table_[index];
}

FiniteAlgebra::FiniteAlgebra(std::string name, std::size_t size,
                             std::vector<OperationTable> ops)
    : name_(std::move(name)), size_(size), ops_(std::move(ops)) {
  if (size_ == 0) throw StructureError("carrier must be non-empty");
  if (size_ > kMaxCarrier) {
    throw StructureError("carrier size " + std::to_string(size_) +
                         " exceeds the supported maximum of " +
                         std::to_string(kMaxCarrier));
  }
  std::set<std::string> seen;
  for (const auto& op : ops_) {
    if (op.carrier() != size_) {
      throw StructureError("operation '" + op.name() +
                           "' was built for a different carrier");
    }
    if (!seen.insert(op.name()).second) {
      throw StructureError("duplicate operation name '" + op.name() + "'");
    }
  }
}

const OperationTable* FiniteAlgebra::find(
    std::string_view op_name) const noexcept {
  for (const auto& op : ops_) {
    if (op.name() == op_name) return &op;
  }
  return nullptr;
}

const OperationTable& FiniteAlgebra::op(std::string_view op_name) const {
  if (const auto* f = find(op_name)) return *f;
  throw StructureError("unknown operation '" + std::string(op_name) + "' in " +
                       name_);
}

bool FiniteAlgebra::same_signature(const FiniteAlgebra& other) const noexcept {
  if (ops_.size() != other.ops_.size()) return false;
  for (const auto& op : ops_) {
    const auto* match = other.find(op.name());
    if (match == nullptr || match->arity() != op.arity()) return false;
  }
  return true;
}

Term Term::variable(std::size_t index) {
  Term t;
  t.is_variable_ = true;
  t.index_ = index;
  return t;
}

Term Term::apply(std::string op, std::vector<Term> args) {
  Term t;
  t.is_variable_ = false;
  t.op_ = std::move(op);
  t.args_ = std::move(args);
  return t;
}

std::size_t Term::input_arity() const noexcept {
  if (is_variable_) return index_ + 1;
  std::size_t m = 0;
  for (const auto& a : args_) m = std::max(m, a.input_arity());
  return m;
}

std::size_t Term::node_count() const noexcept {
  std::size_t c = 1;
  for (const auto& a : args_) c += a.node_count();
  return c;
}

std::string Term::to_string() const {
  if (is_variable_) return "x" + std::to_string(index_);
  std::ostringstream os;
  os << op_;
  if (!args_.empty()) {
    os << '(';
    for (std::size_t i = 0; i < args_.size(); ++i) {
      if (i) os << ',';
      os << args_[i].to_string();
    }
    os << ')';
  }
  return os.str();
}

void validate_term(const FiniteAlgebra& alg, const Term& t) {
  if (t.is_variable()) return;
  const auto& f = alg.op(t.op());
  if (f.arity() != t.args().size()) {
    throw StructureError("term applies '" + t.op() + "' to " +
                         std::to_string(t.args().size()) +
                         " arguments, arity is " + std::to_string(f.arity()));
  }
  for (const auto& a : t.args()) validate_term(alg, a);
}

namespace {

Element eval_rec(const FiniteAlgebra& alg, const Term& t,
                 std::span<const Element> args) {
  if (t.is_variable()) return args[t.index()];
  const auto& f = alg.op(t.op());
  if (f.arity() != t.args().size()) {
    throw StructureError("arity mismatch applying '" + t.op() + "'");
  }
  std::size_t index = 0;
  for (const auto& child : t.args()) {
    index = index * alg.size() + eval_rec(alg, child, args);
  }
  return f.at(index);
}

}  // namespace

Element eval_term(const FiniteAlgebra& alg, const Term& t,
                  std::span<const Element> args) {
  if (args.size() < t.input_arity()) {
    throw StructureError("term " + t.to_string() + " needs " +
                         std::to_string(t.input_arity()) + " arguments");
  }
  for (Element a : args) {
    if (a >= alg.size()) throw StructureError("argument outside carrier");
  }
  return eval_rec(alg, t, args);
}

OperationTable term_operation(const FiniteAlgebra& alg, const Term& t,
                              std::size_t arity, std::string name) {
  validate_term(alg, t);
  if (t.input_arity() > arity) {
    throw StructureError("term " + t.to_string() + " uses more than " +
                         std::to_string(arity) + " variables");
  }
  const std::size_t n = alg.size();
  const std::size_t rows = checked_power(n, arity, 1u << 26);
  std::map<std::string, std::vector<Element>> memo;
  auto values = [&](auto&& self, const Term& s) -> const std::vector<Element>& {
    const std::string key = s.to_string();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Element> out(rows);
    if (s.is_variable()) {
      const std::size_t stride = checked_power(n, arity - 1 - s.index());
      for (std::size_t r = 0; r < rows; ++r) {
        out[r] = static_cast<Element>(r / stride % n);
      }
    } else {
      std::vector<const std::vector<Element>*> kids;
      for (const auto& c : s.args()) kids.push_back(&self(self, c));
      const auto& f = alg.op(s.op());
      for (std::size_t r = 0; r < rows; ++r) {
        std::size_t index = 0;
        for (const auto* k : kids) index = index * n + (*k)[r];
        out[r] = f.at(index);
      }
    }
    return memo.emplace(key, std::move(out)).first->second;
  };
  return OperationTable(std::move(name), arity, n, values(values, t));
}

FiniteAlgebra product_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!a.same_signature(b)) {
    throw StructureError("signature mismatch between '" + a.name() +
                         "' and '" + b.name() + "'");
  }
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  if (na * nb > kMaxCarrier) {
    throw StructureError("product carrier too large");
  }
  std::vector<OperationTable> ops;
  ops.reserve(a.operations().size());
  for (const auto& fa : a.operations()) {
    const auto& fb = b.op(fa.name());
    const std::size_t k = fa.arity();
    const std::size_t entries = checked_power(na * nb, k, 1u << 26);
    std::vector<Element> table(entries);
    std::vector<Element> args(k);
    for (std::size_t idx = 0; idx < entries; ++idx) {
      std::size_t rest = idx;
      for (std::size_t pos = k; pos-- > 0;) {
        args[pos] = static_cast<Element>(rest % (na * nb));
        rest /= na * nb;
      }
      std::size_t ia = 0;
      std::size_t ib = 0;
      for (Element e : args) {
        ia = ia * na + e / nb;
        ib = ib * nb + e % nb;
      }
      table[idx] = static_cast<Element>(fa.at(ia) * nb + fb.at(ib));
    }
    ops.emplace_back(fa.name(), k, na * nb, std::move(table));
  }
  return FiniteAlgebra(a.name() + "x" + b.name(), na * nb, std::move(ops));
}

FiniteAlgebra trivial_like(const FiniteAlgebra& alg) {
  std::vector<OperationTable> ops;
  for (const auto& f : alg.operations()) {
    ops.emplace_back(f.name(), f.arity(), 1, std::vector<Element>{0});
  }
  return FiniteAlgebra("1", 1, std::move(ops));
}

}  // namespace ualg
