#include "ualg/corpus.hpp"

#include <algorithm>
#include <functional>

namespace ualg {

namespace {

OperationTable binary(std::string name, std::size_t n,
                      const std::function<Element(Element, Element)>& f) {
  std::vector<Element> t;
  t.reserve(n * n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) t.push_back(f(a, b));
  }
  return OperationTable(std::move(name), 2, n, std::move(t));
}

std::vector<FiniteAlgebra> make_corpus() {
  std::vector<FiniteAlgebra> out;
  out.emplace_back("trivial-1", 1, std::vector<OperationTable>{});
  out.push_back(bare_set("bare-2", 2));
  out.push_back(bare_set("bare-3", 3));
  out.push_back(bare_set("bare-4", 4));
  out.push_back(cyclic_group("Z2", 2));
  out.push_back(cyclic_group("Z4", 4));
  out.emplace_back(
      "klein4", 4,
      std::vector<OperationTable>{
          binary("mul", 4, [](Element a, Element b) { return a ^ b; })});
  out.push_back(chain_lattice("chain2", 2));
  out.push_back(chain_lattice("chain3", 3));
  out.emplace_back(
      "bool2", 2,
      std::vector<OperationTable>{
          binary("and", 2, [](Element a, Element b) { return a & b; }),
          binary("or", 2, [](Element a, Element b) { return a | b; }),
          OperationTable("not", 1, 2, {1, 0}),
          OperationTable("zero", 0, 2, {0}),
          OperationTable("one", 0, 2, {1})});
  out.emplace_back(
      "impl2", 2,
      std::vector<OperationTable>{binary(
          "imp", 2, [](Element a, Element b) { return Element(!a || b); })});
  return out;
}

}  // namespace

FiniteAlgebra bare_set(std::string name, std::size_t n) {
  return FiniteAlgebra(std::move(name), n, {});
}

FiniteAlgebra cyclic_group(std::string name, std::size_t n) {
  return FiniteAlgebra(
      std::move(name), n,
      {binary("add", n, [n](Element a, Element b) { return (a + b) % n; })});
}

FiniteAlgebra chain_lattice(std::string name, std::size_t n) {
  return FiniteAlgebra(
      std::move(name), n,
      {binary("meet", n, [](Element a, Element b) { return std::min(a, b); }),
       binary("join", n, [](Element a, Element b) { return std::max(a, b); })});
}

const std::vector<FiniteAlgebra>& builtin_corpus() {
  static const std::vector<FiniteAlgebra> corpus = make_corpus();
  return corpus;
}

std::optional<FiniteAlgebra> builtin_algebra(std::string_view name) {
  for (const auto& a : builtin_corpus()) {
    if (a.name() == name) return a;
  }
  return std::nullopt;
}

}  // namespace ualg
