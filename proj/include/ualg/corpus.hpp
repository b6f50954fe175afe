#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ualg/algebra.hpp"

namespace ualg {

/// The bundled algebras, in report order: trivial-1, bare-2, bare-3,
/// bare-4, Z2, Z4, klein4, chain2, chain3, bool2, impl2.
const std::vector<FiniteAlgebra>& builtin_corpus();

std::optional<FiniteAlgebra> builtin_algebra(std::string_view name);

/// Helpers for hand-built algebras.
FiniteAlgebra bare_set(std::string name, std::size_t n);
FiniteAlgebra cyclic_group(std::string name, std::size_t n);
FiniteAlgebra chain_lattice(std::string name, std::size_t n);

}  // namespace ualg
