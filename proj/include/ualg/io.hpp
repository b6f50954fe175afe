#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ualg/algebra.hpp"
#include "ualg/binrel.hpp"
#include "ualg/terms.hpp"
#include "ualg/verdict.hpp"

namespace ualg {

using Json = nlohmann::json;

/// Unreadable or malformed input. what() starts with "source:line:col:"
/// for syntax errors and "source: at /json/pointer:" for content errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"name", "size", "operations": [{"name", "arity", "table"}]}.
FiniteAlgebra algebra_from_json(std::string_view text,
                                std::string_view source = "<input>");
Json algebra_to_json(const FiniteAlgebra& alg);
/// The file layout: one line per operation, keys in format order.
std::string format_algebra_file(const FiniteAlgebra& alg);
FiniteAlgebra load_algebra_file(const std::filesystem::path& path);

/// Reads a whole file; throws InputError.
std::string read_text_file(const std::filesystem::path& path);
Json parse_json_text(std::string_view text, std::string_view source);

/// Sorted [[a, b], ...].
Json relation_to_json(const BinRel& r);
BinRel relation_from_json(const Json& j, std::size_t dom, std::size_t cod);

/// {"check", "relations": [{"name", "dom", "cod", "pairs", ...}],
///  "elements": {name: value}}. Ternary relations add "x_size"/"a_size";
/// positive ones add "witness".
Json counterexample_to_json(const Counterexample& cx);
Counterexample counterexample_from_json(const Json& j);

/// {"arity", "coords", "values", "term"?} per witness.
Json witnesses_to_json(const TermSearchResult& res);

}  // namespace ualg
