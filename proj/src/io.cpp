#include "ualg/io.hpp"

#include <fstream>
#include <sstream>

namespace ualg {

namespace {

[[noreturn]] void fail_at(std::string_view source, const std::string& ptr,
                          const std::string& msg) {
  throw InputError(std::string(source) + ": at " + (ptr.empty() ? "/" : ptr) +
                   ": " + msg);
}

std::string child(const std::string& ptr, std::string_view key) {
  return ptr + "/" + std::string(key);
}

std::string child(const std::string& ptr, std::size_t i) {
  return ptr + "/" + std::to_string(i);
}

const Json& member(const Json& obj, std::string_view key,
                   std::string_view source, const std::string& ptr) {
  if (!obj.is_object()) fail_at(source, ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail_at(source, ptr, "missing key \"" + std::string(key) + "\"");
  }
  return *it;
}

std::size_t natural(const Json& j, std::string_view source,
                    const std::string& ptr) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    fail_at(source, ptr, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::string text(const Json& j, std::string_view source,
                 const std::string& ptr) {
  if (!j.is_string()) fail_at(source, ptr, "expected a string");
  return j.get<std::string>();
}

}  // namespace

Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points at the offending character.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte, text.size() + 1);
    for (std::size_t i = 0; i + 1 < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    // Drop the library's own prefix and position.
    if (auto p = what.find(": ", what.find("parse error"));
        p != std::string::npos) {
      what = what.substr(p + 2);
    }
    throw InputError(std::string(source) + ":" + std::to_string(line) + ":" +
                     std::to_string(col) + ": " + what);
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FiniteAlgebra algebra_from_json(std::string_view src, std::string_view source) {
  const Json j = parse_json_text(src, source);
  const std::string root;
  const std::string name = text(member(j, "name", source, root), source,
                                "/name");
  const std::size_t n = natural(member(j, "size", source, root), source,
                                "/size");
  if (n == 0 || n > kMaxCarrier) {
    fail_at(source, "/size",
            "size must be between 1 and " + std::to_string(kMaxCarrier));
  }
  const Json& ops = member(j, "operations", source, root);
  if (!ops.is_array()) fail_at(source, "/operations", "expected an array");
  std::vector<OperationTable> tables;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string p = child("/operations", i);
    const std::string op_name =
        text(member(ops[i], "name", source, p), source, child(p, "name"));
    const std::size_t arity =
        natural(member(ops[i], "arity", source, p), source, child(p, "arity"));
    for (std::size_t k = 0; k < i; ++k) {
      if (tables[k].name() == op_name) {
        fail_at(source, child(p, "name"),
                "duplicate operation \"" + op_name + "\"");
      }
    }
    const Json& t = member(ops[i], "table", source, p);
    const std::string tp = child(p, "table");
    if (!t.is_array()) fail_at(source, tp, "expected an array");
    std::size_t expected = 0;
    try {
      expected = checked_power(n, arity, std::size_t{1} << 26);
    } catch (const StructureError&) {
      fail_at(source, child(p, "arity"), "table would be too large");
    }
    if (t.size() != expected) {
      fail_at(source, tp,
              "expected " + std::to_string(expected) + " entries, got " +
                  std::to_string(t.size()));
    }
    std::vector<Element> values;
    values.reserve(expected);
    for (std::size_t k = 0; k < t.size(); ++k) {
      const std::size_t v = natural(t[k], source, child(tp, k));
      if (v >= n) {
        fail_at(source, child(tp, k),
                "value " + std::to_string(v) + " outside carrier of size " +
                    std::to_string(n));
      }
      values.push_back(static_cast<Element>(v));
    }
    tables.emplace_back(op_name, arity, n, std::move(values));
  }
  try {
    return FiniteAlgebra(name, n, std::move(tables));
  } catch (const StructureError& e) {
    fail_at(source, root, e.what());
  }
}

Json algebra_to_json(const FiniteAlgebra& alg) {
  Json ops = Json::array();
  for (const auto& op : alg.operations()) {
    ops.push_back({{"name", op.name()},
                   {"arity", op.arity()},
                   {"table", std::vector<Element>(op.table().begin(),
                                                  op.table().end())}});
  }
  return {{"name", alg.name()}, {"size", alg.size()}, {"operations", ops}};
}

std::string format_algebra_file(const FiniteAlgebra& alg) {
  std::string out = "{\n  \"name\": " + Json(alg.name()).dump() +
                    ",\n  \"size\": " + std::to_string(alg.size()) +
                    ",\n  \"operations\": [";
  const auto& ops = alg.operations();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    out += (i == 0 ? "\n    " : ",\n    ");
    out += "{\"name\": " + Json(op.name()).dump() +
           ", \"arity\": " + std::to_string(op.arity()) + ", \"table\": " +
           Json(std::vector<Element>(op.table().begin(), op.table().end()))
               .dump() +
           "}";
  }
  out += ops.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

FiniteAlgebra load_algebra_file(const std::filesystem::path& path) {
  return algebra_from_json(read_text_file(path), path.string());
}

Json relation_to_json(const BinRel& r) {
  Json out = Json::array();
  for (auto [a, b] : r.pairs()) out.push_back({a, b});
  return out;
}

BinRel relation_from_json(const Json& j, std::size_t dom, std::size_t cod) {
  if (!j.is_array()) throw InputError("relation: expected an array of pairs");
  BinRel r(dom, cod);
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() ||
        !p[1].is_number_unsigned()) {
      throw InputError("relation: malformed pair " + p.dump());
    }
    const auto a = p[0].get<std::size_t>(), b = p[1].get<std::size_t>();
    if (a >= dom || b >= cod) {
      throw InputError("relation: pair " + p.dump() + " out of range");
    }
    r.set(a, b);
  }
  return r;
}

Json counterexample_to_json(const Counterexample& cx) {
  Json rels = Json::array();
  for (const auto& r : cx.relations) {
    Json jr = {{"name", r.name},
               {"dom", r.relation.dom_size()},
               {"cod", r.relation.cod_size()},
               {"pairs", relation_to_json(r.relation)}};
    if (r.x_size != 0) {
      jr["x_size"] = r.x_size;
      jr["a_size"] = r.a_size;
    }
    if (r.witness) jr["witness"] = relation_to_json(*r.witness);
    rels.push_back(std::move(jr));
  }
  Json elems = Json::object();
  for (const auto& e : cx.elements) elems[e.name] = e.value;
  return {{"check", cx.check}, {"relations", rels}, {"elements", elems}};
}

Counterexample counterexample_from_json(const Json& j) {
  try {
    Counterexample cx;
    cx.check = j.at("check").get<std::string>();
    for (const auto& jr : j.at("relations")) {
      NamedRelation r;
      r.name = jr.at("name").get<std::string>();
      const auto dom = jr.at("dom").get<std::size_t>();
      const auto cod = jr.at("cod").get<std::size_t>();
      if (dom > kMaxCarrier * kMaxCarrier || cod > kMaxCarrier) {
        throw InputError("counterexample: relation too large");
      }
      r.relation = relation_from_json(jr.at("pairs"), dom, cod);
      if (jr.contains("x_size")) {
        r.x_size = jr.at("x_size").get<std::size_t>();
        r.a_size = jr.at("a_size").get<std::size_t>();
      }
      if (jr.contains("witness")) {
        // Witnesses of positive relations live on the same carrier.
        r.witness = relation_from_json(jr.at("witness"), dom, cod);
      }
      cx.relations.push_back(std::move(r));
    }
    for (const auto& [name, v] : j.at("elements").items()) {
      cx.elements.push_back({name, v.get<Element>()});
    }
    return cx;
  } catch (const Json::exception& e) {
    throw InputError(std::string("counterexample: ") + e.what());
  }
}

Json witnesses_to_json(const TermSearchResult& res) {
  Json out = Json::object();
  for (const auto& [name, w] : res.witnesses) {
    Json jw = {{"arity", w.arity}, {"coords", w.coords}, {"values", w.values}};
    if (w.term) jw["term"] = w.term->to_string();
    out[name] = std::move(jw);
  }
  return out;
}

}  // namespace ualg
