#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ualg/congruence.hpp"
#include "ualg/corpus.hpp"
#include "ualg/harness.hpp"
#include "ualg/properties.hpp"

namespace ualg::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kInconclusive = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool json = false;
  std::size_t budget = kDefaultBudget;
  std::string algebra;
};

// A path that exists is loaded; otherwise the stem may name a built-in.
FiniteAlgebra resolve_algebra(const std::string& given) {
  if (given.empty()) throw UsageError("--algebra is required");
  if (fs::exists(given)) return load_algebra_file(given);
  const std::string stem = fs::path(given).stem().string();
  if (auto a = builtin_algebra(stem)) return *a;
  throw InputError(given + ": cannot open file");
}

int verdict_exit(const Verdict& v) {
  if (!v.holds) return kFailed;
  return v.exhaustive ? kOk : kInconclusive;
}

int search_exit(const TermSearchResult& r) {
  switch (r.status) {
    case SearchStatus::Found: return kOk;
    case SearchStatus::NotFound: return kFailed;
    case SearchStatus::Inconclusive: return kInconclusive;
  }
  return kUsage;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json classes_json(const LemmaClasses& c) {
  return {{"R", to_token(c.r)}, {"S", to_token(c.s)}, {"T", to_token(c.t)}};
}

RelClass rel_class(std::string_view token) {
  auto c = parse_rel_class(token);
  if (!c) throw UsageError("unknown relation class '" + std::string(token) + "'");
  return *c;
}

// "cong" or "R=cong,S=refl,T=pos"; unnamed slots keep the first class.
LemmaClasses parse_classes(const std::string& given) {
  if (given.find('=') == std::string::npos) {
    const RelClass c = rel_class(given);
    return {c, c, c};
  }
  std::optional<RelClass> r, s, t;
  std::stringstream ss(given);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq != 1) {
      throw UsageError("malformed class assignment '" + item + "'");
    }
    const RelClass c = rel_class(item.substr(2));
    switch (item[0]) {
      case 'R': r = c; break;
      case 'S': s = c; break;
      case 'T': t = c; break;
      default: throw UsageError("unknown relation slot '" + item + "'");
    }
  }
  if (!r || !s || !t) throw UsageError("classes need R, S and T");
  return {*r, *s, *t};
}

void print_verdict(std::ostream& out, const std::string& what,
                   const Verdict& v) {
  out << what << ": " << v.status() << '\n';
  if (!v.counterexample) return;
  for (const auto& r : v.counterexample->relations) {
    out << "  " << r.name << " = " << relation_to_json(r.relation).dump()
        << '\n';
    if (r.witness) {
      out << "  " << r.name << " = R°R with R = "
          << relation_to_json(*r.witness).dump() << '\n';
    }
  }
  out << "  at";
  for (const auto& e : v.counterexample->elements) {
    out << ' ' << e.name << '=' << e.value;
  }
  out << '\n';
}

Json verdict_json(const Verdict& v) {
  Json j = {{"status", v.status()},
            {"holds", v.holds},
            {"exhaustive", v.exhaustive}};
  if (v.counterexample) {
    j["counterexample"] = counterexample_to_json(*v.counterexample);
  }
  return j;
}

struct CheckOptions {
  std::string lemma;
  std::string classes;
  std::string property;
  std::string replay;
  std::string middle;
  std::string target;
};

int run_replay(const Globals& g, const CheckOptions& o, std::ostream& out) {
  const FiniteAlgebra alg = resolve_algebra(g.algebra);
  const Json doc = parse_json_text(read_text_file(o.replay), o.replay);
  const Json& cxj = doc.contains("counterexample") ? doc.at("counterexample")
                                                   : doc;
  const Counterexample cx = counterexample_from_json(cxj);
  bool ok = false;
  if (auto p = parse_property(cx.check)) {
    ok = reverify_property_counterexample(alg, *p, cx);
  } else if (auto k = parse_lemma_kind(cx.check)) {
    std::string given = o.classes;
    LemmaClasses classes{};
    if (given.empty() && doc.contains("classes")) {
      const Json& c = doc.at("classes");
      classes = {rel_class(c.at("R").get<std::string>()),
                 rel_class(c.at("S").get<std::string>()),
                 rel_class(c.at("T").get<std::string>())};
    } else if (!given.empty()) {
      classes = parse_classes(given);
    } else {
      throw UsageError("replaying a lemma counterexample needs --classes");
    }
    ok = reverify_lemma_counterexample(alg, *k, classes, cx);
  } else {
    throw UsageError("unknown check '" + cx.check + "' in replay file");
  }
  if (g.json) {
    emit(out, {{"algebra", alg.name()},
               {"replay", cx.check},
               {"reverified", ok}});
  } else {
    out << cx.check << ": counterexample "
        << (ok ? "re-verified" : "does not re-verify") << '\n';
  }
  if (!ok) {
    std::cerr << "ualg: counterexample does not replay on " << alg.name()
              << '\n';
    return kUsage;
  }
  return kFailed;
}

int run_check(const Globals& g, const CheckOptions& o, std::ostream& out) {
  if (!o.replay.empty()) return run_replay(g, o, out);
  if (o.lemma.empty() == o.property.empty()) {
    throw UsageError("check needs exactly one of --lemma, --property, --replay");
  }
  const FiniteAlgebra alg = resolve_algebra(g.algebra);
  if (!o.lemma.empty()) {
    auto k = parse_lemma_kind(o.lemma);
    if (!k) throw UsageError("unknown lemma '" + o.lemma + "'");
    const LemmaClasses c = parse_classes(o.classes.empty() ? "cong" : o.classes);
    Verdict v;
    if (*k == LemmaKind::MajorityInequality) {
      if (c.r != c.s || c.s != c.t) {
        throw UsageError("the majority inequality takes a single class");
      }
      v = check_majority_inequality(alg, c.r, g.budget);
    } else {
      v = check_lemma(alg, *k, c, g.budget);
    }
    if (g.json) {
      Json j = verdict_json(v);
      j["algebra"] = alg.name();
      j["lemma"] = to_token(*k);
      j["classes"] = classes_json(c);
      emit(out, j);
    } else {
      print_verdict(out, std::string(to_token(*k)), v);
    }
    return verdict_exit(v);
  }
  auto p = parse_property(o.property);
  if (!p) throw UsageError("unknown property '" + o.property + "'");
  Verdict v;
  const bool hetero = !o.middle.empty() || !o.target.empty();
  if (hetero) {
    if (*p != Property::DD && *p != Property::PP) {
      throw UsageError("--middle/--target only apply to dd and pp");
    }
    const FiniteAlgebra a = resolve_algebra(o.middle.empty() ? g.algebra
                                                             : o.middle);
    const FiniteAlgebra u = resolve_algebra(o.target.empty() ? g.algebra
                                                             : o.target);
    if (!alg.same_signature(a) || !alg.same_signature(u)) {
      throw UsageError("the three algebras must share a signature");
    }
    v = *p == Property::DD ? check_dd(alg, a, u, g.budget)
                           : check_pp(alg, a, u, g.budget);
  } else {
    v = check_property(alg, *p, g.budget);
  }
  if (g.json) {
    Json j = verdict_json(v);
    j["algebra"] = alg.name();
    j["property"] = to_token(*p);
    emit(out, j);
  } else {
    print_verdict(out, std::string(to_token(*p)), v);
  }
  return verdict_exit(v);
}

int run_info(const Globals& g, std::ostream& out) {
  const FiniteAlgebra alg = resolve_algebra(g.algebra);
  if (g.json) {
    Json ops = Json::array();
    for (const auto& op : alg.operations()) {
      ops.push_back({{"name", op.name()}, {"arity", op.arity()}});
    }
    emit(out, {{"name", alg.name()}, {"size", alg.size()}, {"operations", ops}});
  } else {
    out << alg.name() << ": " << alg.size() << " elements\n";
    for (const auto& op : alg.operations()) {
      out << "  " << op.name() << "/" << op.arity() << '\n';
    }
  }
  return kOk;
}

int run_congruences(const Globals& g, std::ostream& out) {
  const FiniteAlgebra alg = resolve_algebra(g.algebra);
  const auto cs = all_congruences(alg);
  if (g.json) {
    Json list = Json::array();
    for (const auto& c : cs) list.push_back(c.block_lists());
    emit(out, {{"algebra", alg.name()}, {"count", cs.size()},
               {"congruences", list}});
  } else {
    out << cs.size() << " congruences\n";
    for (const auto& c : cs) out << "  " << Json(c.block_lists()).dump() << '\n';
  }
  return kOk;
}

int run_lattice(const Globals& g, std::ostream& out) {
  const FiniteAlgebra alg = resolve_algebra(g.algebra);
  const CongLattice l(alg);
  const auto perm = permutability(l);
  const bool modular = is_modular(l), distributive = is_distributive(l);
  if (g.json) {
    Json elements = Json::array();
    for (const auto& c : l.elements()) elements.push_back(c.block_lists());
    std::vector<std::vector<std::size_t>> meets(l.size()), joins(l.size());
    for (std::size_t a = 0; a < l.size(); ++a) {
      for (std::size_t b = 0; b < l.size(); ++b) {
        meets[a].push_back(l.meet(a, b));
        joins[a].push_back(l.join(a, b));
      }
    }
    emit(out, {{"algebra", alg.name()},
               {"size", l.size()},
               {"elements", elements},
               {"meet", meets},
               {"join", joins},
               {"modular", modular},
               {"distributive", distributive},
               {"perm2", perm.perm2},
               {"perm3", perm.perm3}});
  } else {
    out << "Con(" << alg.name() << "): " << l.size() << " elements\n"
        << "  modular: " << modular << "\n  distributive: " << distributive
        << "\n  2-permutable: " << perm.perm2
        << "\n  3-permutable: " << perm.perm3 << '\n';
  }
  return kOk;
}

int run_find_term(const Globals& g, const std::string& kind,
                  std::ostream& out) {
  auto sys = named_system(kind);
  if (!sys) throw UsageError("unknown term kind '" + kind + "'");
  const FiniteAlgebra alg = resolve_algebra(g.algebra);
  const auto r = solve_identity_system(alg, *sys, g.budget);
  if (g.json) {
    Json j = {{"algebra", alg.name()},
              {"kind", kind},
              {"status", to_token(r.status)},
              {"found", r.found()},
              {"witness_tables", witnesses_to_json(r)}};
    if (!r.note.empty()) j["note"] = r.note;
    emit(out, j);
  } else {
    out << kind << ": " << to_token(r.status) << '\n';
    for (const auto& [name, w] : r.witnesses) {
      out << "  " << name;
      if (w.term) out << " = " << w.term->to_string();
      out << '\n';
      for (std::size_t i = 0; i < w.coords.size(); ++i) {
        out << "    " << name << Json(w.coords[i]).dump() << " = "
            << w.values[i] << '\n';
      }
    }
    if (!r.note.empty()) out << "  " << r.note << '\n';
  }
  return search_exit(r);
}

int run_enumerate(const Globals& g, const std::string& cls,
                  std::ostream& out) {
  const FiniteAlgebra alg = resolve_algebra(g.algebra);
  const RelClass c = rel_class(cls);
  const auto fam = enumerate_relations(alg, c, g.budget);
  if (g.json) {
    Json rels = Json::array();
    for (std::size_t i = 0; i < fam.relations.size(); ++i) {
      Json r = {{"pairs", relation_to_json(fam.relations[i])}};
      if (i < fam.witnesses.size()) {
        r["witness"] = relation_to_json(fam.witnesses[i]);
      }
      rels.push_back(std::move(r));
    }
    emit(out, {{"algebra", alg.name()},
               {"class", to_token(c)},
               {"count", fam.relations.size()},
               {"exhaustive", fam.exhaustive},
               {"relations", rels}});
  } else {
    out << fam.relations.size() << " relations in class " << to_token(c)
        << (fam.exhaustive ? "" : " (sampled)") << '\n';
    for (const auto& r : fam.relations) {
      out << "  " << relation_to_json(r).dump() << '\n';
    }
  }
  return fam.exhaustive ? kOk : kInconclusive;
}

int report_exit(const Report& r) {
  if (!r.violations.empty()) return kFailed;
  for (const auto& [name, f] : r.facts.facts) {
    if (f.truth() == Truth::Unknown) return kInconclusive;
  }
  return kOk;
}

void print_report(std::ostream& out, const Report& r, bool timings) {
  out << r.facts.algebra << " (" << r.facts.size << " elements)\n";
  for (const auto& name : fact_names()) {
    const Fact& f = r.facts.at(name);
    out << "  " << name << ": " << f.status;
    if (timings) out << "  [" << f.runtime_ms << " ms]";
    out << '\n';
  }
  out << "ledger:";
  for (const auto& e : implication_ledger()) {
    out << ' ' << e.id << '=' << r.ledger.outcomes.at(e.id);
  }
  out << '\n';
  if (r.violations.empty()) {
    out << "no violations\n";
  } else {
    for (const auto& v : r.violations) {
      out << "VIOLATION " << v.ledger_id << ": " << v.detail << '\n';
    }
  }
}

int run_verify(const Globals& g, const std::string& expect, bool timings,
               std::ostream& out) {
  const FiniteAlgebra alg = resolve_algebra(g.algebra);
  std::optional<Json> fixture;
  if (!expect.empty()) {
    fixture = parse_json_text(read_text_file(expect), expect);
  }
  const Report r = verify_algebra(alg, g.budget, fixture ? &*fixture : nullptr);
  if (g.json) {
    emit(out, report_to_json(r, timings));
  } else {
    print_report(out, r, timings);
  }
  return report_exit(r);
}

std::vector<fs::path> corpus_files(const fs::path& dir) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) throw InputError(dir.string() + ": not a directory");
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

void write_file(const fs::path& p, const Json& j) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw InputError(p.string() + ": cannot write file");
  f << j.dump(2) << '\n';
}

int run_corpus(const Globals& g, const std::string& dir_opt, bool regen,
               bool export_builtins, std::ostream& out) {
  const fs::path dir = dir_opt.empty() ? fs::path(UALG_CORPUS_DIR) : fs::path(dir_opt);
  if (export_builtins) {
    fs::create_directories(dir);
    for (const auto& a : builtin_corpus()) {
      std::ofstream f(dir / (a.name() + ".json"), std::ios::binary);
      if (!f) throw InputError(dir.string() + ": cannot write corpus file");
      f << format_algebra_file(a);
      out << "wrote " << (dir / (a.name() + ".json")).string() << '\n';
    }
  }
  const fs::path expected = dir / "expected";
  int status = kOk;
  Json summary = Json::array();
  for (const auto& file : corpus_files(dir)) {
    const FiniteAlgebra alg = load_algebra_file(file);
    const fs::path fx = expected / file.filename();
    if (regen) {
      fs::create_directories(expected);
      const Report r = verify_algebra(alg, g.budget);
      write_file(fx, report_to_json(r, false));
      if (!r.violations.empty()) status = kFailed;
      summary.push_back({{"algebra", alg.name()},
                         {"fixture", fx.string()},
                         {"violations", r.violations.size()}});
      if (!g.json) out << "regenerated " << fx.string() << '\n';
      continue;
    }
    std::optional<Json> fixture;
    if (fs::exists(fx)) fixture = parse_json_text(read_text_file(fx), fx.string());
    const Report r = verify_algebra(alg, g.budget, fixture ? &*fixture : nullptr);
    std::size_t n = r.violations.size();
    if (!fixture) ++n;
    if (n != 0) status = kFailed;
    summary.push_back({{"algebra", alg.name()},
                       {"fixture", fixture.has_value()},
                       {"violations", n}});
    if (!g.json) {
      out << alg.name() << ": " << (n == 0 ? "ok" : "FAILED");
      if (!fixture) out << " (no fixture)";
      out << '\n';
      for (const auto& v : r.violations) {
        out << "  " << v.ledger_id << ": " << v.detail << '\n';
      }
    }
  }
  if (g.json) emit(out, {{"corpus", summary}});
  return status;
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out) {
  CLI::App app{"Finite algebra workbench: relations, congruences, lemma "
               "checks and term conditions"};
  app.name("ualg");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--budget", g.budget, "Closure size limit")
      ->check(CLI::PositiveNumber);
  app.add_option("--algebra", g.algebra,
                 "Algebra JSON file (or the name of a built-in)");

  auto* info = app.add_subcommand("info", "Carrier and signature");
  auto* congr = app.add_subcommand("congruences", "List all congruences");
  auto* lattice = app.add_subcommand("lattice", "Congruence lattice laws");

  CheckOptions co;
  auto* check = app.add_subcommand("check", "Check a lemma or property");
  check->add_option("--lemma", co.lemma,
                    "shifting | triangular | trapezoid | majority");
  check->add_option("--classes", co.classes,
                    "cong, refl, pos, equiv, all, or R=..,S=..,T=..");
  check->add_option("--property", co.property,
                    "difunctional-all | refl-symmetric | eeo-commute | "
                    "ppoppo | dd | pp | positive-are-equiv");
  check->add_option("--replay", co.replay,
                    "Re-verify a counterexample JSON file");
  check->add_option("--middle", co.middle, "Middle factor A for dd/pp");
  check->add_option("--target", co.target, "Target U for dd/pp");

  std::string kind;
  auto* find = app.add_subcommand("find-term", "Search for terms");
  find->add_option("--kind", kind,
                   "maltsev | pixley | majority | quaternary-pq | "
                   "quaternary-pqx | lipparini-rs")
      ->required();

  std::string cls;
  auto* enumerate = app.add_subcommand("enumerate", "List compatible relations");
  enumerate->add_option("--class", cls, "cong | refl | pos | equiv | all")
      ->required();

  std::string expect;
  bool timings = false;
  auto* verify = app.add_subcommand("verify", "Facts and implication ledger");
  verify->add_option("--expect", expect, "Fixture to compare against");
  verify->add_flag("--timings", timings, "Report per-fact runtimes");

  std::string dir;
  bool regen = false, export_builtins = false;
  auto* corpus = app.add_subcommand("corpus", "Check the bundled corpus");
  corpus->add_option("--dir", dir, "Corpus directory");
  corpus->add_flag("--regen", regen, "Rewrite the expected fixtures");
  corpus->add_flag("--export", export_builtins,
                   "Write the built-in algebras as JSON first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*info) return run_info(g, out);
    if (*congr) return run_congruences(g, out);
    if (*lattice) return run_lattice(g, out);
    if (*check) return run_check(g, co, out);
    if (*find) return run_find_term(g, kind, out);
    if (*enumerate) return run_enumerate(g, cls, out);
    if (*verify) return run_verify(g, expect, timings, out);
    if (*corpus) return run_corpus(g, dir, regen, export_builtins, out);
  } catch (const UsageError& e) {
    std::cerr << "ualg: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "ualg: " << e.what() << '\n';
    return kUsage;
  } catch (const StructureError& e) {
    std::cerr << "ualg: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ualg: " << e.what() << '\n';
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "ualg: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace ualg::cli
