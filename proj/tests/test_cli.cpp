#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "ualg/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCorpus = UALG_CORPUS_DIR;

struct Run {
  int code;
  std::string out;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ualg");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  const int code = ualg::cli::cli_main(static_cast<int>(argv.size()),
                                       argv.data(), out);
  return {code, out.str()};
}

std::string alg(std::string_view name) {
  return kCorpus + "/" + std::string(name) + ".json";
}

fs::path temp_file(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / ("ualg_test_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("verify exits 0 with an empty violation list") {
  const auto r = run({"verify", "--algebra", alg("klein4"), "--json"});
  CHECK(r.code == 0);
  const auto j = ualg::Json::parse(r.out);
  CHECK(j["violations"].empty());
  CHECK(j["algebra"] == "klein4");
  CHECK(j["facts"]["maltsev"]["status"] == "found");
}

TEST_CASE("a failing lemma exits 1 and its counterexample replays") {
  const auto r = run({"check", "--algebra", alg("klein4"), "--lemma",
                      "triangular", "--classes", "cong", "--json"});
  CHECK(r.code == 1);
  const auto j = ualg::Json::parse(r.out);
  CHECK(j["status"] == "fails");
  REQUIRE(j.contains("counterexample"));
  const auto file = temp_file("tl.json", r.out);
  CHECK(run({"check", "--algebra", alg("klein4"), "--replay", file.string()})
            .code == 1);
  // Replayed on an algebra where it is not a counterexample.
  CHECK(run({"check", "--algebra", alg("Z2"), "--replay", file.string()})
            .code == 2);
}

TEST_CASE("property counterexamples replay") {
  for (auto [a, p] : {std::pair{"Z2", "dd"}, {"Z2", "pp"},
                      {"bare-3", "positive-are-equiv"},
                      {"chain2", "refl-symmetric"}}) {
    CAPTURE(p);
    const auto r =
        run({"check", "--json", "--algebra", alg(a), "--property", p});
    CHECK(r.code == 1);
    const auto file = temp_file("p.json", r.out);
    CHECK(run({"check", "--algebra", alg(a), "--replay", file.string()})
              .code == 1);
  }
  CHECK(run({"check", "--algebra", alg("bool2"), "--property", "dd"}).code ==
        0);
}

TEST_CASE("term searches") {
  auto r = run({"find-term", "--algebra", alg("bool2"), "--kind", "pixley",
                "--json"});
  CHECK(r.code == 0);
  auto j = ualg::Json::parse(r.out);
  CHECK(j["found"] == true);
  CHECK(j["witness_tables"]["p"]["values"].size() == 8);
  CHECK(run({"find-term", "--algebra", alg("chain2"), "--kind", "maltsev"})
            .code == 1);
  CHECK(run({"find-term", "--algebra", alg("impl2"), "--kind",
             "quaternary-pq"})
            .code == 0);
  CHECK(run({"--budget", "2", "find-term", "--algebra", alg("bool2"),
             "--kind", "pixley"})
            .code == 3);
}

TEST_CASE("other subcommands") {
  auto r = run({"info", "--algebra", alg("bool2"), "--json"});
  CHECK(r.code == 0);
  CHECK(ualg::Json::parse(r.out)["operations"].size() == 5);
  r = run({"congruences", "--algebra", alg("bare-3"), "--json"});
  CHECK(ualg::Json::parse(r.out)["count"] == 5);
  r = run({"lattice", "--algebra", alg("klein4"), "--json"});
  CHECK(ualg::Json::parse(r.out)["modular"] == true);
  CHECK(ualg::Json::parse(r.out)["distributive"] == false);
  r = run({"enumerate", "--algebra", alg("Z2"), "--class", "all", "--json"});
  CHECK(r.code == 0);
  CHECK(ualg::Json::parse(r.out)["exhaustive"] == true);
  // Built-in names resolve when no file exists.
  CHECK(run({"info", "--algebra", "klein4"}).code == 0);
  CHECK(run({"check", "--algebra", "Z2", "--property", "dd", "--middle",
             "Z4", "--target", "Z2"})
            .code == 1);
  CHECK(run({"check", "--algebra", "Z2", "--lemma", "majority", "--classes",
             "R=refl,S=refl,T=refl"})
            .code == 0);
  CHECK(run({"corpus"}).code == 0);
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"info"}).code == 2);
  CHECK(run({"info", "--algebra", "/nonexistent/x.json"}).code == 2);
  CHECK(run({"check", "--algebra", "Z2"}).code == 2);
  CHECK(run({"check", "--algebra", "Z2", "--lemma", "nope"}).code == 2);
  CHECK(run({"check", "--algebra", "Z2", "--lemma", "shifting", "--classes",
             "R=cong,S=bogus,T=cong"})
            .code == 2);
  CHECK(run({"check", "--algebra", "Z2", "--lemma", "majority", "--classes",
             "R=cong,S=refl,T=cong"})
            .code == 2);
  CHECK(run({"check", "--algebra", "Z2", "--property", "dd", "--middle",
             "bool2"})
            .code == 2);
  CHECK(run({"find-term", "--algebra", "Z2", "--kind", "nope"}).code == 2);
  const auto bad = temp_file("bad.json", "{\"name\": \"x\", \"size\": 2,,}");
  CHECK(run({"info", "--algebra", bad.string()}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify against a fixture") {
  CHECK(run({"verify", "--algebra", alg("Z2"), "--expect",
             kCorpus + "/expected/Z2.json"})
            .code == 0);
  // Z4 against the Z2 fixture: different carrier.
  CHECK(run({"verify", "--algebra", alg("Z4"), "--expect",
             kCorpus + "/expected/Z2.json"})
            .code == 1);
  const auto a = run({"verify", "--json", "--algebra", alg("chain3")});
  const auto b = run({"verify", "--json", "--algebra", alg("chain3")});
  CHECK(a.out == b.out);
  const auto t = run({"verify", "--json", "--timings", "--algebra",
                      alg("chain3")});
  CHECK(t.out.find("runtime_ms") != std::string::npos);
}
