#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mloop/classify.hpp>
#include <mloop/commands.hpp>
#include <mloop/instance.hpp>
#include <mloop/scalar_expr.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace mloop;

namespace {

std::string corpus(const std::string& name) {
  return std::string(MLOOP_CORPUS_DIR) + "/" + name;
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out;
  int code = run_command(args, out);
  return {code, out.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("exit codes follow the verdict contract") {
  // 0: success / true verdict
  CHECK(run({"grade", corpus("f1_basic.mloop")}).code == 0);
  CHECK(run({"isomorphic", corpus("f1_basic.mloop"), "s1", "s2"}).code == 0);
  CHECK(run({"check-simple", corpus("f1_basic.mloop"), "s1"}).code == 0);

  // 1: clean false verdict
  CHECK(run({"isomorphic", corpus("f1_basic.mloop"), "s1", "s3"}).code == 1);
  CHECK(run({"isomorphic", corpus("f2_outer.mloop"), "v1", "v1neg"}).code == 1);

  // 2: input errors of any sort
  CHECK(run({"grade", corpus("duplicate_m.mloop")}).code == 2);
  CHECK(run({"grade", corpus("bad_syntax.mloop")}).code == 2);
  CHECK(run({"grade", corpus("not_dominant.mloop")}).code == 2);
  CHECK(run({"grade", corpus("zero_point.mloop")}).code == 2);
  CHECK(run({"grade", corpus("no_such_file.mloop")}).code == 2);
  CHECK(run({"isomorphic", corpus("f1_basic.mloop"), "s1", "nosuch"}).code == 2);
  CHECK(run({"canonical", corpus("f1_basic.mloop")}).code == 2);  // missing spec name
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate", corpus("f1_basic.mloop")}).code == 2);
}

TEST_CASE("error reports are single lines with a kind") {
  RunResult r = run({"grade", corpus("duplicate_m.mloop")});
  CHECK(r.code == 2);
  CHECK(r.out.substr(0, 7) == "error: ");
  CHECK(r.out.find("DuplicateEvaluationClass") != std::string::npos);
  // exactly one line
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);

  RunResult s = run({"grade", corpus("bad_syntax.mloop")});
  CHECK(s.out.find("SyntaxError") != std::string::npos);
  CHECK(s.out.find("at offset") != std::string::npos);
}

TEST_CASE("reports are deterministic across repeated runs") {
  std::vector<std::vector<std::string>> invocations = {
      {"grade", corpus("multivar.mloop")},
      {"auto-outer", corpus("d4_triality.mloop")},
      {"isomorphic", corpus("f2_outer.mloop"), "v1", "v1dual"},
      {"canonical", corpus("torus_a2.mloop"), "s"},
      {"orbit", corpus("multivar.mloop"), "p"},
      {"check-simple", corpus("f1_basic.mloop"), "s3"},
  };
  for (auto& args : invocations) {
    RunResult a = run(args);
    RunResult b = run(args);
    CAPTURE(args[0]);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);

    std::vector<std::string> jargs = args;
    jargs.push_back("--json");
    RunResult ja = run(jargs);
    RunResult jb = run(jargs);
    CHECK(ja.out == jb.out);
  }
}

TEST_CASE("--json output is valid json with the same verdicts") {
  RunResult r = run({"isomorphic", corpus("f2_outer.mloop"), "v1", "v1dual", "--json"});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "isomorphic");
  CHECK(j["isomorphic"] == true);
  CHECK(j["pi"].is_array());

  RunResult f = run({"isomorphic", corpus("f2_outer.mloop"), "v1", "v1neg", "--json"});
  CHECK(f.code == 1);
  nlohmann::json jf = nlohmann::json::parse(f.out);
  CHECK(jf["isomorphic"] == false);

  RunResult g = run({"grade", corpus("torus_a2.mloop"), "--json"});
  nlohmann::json jg = nlohmann::json::parse(g.out);
  CHECK(jg["total"] == 8);
  CHECK(jg["components"].size() == 3);

  RunResult o = run({"orbit", corpus("multivar.mloop"), "p", "--json"});
  nlohmann::json jo = nlohmann::json::parse(o.out);
  CHECK(jo["size"] == 8);
  CHECK(jo["members"].size() == 8);
}

TEST_CASE("canonical output round-trips through the expression grammar") {
  // Canonical points are printed in the exact scalar grammar, so parsing
  // them back and rebuilding the map must reproduce canonical_form.
  Instance inst = parse_instance(slurp(corpus("torus_a2.mloop")));
  EquivariantMapCanonical direct = canonical_form(inst.spec("s"));

  RunResult r = run({"canonical", corpus("torus_a2.mloop"), "s", "--json"});
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j["entries"].size() == direct.entries.size());

  for (size_t i = 0; i < direct.entries.size(); ++i) {
    const auto& entry = j["entries"][i];
    TorusPoint p;
    for (const auto& coord : entry["point"])
      p.coords.push_back(parse_scalar_expression(coord.get<std::string>()));
    Weight w;
    for (const auto& c : entry["weight"])
      w.coords.push_back(Rational(c.get<long>()));
    CHECK((p == direct.entries[i].first));
    CHECK((w == direct.entries[i].second));
  }

  // Isomorphic specs print byte-identical canonical reports.
  RunResult a = run({"canonical", corpus("torus_a2.mloop"), "s"});
  RunResult b = run({"canonical", corpus("torus_a2.mloop"), "t"});
  auto body = [](const std::string& text) {
    // drop the "spec: <name>" line; everything else must agree
    std::istringstream in(text);
    std::string line, kept;
    while (std::getline(in, line))
      if (line.rfind("spec:", 0) != 0) kept += line + "\n";
    return kept;
  };
  CHECK(body(a.out) == body(b.out));
}

TEST_CASE("verify passes on a bundled document") {
  RunResult r = run({"verify", corpus("f1_basic.mloop")});
  CHECK(r.code == 0);
  CHECK(r.out.find("result: pass") != std::string::npos);
  CHECK(r.out.find("rank-stability: pass") != std::string::npos);
  CHECK(r.out.find("window-kernel: pass") != std::string::npos);
  CHECK(r.out.find("oracle: pass") != std::string::npos);
}

TEST_CASE("grade totals equal the algebra dimension") {
  for (const char* name : {"f1_basic.mloop", "f2_outer.mloop", "torus_a2.mloop",
                           "diagram_a3.mloop", "multivar.mloop", "d4_triality.mloop"}) {
    RunResult r = run({"grade", corpus(name), "--json"});
    REQUIRE(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    long total = 0;
    for (const auto& c : j["components"]) total += c["dim"].get<long>();
    CAPTURE(name);
    CHECK(total == j["total"].get<long>());

    Instance inst = parse_instance(slurp(corpus(name)));
    CHECK(static_cast<size_t>(total) == inst.algebra->dim());
  }
}

TEST_CASE("isomorphic witnesses are printed when the verdict is true") {
  RunResult r = run({"isomorphic", corpus("untwisted_swap.mloop"), "ab", "ba"});
  CHECK(r.code == 0);
  CHECK(r.out.find("isomorphic: true") != std::string::npos);
  CHECK(r.out.find("pi: (1, 0)") != std::string::npos);
  CHECK(r.out.find("gamma 0:") != std::string::npos);

  RunResult f = run({"isomorphic", corpus("untwisted_swap.mloop"), "ab", "other"});
  CHECK(f.code == 1);
  CHECK(f.out.find("isomorphic: false") != std::string::npos);
  CHECK(f.out.find("pi:") == std::string::npos);
}

TEST_CASE("usage problems report as errors") {
  RunResult r = run({"isomorphic", corpus("f1_basic.mloop")});
  CHECK(r.code == 2);
  CHECK(r.out.substr(0, 7) == "error: ");

  RunResult s = run({"--json"});
  CHECK(s.code == 2);
}
