#include "cyclab/catalog.hpp"
#include "cyclab/commands.hpp"
#include "cyclab/io.hpp"

#include "support.hpp"

#include <cstdlib>

using namespace cyclab;

namespace {

InputDocument doc_for(const std::vector<std::string>& args) {
  return parse_input(cmd_catalog(args).report.dump());
}

std::string error_of(const std::string& text) {
  try {
    parse_input(text);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("schema errors name the offending field") {
  CHECK(error_of(R"({"dim": 3})").find("schema_version") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 2, "dim": 3})").find("unsupported version") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1})").find("'dim'") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "dim": 3, "colour": 1})").find("'colour'") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "dim": 3, "structure_constants": [{"i": 2, "j": 1, "k": 3, "value": 1}]})")
            .find("i < j") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "dim": 3, "structure_constants": [{"i": 1, "j": 4, "k": 3, "value": 1}]})")
            .find("structure_constants[0].j") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "dim": 2, "structure_constants": [{"i": 1, "j": 2, "k": 1, "value": 1},
                     {"i": 1, "j": 2, "k": 1, "value": 2}]})")
            .find("duplicate") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "dim": 2, "gram": [[1, 0, 0], [0, 1, 0]]})").find("gram") !=
        std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "dim": 2, "gram": "ones"})").find("identity") != std::string::npos);
  const std::string syntax = error_of("{\"schema_version\": 1,\n  \"dim\": 3,,\n}");
  CHECK(syntax.find("line 2") != std::string::npos);
}

TEST_CASE("documents round trip") {
  const InputDocument d = doc_for({"Hnp1", "1", "2", "-1", "0.5", "1.5"});
  const json once = to_json(d);
  const json twice = to_json(parse_input(once.dump()));
  CHECK(once == twice);
  CHECK(once.dump() == twice.dump());

  // numbers survive serialization bit for bit
  InputDocument g;
  g.dim = 2;
  g.labels = {"a", "b"};
  g.entries = {{0, 1, 0, 0.1 + 0.2}};
  Matrix gram(2, 2);
  gram << 1.0 / 3.0, 1e-17, 1e-17, 2.0 / 7.0;
  g.gram = gram;
  const InputDocument back = parse_input(to_json(g).dump());
  CHECK(back.entries[0].value == 0.1 + 0.2);
  CHECK(*back.gram == gram);
}

TEST_CASE("analyze reports") {
  const CommandOptions opts;
  const json g = cmd_analyze(doc_for({"Gn", "1", "2"}), opts).report;
  CHECK_CLOSE(g["curvature"]["scalar"].get<double>(), -14.0, 1e-12);
  CHECK(g["homogeneous"]["verdict"] == "T1+T2");

  const json a = cmd_analyze(doc_for({"Abelian", "4"}), opts).report;
  CHECK(a["homogeneous"]["verdict"] == "zero");
  CHECK(a["curvature"]["flat"] == true);

  const json s = cmd_analyze(doc_for({"Sl2Cyclic", "1", "1"}), opts).report;
  CHECK(s["homogeneous"]["verdict"] == "T2");
  CHECK(s["curvature"]["ricci_signature"] == "(-,-,+)");
}

TEST_CASE("catalog documents pass their own expected checks") {
  const std::vector<std::vector<std::string>> cases = {
      {"Gn", "1", "2", "-3"},         {"Sl2Cyclic", "1", "1"}, {"HyperbolicHn", "2", "3"},
      {"H5", "1", "1", "1", "1", "0"}, {"E11", "1.5"},          {"DirectProduct", "Sl2Cyclic", "1", "2", "/", "Abelian", "1"},
      {"So3Biinv", "1"},              {"Heisenberg"}};
  for (const auto& c : cases) {
    CAPTURE(c[0]);
    const InputDocument d = doc_for(c);
    const CommandResult r = cmd_analyze(d, {});
    CHECK(r.exit_code == kExitOk);
    CHECK(r.report["expected_checks"]["pass"] == true);
    if (d.expected.contains("classification")) {
      const CommandResult k = cmd_classify(d, {});
      CHECK(k.exit_code == kExitOk);
      CHECK(k.report["expected_checks"]["pass"] == true);
    }
  }
  // G4(1,2,-3): s = -2(1 + 4 + 9 + 2 - 3 - 6)
  CHECK_CLOSE(doc_for({"Gn", "1", "2", "-3"}).expected["scalar"].get<double>(), -14.0, 1e-12);
}

TEST_CASE("a wrong expected value gives exit code 2") {
  InputDocument d = doc_for({"Gn", "1", "2"});
  d.expected = {{"scalar", -13.0}};
  CHECK(cmd_analyze(d, {}).exit_code == kExitValidation);
  d.expected = {{"nonsense", 1}};
  CHECK_THROWS_AS(cmd_analyze(d, {}), InvalidInput);
}

TEST_CASE("find-cyclic embeds a witness document") {
  const json h = cmd_find_cyclic(doc_for({"Heisenberg"}), {}).report;
  CHECK(h["feasibility"]["status"] == "certified_infeasible");

  CommandOptions opts;
  opts.seed = 3;
  const json s = cmd_find_cyclic(doc_for({"Sl2Cyclic", "2", "1"}), opts).report;
  REQUIRE(s["feasibility"]["status"] == "feasible");
  const InputDocument w = parse_input(s["feasibility"]["witness_document"].dump());
  const json again = cmd_analyze(w, {}).report;
  CHECK(again["homogeneous"]["cyclic"]["cyclic"] == true);
  CHECK(cmd_classify(w, {}).report["classification"]["family"] == "Sl2Cyclic");

  const json so = cmd_find_cyclic(doc_for({"So3Biinv"}), {}).report;
  CHECK(so["feasibility"]["status"] != "feasible");
  CHECK(so["feasibility"]["semisimple"]["feasible"] == false);
}

TEST_CASE("classify reports and errors") {
  const json e = cmd_classify(doc_for({"Gn", "2", "-2"}), {}).report;
  CHECK(e["classification"]["family"] == "E11");
  CHECK_THROWS_AS(cmd_classify(doc_for({"Gn", "1", "1", "1", "1", "1"}), {}), Unsupported);
  CHECK_THROWS_AS(cmd_classify(doc_for({"Heisenberg"}), {}), ValidationFailure);
  CHECK(exit_code_for(Unsupported("x")) == kExitUnsupported);
  CHECK(exit_code_for(InvalidInput("x")) == kExitInvalidInput);
  CHECK(exit_code_for(ValidationFailure("x", 1.0)) == kExitValidation);
}

TEST_CASE("catalog command argument errors") {
  CHECK_THROWS_AS(cmd_catalog({}), InvalidInput);
  CHECK_THROWS_AS(cmd_catalog({"Gn", "one"}), InvalidInput);
  CHECK_THROWS_AS(cmd_catalog({"DirectProduct", "Gn", "1"}), InvalidInput);
  CHECK_THROWS_AS(cmd_catalog({"DirectProduct", "Gn", "1", "/", "/", "Abelian", "1"}), InvalidInput);
  CHECK_THROWS_AS(cmd_catalog({"Sl2Cyclic", "1", "-1"}), InvalidInput);
}

TEST_CASE("machine reports are deterministic") {
  const InputDocument d = doc_for({"H4", "1", "2", "1"});
  CommandOptions opts;
  opts.seed = 11;
  CHECK(render_machine(cmd_analyze(d, opts).report) == render_machine(cmd_analyze(d, opts).report));
  CHECK(render_machine(cmd_find_cyclic(d, opts).report) == render_machine(cmd_find_cyclic(d, opts).report));
  CHECK(render_text(cmd_analyze(d, opts).report).find("verdict: T1+T2") != std::string::npos);
}

TEST_CASE("tolerance precedence") {
  InputDocument d = doc_for({"Gn", "1", "2"});
  CommandOptions opts;
  ::unsetenv("CYCLAB_DEFAULT_TOL");
  CHECK(effective_tolerance(opts, d) == kDefaultTol);
  ::setenv("CYCLAB_DEFAULT_TOL", "1e-7", 1);
  CHECK(effective_tolerance(opts, d) == 1e-7);
  d.tolerance = 1e-6;
  CHECK(effective_tolerance(opts, d) == 1e-6);
  opts.tol = 1e-5;
  CHECK(effective_tolerance(opts, d) == 1e-5);
  ::setenv("CYCLAB_DEFAULT_TOL", "abc", 1);
  d.tolerance.reset();
  opts.tol.reset();
  CHECK_THROWS_AS(effective_tolerance(opts, d), InvalidInput);
  ::unsetenv("CYCLAB_DEFAULT_TOL");
}
