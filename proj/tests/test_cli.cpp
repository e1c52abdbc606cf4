#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "generators.hpp"
#include "solvric/catalog.hpp"
#include "solvric/commands.hpp"
#include "solvric/errors.hpp"
#include "solvric/io.hpp"

using namespace solvric;

namespace {

std::string temp_file(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / ("solvric_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SOLVRIC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

CommandOptions structured() {
  CommandOptions o;
  o.structured = true;
  return o;
}

}  // namespace

TEST_CASE("algebra files parse and round-trip") {
  const std::string text =
      "dim: 3\n"
      "labels: [X, Y, Z]\n"
      "brackets:\n"
      "  - {i: 1, j: 2, k: 3, c: 1}\n";
  LieAlgebra g = parse_algebra(text);
  CHECK(g.dim() == 3);
  CHECK(g.label(2) == "Z");
  CHECK(write_algebra(g) == "dim: 3\nlabels: [X, Y, Z]\nbrackets:\n  - {i: 1, j: 2, k: 3, c: 1}\n");
  gen::Rng rng(91);
  for (int trial = 0; trial < 10; ++trial) {
    LieAlgebra r = gen::random_solvable(rng, 7);
    const std::string w = write_algebra(r);
    LieAlgebra back = parse_algebra(w);
    CHECK(write_algebra(back) == w);
    for (int i = 0; i < r.dim(); ++i) CHECK((back.ad(i) - r.ad(i)).norm() == 0.0);
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_algebra("dim: 3\nbrackets:\n  - {i: 1, j: 2, k: 9, c: 1}\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_algebra("dim: 3\nbrackets:\n  - {i: 2, j: 1, k: 3, c: 1}\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("dim: 3\nbrackets:\n  - {i: 1, j: 2, k: 3}\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("dim: 3\nbrackets:\n  - {i: 1, j: 2, k: 3, c: abc}\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("dim: [\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("brackets: []\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("dim: 2\ncolor: red\n"), ParseError);
}

TEST_CASE("metric files") {
  InnerProduct q = parse_metric("dim: 2\ngram: [2, 0.5, 0.5, 1]\n");
  CHECK(q.gram()(0, 1) == 0.5);
  InnerProduct q2 = parse_metric(write_metric(q));
  CHECK((q2.gram() - q.gram()).norm() == 0.0);
  CHECK_THROWS_AS(parse_metric("dim: 2\ngram: [1, 2, 2, 1]\n"), NotPositiveDefinite);
  CHECK_THROWS_AS(parse_metric("dim: 2\ngram: [1, 0, 0]\n"), ParseError);
}

TEST_CASE("check reports the nilradical class") {
  auto out = nlohmann::json::parse(cmd_check("heisenberg:2", structured()).output);
  CHECK(out["nilradical_class"] == "Heisenberg(2)");
  out = nlohmann::json::parse(cmd_check("filiform:5", structured()).output);
  CHECK(out["nilradical_class"] == "StandardFiliform(5)");
  CHECK(out["jacobi_defect"] == 0.0);
}

TEST_CASE("ricci command") {
  auto out = nlohmann::json::parse(cmd_ricci("heisenberg:1", "", structured()).output);
  std::vector<double> ev = out["eigenvalues"];
  CHECK(ev[0] == doctest::Approx(-0.5));
  CHECK(ev[1] == doctest::Approx(-0.5));
  CHECK(ev[2] == doctest::Approx(0.5));
  const std::string metric = temp_file("metric.yaml", "dim: 3\ngram: [2, 0, 0, 0, 3, 1, 0, 1, 1]\n");
  out = nlohmann::json::parse(cmd_ricci("abelian:3", metric, structured()).output);
  CHECK(out["definiteness"] == "NegativeSemi");
  out = nlohmann::json::parse(cmd_ricci("hyperbolic:4", "identity", structured()).output);
  CHECK(out["definiteness"] == "NegativeDefinite");
  CHECK_THROWS_AS(cmd_ricci("hyperbolic:4", metric, structured()), DimensionMismatch);
}

TEST_CASE("decide and construct exit codes") {
  CHECK(cmd_decide("filiform:4:a=1:d=1", {}).exit_code == exit_code::kSuccess);
  CHECK(cmd_decide("heisenberg:1:diag=5,-3", {}).exit_code == exit_code::kNotExists);
  CHECK(cmd_decide("h3plusR:diag=3,-1,1", {}).exit_code == exit_code::kUnknown);
  auto out = nlohmann::json::parse(cmd_decide("h3plusR:diag=3,-1,1", structured()).output);
  CHECK(out["sub"].contains("necessary"));
  CHECK(out["sub"].contains("sufficient"));

  CommandOptions o = structured();
  o.out_path = (std::filesystem::temp_directory_path() / "solvric_test_cert.json").string();
  CommandResult r = cmd_construct("heisenberg:1:diag=3,-1", o);
  CHECK(r.exit_code == exit_code::kSuccess);
  std::ifstream in(o.out_path);
  auto cert = nlohmann::json::parse(in);
  CHECK(cert["certificate"]["max_eigenvalue"].get<double>() < -1e-9);
  for (const char* key : {"metric", "ricci", "eigenvalues", "max_eigenvalue", "provenance", "tolerances", "verdict"})
    CHECK(cert["certificate"].contains(key));

  CommandResult uni = cmd_construct("heisenberg:1", structured());
  CHECK(uni.exit_code == exit_code::kNotExists);
  CHECK(uni.output.find("unimodular-flatness") != std::string::npos);
}

TEST_CASE("optimize command") {
  CommandOptions o = structured();
  o.budget = 2000;
  o.restarts = 2;
  CHECK(cmd_optimize("hyperbolic:3", o).exit_code == exit_code::kSuccess);
  auto out = nlohmann::json::parse(cmd_optimize("abelian:3", o).output);
  CHECK(out["certified"] == false);
  CHECK(std::abs(out["objective"].get<double>()) < 1e-9);
}

TEST_CASE("catalog and self-test") {
  auto out = nlohmann::json::parse(cmd_catalog(structured()).output);
  CHECK(out["entries"].size() >= 12);
  CommandResult st = cmd_selftest({});
  CHECK_MESSAGE(st.exit_code == exit_code::kSuccess, st.output);
}

TEST_CASE("errors map to exit codes") {
  CommandResult r = run_guarded([] { return cmd_check("no-such-thing", {}); }, {});
  CHECK(r.exit_code == exit_code::kInputError);
  const std::string bad = temp_file("bad.yaml", "dim: 3\nbrackets:\n  - {i: 1, j: 2}\n");
  r = run_guarded([&] { return cmd_check(bad, structured()); }, structured());
  CHECK(r.exit_code == exit_code::kInputError);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["error"] == "ParseError");
  CHECK(j["line"] == 3);
}

TEST_CASE("the executable honours the exit-code contract") {
  CHECK(run_cli("decide hyperbolic:3") == 0);
  CHECK(run_cli("decide heisenberg:1") == 2);
  CHECK(run_cli("decide h3plusR:diag=3,-1,1") == 3);
  CHECK(run_cli("check nonexistent-file.yaml") == 4);
  CHECK(run_cli("--format=structured construct filiform:4:a=1:d=1") == 0);
  CHECK(run_cli("frobnicate") == 4);
}
