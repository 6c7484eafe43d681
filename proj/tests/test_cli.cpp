#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "skolem/skolem.hpp"

namespace {

struct RunResult {
  int exitCode;
  std::string output;
};

// Runs the CLI through the shell, feeding the formula on stdin; stderr is
// discarded, stdout captured. `env` is prepended as VAR=value assignments.
RunResult runCli(const std::string& args, const std::string& stdinText = "",
                 const std::string& env = "") {
  std::string cmd;
  if (!stdinText.empty()) cmd = "printf '%s' '" + stdinText + "' | ";
  cmd += env + (env.empty() ? "" : " ") + std::string(SKOLEM_CLI_PATH) + " " +
         args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[512];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe))
    out.append(buf, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path writeTemp(const std::string& text) {
  auto path = std::filesystem::temp_directory_path() /
              ("skolem_cli_test_" + std::to_string(::getpid()) + ".sk");
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("decide prints the truth value", "[cli]") {
  RunResult r = runCli("decide", "exists x . forall y . x*y = y");
  CHECK(r.exitCode == 0);
  CHECK(r.output == "true\n");

  r = runCli("decide", "forall x . exists y . y*y = x");
  CHECK(r.exitCode == 0);  // a computed false is still a success
  CHECK(r.output == "false\n");

  r = runCli("--fail-on-false decide", "forall x . exists y . y*y = x");
  CHECK(r.exitCode == 1);

  // formulas can come from a file
  auto path = writeTemp("# identity element\nexists x . forall y . x*y = y\n");
  r = runCli("decide " + path.string());
  CHECK(r.exitCode == 0);
  CHECK(r.output == "true\n");
  std::filesystem::remove(path);
}

TEST_CASE("eval takes assignments", "[cli]") {
  const std::string prime =
      "!(forall y . x*y = y) & forall d . ((exists z . d*z = x) -> "
      "((forall y . d*y = y) | d = x))";
  RunResult r = runCli("eval --assign x=7", prime);
  CHECK(r.exitCode == 0);
  CHECK(r.output == "true\n");

  r = runCli("eval --assign x=12", prime);
  CHECK(r.exitCode == 0);
  CHECK(r.output == "false\n");

  // zero is outside the structure's domain
  r = runCli("eval --assign x=0", "x = x");
  CHECK(r.exitCode == 4);

  // missing assignment is a usage error
  r = runCli("eval", "x = x");
  CHECK(r.exitCode == 2);
}

TEST_CASE("compile prints text and json forms", "[cli]") {
  RunResult r = runCli("compile", "x = y");
  CHECK(r.exitCode == 0);
  CHECK(r.output == "Def({ v1,v2 | v1 - v2 = 0 })\n");

  r = runCli("compile --json", "x = y");
  CHECK(r.exitCode == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["dim"] == 2);
  REQUIRE(j["disjuncts"].size() == 1);
}

TEST_CASE("json output reproduces the compiled set", "[cli]") {
  using namespace skolem;
  const std::string text = "exists d . (d*d = x & exists z . d*z = y)";
  RunResult r = runCli("compile --json", text);
  REQUIRE(r.exitCode == 0);
  SemiskolemianSet reread =
      semiskolemianFromJson(nlohmann::json::parse(r.output));

  SkolemFormula f = parseFormula(text);
  auto free = f.freeVariables();
  std::vector<std::string> order(free.begin(), free.end());
  SemiskolemianSet direct = compile(f, order);

  REQUIRE(reread.dim() == direct.dim());
  for (Int x = 1; x <= 20; ++x)
    for (Int y = 1; y <= 20; ++y) {
      std::vector<Int> w{x, y};
      REQUIRE(memberSemi(reread, w) == memberSemi(direct, w));
    }
}

TEST_CASE("error paths map to exit codes", "[cli]") {
  CHECK(runCli("decide", "x = ").exitCode == 2);    // syntax error
  CHECK(runCli("decide", "x = x").exitCode == 2);   // open formula
  CHECK(runCli("bogus-subcommand").exitCode == 2);  // usage error

  // the resource cap trips through the environment-variable fallback
  const std::string heavy =
      "forall x . exists y . exists z . (y*y*y*y*y = x*z*z & !(z*z*z = y*x))";
  CHECK(runCli("decide", heavy).exitCode == 0);
  CHECK(runCli("decide", heavy, "SKOLEM_MAX_FORMULA_NODES=20").exitCode == 3);
  // an explicit flag wins over the environment
  CHECK(runCli("--max-formula-nodes 100000 decide", heavy,
               "SKOLEM_MAX_FORMULA_NODES=20")
            .exitCode == 0);
}

TEST_CASE("output is deterministic across runs", "[cli]") {
  const std::string text = "exists y . (y*y = x | exists z . x*z = y)";
  RunResult a = runCli("compile --json", text);
  RunResult b = runCli("compile --json", text);
  CHECK(a.exitCode == 0);
  CHECK(a.output == b.output);

  RunResult c = runCli("compile", text);
  RunResult d = runCli("compile", text);
  CHECK(c.output == d.output);
}

TEST_CASE("selftest reports its tallies", "[cli]") {
  RunResult r = runCli("selftest");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("selftest: PASS") != std::string::npos);
}
