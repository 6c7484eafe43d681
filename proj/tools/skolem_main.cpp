// Command-line driver: decide sentences of the multiplicative first-order
// theory, evaluate formulas on concrete positive integers, print compiled
// set representations, and run the self-test battery.

#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skolem/skolem.hpp"

namespace {

using namespace skolem;

enum class OutputFormat { Text, Json };

struct CliConfig {
  std::size_t maxDisjuncts = 100000;
  std::size_t maxFormulaNodes = 100000;
  OutputFormat outputFormat = OutputFormat::Text;
  Int oracleBound = 64;
  bool failOnFalse = false;

  Limits limits() const { return Limits{maxFormulaNodes, maxDisjuncts}; }
};

std::string readInput(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::map<std::string, Int> parseAssignments(
    const std::vector<std::string>& raw) {
  std::map<std::string, Int> assignment;
  for (const std::string& item : raw) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw SyntaxError("expected --assign var=value, got '" + item + "'", 1,
                        1);
    std::string name = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    Int parsed = 0;
    try {
      std::size_t used = 0;
      parsed = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw SyntaxError("'" + value + "' is not an integer", 1, 1);
    }
    if (parsed < 1)
      throw DomainError("assignments must be positive integers; " + name +
                        " = " + value);
    if (!assignment.emplace(name, parsed).second)
      throw SyntaxError("duplicate assignment for '" + name + "'", 1, 1);
  }
  return assignment;
}

int runDecide(const CliConfig& cfg, const std::string& path) {
  SkolemFormula f = parseFormula(readInput(path));
  auto free = f.freeVariables();
  if (!free.empty()) {
    std::string names;
    for (const auto& v : free) names += (names.empty() ? "" : ", ") + v;
    std::cerr << "error: decide needs a sentence; free variables: " << names
              << "\n";
    return 2;
  }
  bool truth = decide(f, cfg.limits());
  std::cout << (truth ? "true" : "false") << "\n";
  return (!truth && cfg.failOnFalse) ? 1 : 0;
}

int runEval(const CliConfig& cfg, const std::string& path,
            const std::vector<std::string>& rawAssigns) {
  SkolemFormula f = parseFormula(readInput(path));
  std::map<std::string, Int> assignment = parseAssignments(rawAssigns);
  auto free = f.freeVariables();
  for (const auto& v : free)
    if (!assignment.contains(v)) {
      std::cerr << "error: no value assigned to '" << v << "'\n";
      return 2;
    }
  for (const auto& [name, value] : assignment)
    if (!free.contains(name)) {
      std::cerr << "error: '" << name << "' is not a free variable\n";
      return 2;
    }
  bool truth = evalGround(f, assignment, cfg.limits());
  std::cout << (truth ? "true" : "false") << "\n";
  return (!truth && cfg.failOnFalse) ? 1 : 0;
}

int runCompile(const CliConfig& cfg, const std::string& path) {
  SkolemFormula f = parseFormula(readInput(path));
  auto free = f.freeVariables();
  std::vector<std::string> order(free.begin(), free.end());
  SemiskolemianSet s = compile(f, order, cfg.limits());
  if (cfg.outputFormat == OutputFormat::Json) {
    std::cout << toJson(s).dump() << "\n";
  } else {
    std::cout << s.render() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// selftest

struct Tally {
  int passed = 0;
  int total = 0;
  void count(bool ok) {
    ++total;
    passed += ok ? 1 : 0;
  }
};

void selftestSentences(const CliConfig& cfg, Tally& tally) {
  const std::vector<std::pair<const char*, bool>> suite{
      {"exists x . forall y . x*y = y", true},
      {"forall x . forall y . x*y = y*x", true},
      {"forall x . exists y . exists z . x = y*z", true},
      {"forall x . forall y . forall z . forall xy . forall yz . "
       "((x*y = xy & y*z = yz) -> (xy*z = x*yz))",
       true},
      {"forall x . exists y . y*y = x", false},
      {"exists x . (x*x = x & exists y . !(x*y = y))", false},
      {"exists x . !(x = x)", false},
      {"forall x . exists y . x*x = y", true},
  };
  for (const auto& [text, expected] : suite)
    tally.count(decide(parseFormula(text), cfg.limits()) == expected);
}

void selftestPredicates(const CliConfig& cfg, Tally& tally) {
  // ranges are chosen so the bounded oracle is conclusive: every quantifier
  // in these predicates only matters up to the largest argument
  const Int maxN = std::min<Int>(24, cfg.oracleBound);
  SkolemFormula divides = parseFormula("exists z . x * z = y");
  SkolemFormula prime = parseFormula(
      "!(forall y . x*y = y) & forall d . ((exists z . d*z = x) -> "
      "((forall y . d*y = y) | d = x))");
  SkolemFormula square = parseFormula("exists y . y*y = x");
  for (Int x = 1; x <= maxN; ++x) {
    tally.count(evalGround(prime, {{"x", x}}, cfg.limits()) ==
                boundedEval(prime, {{"x", x}}, cfg.oracleBound));
    tally.count(evalGround(square, {{"x", x}}, cfg.limits()) ==
                boundedEval(square, {{"x", x}}, cfg.oracleBound));
    for (Int y = 1; y <= maxN; y += 5)
      tally.count(
          evalGround(divides, {{"x", x}, {"y", y}}, cfg.limits()) ==
          boundedEval(divides, {{"x", x}, {"y", y}}, cfg.oracleBound));
  }
}

void selftestMembership(Tally& tally) {
  std::mt19937 rng(90210);
  auto randInt = [&](Int lo, Int hi) {
    return std::uniform_int_distribution<Int>(lo, hi)(rng);
  };
  for (int iter = 0; iter < 200; ++iter) {
    int dim = static_cast<int>(randInt(1, 2));
    // random semilinear pieces from a fixed small shape pool
    auto piece = [&]() {
      LinearTerm t;
      for (Var i = 1; i <= dim; ++i)
        t = t + LinearTerm::variable(i, randInt(-2, 2));
      t = t + LinearTerm(randInt(-3, 1));
      switch (randInt(0, 2)) {
        case 0:
          return PresFormula::eq(t);
        case 1:
          return PresFormula::leq(t);
        default:
          return PresFormula::dvd(randInt(2, 4), t);
      }
    };
    std::vector<PresFormula> zeroAtoms;
    for (Var i = 1; i <= dim; ++i)
      zeroAtoms.push_back(PresFormula::eq(LinearTerm::variable(i)));
    SemilinearSet rest(dim,
                       PresFormula::disj(piece(), PresFormula::conj(zeroAtoms)));
    std::vector<SemilinearSet> slots;
    int n = static_cast<int>(randInt(0, 2));
    for (int i = 0; i < n; ++i)
      slots.push_back(SemilinearSet(dim, piece()).removeZero());
    SkolemianSet s = makeDef(std::move(slots), std::move(rest));

    std::vector<Int> w;
    for (int i = 0; i < dim; ++i) w.push_back(randInt(1, 10000));
    tally.count(memberSkolemian(s, w) == skolemianOracleMember(s, w));
  }
}

int runSelftest(const CliConfig& cfg) {
  Tally sentences, predicates, membership;
  selftestSentences(cfg, sentences);
  selftestPredicates(cfg, predicates);
  selftestMembership(membership);
  int passed = sentences.passed + predicates.passed + membership.passed;
  int total = sentences.total + predicates.total + membership.total;
  std::cout << "sentences:  " << sentences.passed << "/" << sentences.total
            << "\n"
            << "predicates: " << predicates.passed << "/" << predicates.total
            << "\n"
            << "membership: " << membership.passed << "/" << membership.total
            << "\n"
            << (passed == total ? "selftest: PASS (" : "selftest: FAIL (")
            << passed << "/" << total << ")\n";
  return passed == total ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedure and definable-set compiler for the "
               "first-order theory of naturals with multiplication"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string format = "text";
  app.add_option("--max-disjuncts", cfg.maxDisjuncts,
                 "abort when a union exceeds this many disjuncts")
      ->envname("SKOLEM_MAX_DISJUNCTS")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-formula-nodes", cfg.maxFormulaNodes,
                 "abort when a formula exceeds this many nodes")
      ->envname("SKOLEM_MAX_FORMULA_NODES")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format: text or json")
      ->envname("SKOLEM_FORMAT")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--oracle-bound", cfg.oracleBound,
                 "quantifier bound for the selftest oracle")
      ->envname("SKOLEM_ORACLE_BOUND")
      ->check(CLI::PositiveNumber);
  app.add_flag("--fail-on-false", cfg.failOnFalse,
               "exit with status 1 when the computed answer is false");

  std::string decidePath, evalPath, compilePath;
  std::vector<std::string> assigns;
  bool jsonFlag = false;

  CLI::App* decideCmd =
      app.add_subcommand("decide", "print the truth value of a sentence");
  decideCmd->add_option("file", decidePath,
                        "formula file ('-' or absent: stdin)");

  CLI::App* evalCmd = app.add_subcommand(
      "eval", "evaluate a formula under a ground assignment");
  evalCmd->add_option("file", evalPath, "formula file ('-' or absent: stdin)");
  evalCmd->add_option("--assign,-a", assigns, "variable assignment var=value");

  CLI::App* compileCmd = app.add_subcommand(
      "compile", "print the compiled set representation of a formula");
  compileCmd->add_option("file", compilePath,
                         "formula file ('-' or absent: stdin)");
  compileCmd->add_flag("--json", jsonFlag, "shorthand for --format json");

  CLI::App* selftestCmd =
      app.add_subcommand("selftest", "run the built-in oracle battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (format == "json" || jsonFlag) cfg.outputFormat = OutputFormat::Json;

  try {
    if (decideCmd->parsed()) return runDecide(cfg, decidePath);
    if (evalCmd->parsed()) return runEval(cfg, evalPath, assigns);
    if (compileCmd->parsed()) return runCompile(cfg, compilePath);
    if (selftestCmd->parsed()) return runSelftest(cfg);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const InvariantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
