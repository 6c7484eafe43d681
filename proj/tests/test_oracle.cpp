#include "skolem/oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "testgen.hpp"

using namespace skolem;

TEST_CASE("bounded evaluation", "[oracle]") {
  SkolemFormula square = parseFormula("exists y . y*y = x");
  CHECK(boundedEval(square, {{"x", 9}}, 10));
  CHECK_FALSE(boundedEval(square, {{"x", 2}}, 1000));

  SkolemFormula unit = parseFormula("forall y . x*y = y");
  CHECK(boundedEval(unit, {{"x", 1}}, 5));
  CHECK(boundedEval(unit, {{"x", 1}}, 64));
  CHECK_FALSE(boundedEval(unit, {{"x", 2}}, 5));

  CHECK_THROWS_AS(boundedEval(square, {{"x", 0}}, 8), DomainError);
}

TEST_CASE("oracle multiplication never wraps", "[oracle]") {
  SkolemFormula f = parseFormula("x * x = y");
  std::map<std::string, Int> big{{"x", 4000000000}, {"y", 5}};
  CHECK_THROWS_AS(boundedEval(f, big, 2), OverflowError);
}

TEST_CASE("existential truth is monotone in the bound", "[oracle]") {
  std::vector<const char*> existentials{
      "exists y . y*y = x",
      "exists z . x * z = y",
      "exists a . exists b . a * b = x",
  };
  testgen::Rng rng(1729);
  for (const char* text : existentials) {
    SkolemFormula f = parseFormula(text);
    std::map<std::string, Int> env;
    for (const auto& v : f.freeVariables())
      env[v] = testgen::randInt(rng, 1, 40);
    bool prev = false;
    for (Int b : {4, 8, 16, 32, 64}) {
      bool now = boundedEval(f, env, b);
      if (prev) REQUIRE(now);
      prev = now;
    }
  }
}

TEST_CASE("boundedEval agrees with the compiler on small predicates",
          "[oracle]") {
  // bound 64 is conclusive for these shapes at arguments <= 24
  SkolemFormula divides = parseFormula(testgen::kDividesXY);
  SkolemFormula prime = parseFormula(testgen::kPrimeX);
  for (Int x = 1; x <= 24; ++x) {
    REQUIRE(boundedEval(prime, {{"x", x}}, 64) ==
            evalGround(prime, {{"x", x}}));
    for (Int y = 1; y <= 24; y += 3)
      REQUIRE(boundedEval(divides, {{"x", x}, {"y", y}}, 64) ==
              evalGround(divides, {{"x", x}, {"y", y}}));
  }
}

TEST_CASE("definition-level membership oracle", "[oracle]") {
  SemilinearSet slot(1, PresFormula::eq(LinearTerm::variable(1) -
                                        LinearTerm(1)));
  SemilinearSet rest(
      1, PresFormula::disj(PresFormula::eq(LinearTerm::variable(1)),
                           PresFormula::eq(LinearTerm::variable(1) -
                                           LinearTerm(2))));
  SkolemianSet s = makeDef({slot}, rest);
  CHECK(skolemianOracleMember(s, std::vector<Int>{12}));
  CHECK_FALSE(skolemianOracleMember(s, std::vector<Int>{8}));
  CHECK_FALSE(skolemianOracleMember(s, std::vector<Int>{1}));

  SECTION("instance limits") {
    // 9 distinct primes exceed the supported support size
    Int ninePrimes = 2LL * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23;
    CHECK_THROWS_AS(skolemianOracleMember(s, std::vector<Int>{ninePrimes}),
                    ResourceError);
    SkolemianSet wide =
        makeDef({slot, slot, slot, slot, slot}, SemilinearSet::full(1));
    CHECK_THROWS_AS(skolemianOracleMember(wide, std::vector<Int>{6}),
                    ResourceError);
  }
}
