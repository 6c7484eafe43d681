#include "skolem/semilinear.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "testgen.hpp"

using namespace skolem;

namespace {

std::vector<Int> pt(std::initializer_list<Int> xs) { return xs; }

SemilinearSet randomSet(testgen::Rng& rng, int dim) {
  return SemilinearSet(dim, testgen::randomFormula(rng, std::max(dim, 1), 2));
}

}  // namespace

TEST_CASE("atomLinear builds exponent equations", "[semilinear]") {
  SemilinearSet eq = SemilinearSet::atomLinear(2, {{1, 1}}, {{2, 1}});
  CHECK(eq.member(pt({4, 4})));
  CHECK_FALSE(eq.member(pt({4, 5})));

  SemilinearSet sum = SemilinearSet::atomLinear(3, {{1, 1}, {2, 1}}, {{3, 1}});
  CHECK(sum.member(pt({2, 1, 3})));
  CHECK_FALSE(sum.member(pt({2, 1, 4})));

  // 2 v1 = v1 over the naturals is just {0}
  SemilinearSet twice = SemilinearSet::atomLinear(1, {{1, 2}}, {{1, 1}});
  CHECK(twice.member(pt({0})));
  for (Int x = 1; x <= 20; ++x) CHECK_FALSE(twice.member(pt({x})));

  CHECK_THROWS_AS(SemilinearSet::atomLinear(2, {{3, 1}}, {}), DimensionError);
}

TEST_CASE("boolean combinations act pointwise", "[semilinear]") {
  CHECK(complement(SemilinearSet::full(2)).isEmpty());
  CHECK(complement(SemilinearSet::empty(2)).member(pt({5, 7})));

  SemilinearSet a = SemilinearSet::atomLinear(2, {{1, 1}}, {{2, 1}});
  SemilinearSet b = SemilinearSet::atomLinear(2, {{1, 1}, {2, 1}}, {{2, 1}});
  SemilinearSet both = intersect(a, b);
  CHECK(both.member(pt({0, 0})));
  CHECK_FALSE(both.member(pt({1, 1})));

  CHECK(unite(SemilinearSet::empty(1),
              SemilinearSet::atomLinear(1, {{1, 1}}, {}))
            .member(pt({0})));

  CHECK_THROWS_AS(intersect(SemilinearSet::full(1), SemilinearSet::full(2)),
                  DimensionError);

  std::vector<SemilinearSet> args{a, b};
  CHECK(combine(SetOp::And, args).member(pt({0, 0})));
}

TEST_CASE("projectAway drops a coordinate and shifts the rest",
          "[semilinear]") {
  SECTION("diagonal projects to everything") {
    SemilinearSet diag = SemilinearSet::atomLinear(2, {{1, 1}}, {{2, 1}});
    SemilinearSet p = projectAway(diag, 2);
    CHECK(p.dim() == 1);
    for (Int x = 0; x <= 10; ++x) CHECK(p.member(pt({x})));
  }
  SECTION("empty projects to BOT at dimension 0") {
    SemilinearSet never(1, PresFormula::eq(LinearTerm::variable(1, 2) -
                                           LinearTerm(1)));
    CHECK(never.isEmpty());
    SemilinearSet p = projectAway(never, 1);
    CHECK(p.dim() == 0);
    CHECK(p.render() == "BOT");
    CHECK(p.isEmpty());
  }
  SECTION("doubling projects to the evens") {
    SemilinearSet dbl = SemilinearSet::atomLinear(2, {{1, 2}}, {{2, 1}});
    SemilinearSet p = projectAway(dbl, 1);
    CHECK(p.dim() == 1);
    for (Int y = 0; y <= 40; ++y) CHECK(p.member(pt({y})) == (y % 2 == 0));
  }
  SECTION("nonempty projects to TOP at dimension 0") {
    SemilinearSet evens(1, PresFormula::dvd(2, LinearTerm::variable(1)));
    CHECK(projectAway(evens, 1).render() == "TOP");
  }
  CHECK_THROWS_AS(projectAway(SemilinearSet::full(2), 3), DimensionError);
}

TEST_CASE("membership probes and zero handling", "[semilinear]") {
  SemilinearSet sum = SemilinearSet::atomLinear(3, {{1, 1}, {2, 1}}, {{3, 1}});
  CHECK(sum.containsZero());

  SemilinearSet positives = SemilinearSet::full(1).removeZero();
  CHECK_FALSE(positives.member(pt({0})));
  CHECK(positives.member(pt({1})));

  SemilinearSet impossible(1, PresFormula::eq(LinearTerm::variable(1, 2) -
                                              LinearTerm(1)));
  CHECK(impossible.isEmpty());
  CHECK_FALSE(SemilinearSet::full(2).isEmpty());

  CHECK_THROWS_AS(sum.member(pt({1, 2})), DimensionError);
}

TEST_CASE("membership distributes over boolean structure", "[semilinear]") {
  testgen::Rng rng(5150);
  for (int iter = 0; iter < 150; ++iter) {
    int dim = static_cast<int>(testgen::randInt(rng, 1, 3));
    SemilinearSet a = randomSet(rng, dim);
    SemilinearSet b = randomSet(rng, dim);
    SemilinearSet meet = intersect(a, b);
    SemilinearSet join = unite(a, b);
    SemilinearSet neg = complement(a);

    std::vector<Int> point(static_cast<std::size_t>(dim));
    std::function<void(int)> visit = [&](int coord) {
      if (coord == dim) {
        bool ma = a.member(point), mb = b.member(point);
        REQUIRE(meet.member(point) == (ma && mb));
        REQUIRE(join.member(point) == (ma || mb));
        REQUIRE(neg.member(point) == !ma);
        return;
      }
      for (Int t = 0; t <= 6; ++t) {
        point[static_cast<std::size_t>(coord)] = t;
        visit(coord + 1);
      }
    };
    visit(0);
  }
}

TEST_CASE("projection matches bounded witness search", "[semilinear]") {
  testgen::Rng rng(6021023);
  for (int iter = 0; iter < 80; ++iter) {
    int dim = static_cast<int>(testgen::randInt(rng, 2, 3));
    SemilinearSet s = randomSet(rng, dim);
    Var coord = static_cast<Var>(testgen::randInt(rng, 1, dim));
    SemilinearSet p = projectAway(s, coord);
    Int bound = testgen::witnessBound(s.formula(), 6);

    std::vector<Int> low(static_cast<std::size_t>(dim) - 1);
    std::function<void(std::size_t)> visit = [&](std::size_t k) {
      if (k == low.size()) {
        bool projected = p.member(low);
        bool lifted = false;
        std::vector<Int> full(low.begin(), low.end());
        full.insert(full.begin() + (coord - 1), 0);
        for (Int t = 0; t <= bound && !lifted; ++t) {
          full[static_cast<std::size_t>(coord) - 1] = t;
          lifted = s.member(full);
        }
        REQUIRE(projected == lifted);
        return;
      }
      for (Int t = 0; t <= 6; ++t) {
        low[k] = t;
        visit(k + 1);
      }
    };
    visit(0);
  }
}

TEST_CASE("removeZero never keeps the origin", "[semilinear]") {
  testgen::Rng rng(99);
  for (int iter = 0; iter < 100; ++iter) {
    int dim = static_cast<int>(testgen::randInt(rng, 1, 3));
    SemilinearSet s = randomSet(rng, dim);
    SemilinearSet r = s.removeZero();
    CHECK_FALSE(r.containsZero());
    // points other than zero are untouched
    std::vector<Int> probe(static_cast<std::size_t>(dim), 0);
    probe[0] = 1 + testgen::randInt(rng, 0, 5);
    CHECK(r.member(probe) == s.member(probe));
  }
}
