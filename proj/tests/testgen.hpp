#ifndef SKOLEM_TESTS_TESTGEN_HPP
#define SKOLEM_TESTS_TESTGEN_HPP

// Shared random generators and independent brute-force oracles. Everything
// here is deliberately naive: enumeration and direct arithmetic only, no
// calls into the code paths under test.

#include <random>
#include <vector>

#include "skolem/presburger.hpp"
#include "skolem/skolemian.hpp"

namespace testgen {

using skolem::Int;
using skolem::LinearTerm;
using skolem::PresFormula;
using skolem::SemilinearSet;
using skolem::SkolemianSet;
using skolem::Var;

using Rng = std::mt19937;

inline Int randInt(Rng& rng, Int lo, Int hi) {
  return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

inline LinearTerm randomTerm(Rng& rng, int maxVar, Int maxCoeff) {
  LinearTerm t(randInt(rng, -maxCoeff, maxCoeff));
  int monomials = static_cast<int>(randInt(rng, 1, maxVar));
  for (int i = 0; i < monomials; ++i) {
    Int c = randInt(rng, -maxCoeff, maxCoeff);
    if (c == 0) c = 1;
    t = t + LinearTerm::variable(static_cast<Var>(randInt(rng, 1, maxVar)), c);
  }
  return t;
}

inline PresFormula randomAtom(Rng& rng, int maxVar, Int maxCoeff, Int maxMod) {
  switch (randInt(rng, 0, 2)) {
    case 0:
      return PresFormula::eq(randomTerm(rng, maxVar, maxCoeff));
    case 1:
      return PresFormula::leq(randomTerm(rng, maxVar, maxCoeff));
    default:
      return PresFormula::dvd(randInt(rng, 2, maxMod),
                              randomTerm(rng, maxVar, maxCoeff));
  }
}

inline PresFormula randomFormula(Rng& rng, int maxVar, int depth,
                                 Int maxCoeff = 3, Int maxMod = 5) {
  if (depth == 0 || randInt(rng, 0, 3) == 0)
    return randomAtom(rng, maxVar, maxCoeff, maxMod);
  switch (randInt(rng, 0, 2)) {
    case 0:
      return PresFormula::negate(
          randomFormula(rng, maxVar, depth - 1, maxCoeff, maxMod));
    case 1:
      return PresFormula::conj(
          randomFormula(rng, maxVar, depth - 1, maxCoeff, maxMod),
          randomFormula(rng, maxVar, depth - 1, maxCoeff, maxMod));
    default:
      return PresFormula::disj(
          randomFormula(rng, maxVar, depth - 1, maxCoeff, maxMod),
          randomFormula(rng, maxVar, depth - 1, maxCoeff, maxMod));
  }
}

/// Complete witness-search bound for `exists v . f` when the free coordinates
/// are at most pointBound: lcm of the divisibility moduli times
/// (1 + sum over atoms of sum |coeff| * pointBound + |const|), plus slack.
/// Any natural satisfying f at such a point has a companion witness below
/// this bound, so search up to it decides the existential exactly.
inline Int witnessBound(const PresFormula& f, Int pointBound) {
  Int lcmMod = 1;
  Int spread = 0;
  std::function<void(const PresFormula&)> walk = [&](const PresFormula& g) {
    using Kind = PresFormula::Kind;
    switch (g.kind()) {
      case Kind::Atom: {
        const skolem::PresAtom& a = g.atomValue();
        if (a.kind == skolem::AtomKind::Dvd)
          lcmMod = std::lcm(lcmMod, a.modulus);
        for (const auto& [v, c] : a.term.coeffs())
          spread += (c < 0 ? -c : c) * pointBound;
        spread += a.term.constant() < 0 ? -a.term.constant()
                                        : a.term.constant();
        break;
      }
      case Kind::Not:
      case Kind::And:
      case Kind::Or:
        for (const auto& k : g.children()) walk(k);
        break;
      default:
        break;
    }
  };
  walk(f);
  Int w = lcmMod * (1 + spread);
  return std::max<Int>(60, w) + 64;
}

/// Oracle for the existential: plugs 0..bound into coordinate v.
inline bool existsWitness(const PresFormula& f, Var v, std::vector<Int> point,
                          Int bound) {
  if (static_cast<std::size_t>(v) > point.size())
    point.resize(static_cast<std::size_t>(v), 0);
  for (Int t = 0; t <= bound; ++t) {
    point[static_cast<std::size_t>(v) - 1] = t;
    if (f.evaluate(point)) return true;
  }
  return false;
}

inline SemilinearSet randomSemilinear(Rng& rng, int dim, int maxDepth = 2,
                                      Int maxCoeff = 2, Int maxMod = 4) {
  return SemilinearSet(
      dim, randomFormula(rng, std::max(dim, 1),
                         static_cast<int>(randInt(rng, 0, maxDepth)), maxCoeff,
                         maxMod));
}

// Predicate formulas over the multiplicative language, shared between the
// unit suites, the acceptance run and the selftest battery.
inline constexpr const char* kDividesXY = "exists z . x * z = y";
inline constexpr const char* kPrimeX =
    "!(forall y . x*y = y) & forall d . ((exists z . d*z = x) -> "
    "((forall y . d*y = y) | d = x))";
inline constexpr const char* kSquareX = "exists y . y*y = x";
inline constexpr const char* kSquarefreeX =
    "forall d . ((exists z . d*d*z = x) -> (forall y . d*y = y))";
inline constexpr const char* kCoprimeXY =
    "forall d . (((exists a . d*a = x) & (exists b . d*b = y)) -> "
    "(forall t . d*t = t))";

inline bool isPrimeInt(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

inline bool isSquareInt(Int n) {
  for (Int r = 0; r * r <= n; ++r)
    if (r * r == n) return true;
  return false;
}

inline bool isSquarefreeInt(Int n) {
  for (Int d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

/// Random valid skolemian set: the rest set is patched to contain the zero
/// vector, each exceptional slot is stripped of it. Slots may be empty.
inline SkolemianSet randomSkolemian(Rng& rng, int dim, int maxSlots,
                                    Int maxCoeff = 2, Int maxMod = 4) {
  std::vector<PresFormula> zeroAtoms;
  for (Var i = 1; i <= dim; ++i)
    zeroAtoms.push_back(PresFormula::eq(LinearTerm::variable(i)));
  PresFormula zero = PresFormula::conj(zeroAtoms);
  SemilinearSet rest(
      dim, PresFormula::disj(
               randomSemilinear(rng, dim, 2, maxCoeff, maxMod).formula(), zero));
  std::vector<SemilinearSet> slots;
  int n = static_cast<int>(randInt(rng, 0, maxSlots));
  for (int i = 0; i < n; ++i)
    slots.push_back(randomSemilinear(rng, dim, 2, maxCoeff, maxMod).removeZero());
  return skolem::makeDef(std::move(slots), std::move(rest));
}

}  // namespace testgen

#endif  // SKOLEM_TESTS_TESTGEN_HPP
