#ifndef SKOLEM_ORACLE_HPP
#define SKOLEM_ORACLE_HPP

/// Brute-force reference semantics, used by the tests and the selftest
/// command. Quantifiers range over {1..B} and multiplication is computed
/// exactly (overflow is an error, never a wrap); skolemian membership is
/// decided straight from the definition by enumerating slot assignments.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skolem/frontend.hpp"
#include "skolem/membership.hpp"

namespace skolem {

/// Tarskian evaluation with both quantifiers bounded by B. Conclusive only
/// when B is known to suffice for the formula at hand.
inline bool boundedEval(const SkolemFormula& f,
                        std::map<std::string, Int>& assignment, Int bound) {
  using Kind = SkolemFormula::Kind;
  switch (f.kind()) {
    case Kind::Atom: {
      auto value = [&](const SkolemTerm& t) {
        Int acc = 1;
        for (const auto& [name, mult] : t.factors()) {
          auto it = assignment.find(name);
          if (it == assignment.end())
            throw InvariantError("unassigned variable '" + name + "'");
          if (it->second < 1)
            throw DomainError("variables range over positive integers");
          for (Int k = 0; k < mult; ++k) acc = checkedMul(acc, it->second);
        }
        return acc;
      };
      return value(f.lhs()) == value(f.rhs());
    }
    case Kind::Not:
      return !boundedEval(f.children()[0], assignment, bound);
    case Kind::And:
      return boundedEval(f.children()[0], assignment, bound) &&
             boundedEval(f.children()[1], assignment, bound);
    case Kind::Or:
      return boundedEval(f.children()[0], assignment, bound) ||
             boundedEval(f.children()[1], assignment, bound);
    case Kind::Implies:
      return !boundedEval(f.children()[0], assignment, bound) ||
             boundedEval(f.children()[1], assignment, bound);
    case Kind::Iff:
      return boundedEval(f.children()[0], assignment, bound) ==
             boundedEval(f.children()[1], assignment, bound);
    case Kind::Exists:
    case Kind::Forall: {
      if (bound < 1) throw DomainError("quantifier bound must be >= 1");
      const std::string& v = f.boundVar();
      auto saved = assignment.find(v) != assignment.end()
                       ? std::optional<Int>(assignment[v])
                       : std::nullopt;
      bool result = f.kind() == Kind::Forall;
      for (Int t = 1; t <= bound; ++t) {
        assignment[v] = t;
        bool sub = boundedEval(f.children()[0], assignment, bound);
        if (f.kind() == Kind::Exists && sub) {
          result = true;
          break;
        }
        if (f.kind() == Kind::Forall && !sub) {
          result = false;
          break;
        }
      }
      if (saved)
        assignment[v] = *saved;
      else
        assignment.erase(v);
      return result;
    }
  }
  throw InvariantError("bad formula kind");
}

inline bool boundedEval(const SkolemFormula& f,
                        const std::map<std::string, Int>& assignment,
                        Int bound) {
  std::map<std::string, Int> env = assignment;
  return boundedEval(f, env, bound);
}

/// Membership straight from the set-builder definition: try every injective
/// assignment of exceptional slots to the primes of w; the remaining primes
/// must all fall into the rest set. Small instances only.
inline bool skolemianOracleMember(const SkolemianSet& s,
                                  std::span<const Int> w) {
  if (s.dim() < 1) throw DimensionError("membership requires dimension >= 1");
  if (w.size() != static_cast<std::size_t>(s.dim()))
    throw DimensionError("tuple length does not match dimension");
  ValuationProfile profile = valuationProfile(w);
  const std::size_t primes = profile.entries().size();
  const std::size_t n = s.exceptional().size();
  if (primes > 8 || n > 4)
    throw ResourceError("instance too large for the definition-level oracle");

  std::vector<int> slotOfPrime(primes, -1);  // -1: unassigned
  std::function<bool(std::size_t)> assign = [&](std::size_t slot) -> bool {
    if (slot == n) {
      for (std::size_t k = 0; k < primes; ++k) {
        if (slotOfPrime[k] >= 0) continue;
        if (!s.rest().member(profile.entries()[k].exponents)) return false;
      }
      return true;
    }
    for (std::size_t k = 0; k < primes; ++k) {
      if (slotOfPrime[k] >= 0) continue;
      if (!s.exceptional()[slot].member(profile.entries()[k].exponents))
        continue;
      slotOfPrime[k] = static_cast<int>(slot);
      if (assign(slot + 1)) return true;
      slotOfPrime[k] = -1;
    }
    return false;
  };
  return assign(0);
}

}  // namespace skolem

#endif  // SKOLEM_ORACLE_HPP
