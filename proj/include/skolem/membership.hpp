#ifndef SKOLEM_MEMBERSHIP_HPP
#define SKOLEM_MEMBERSHIP_HPP

/// Ground-tuple membership in skolemian sets. A tuple of positive integers
/// is factored into its prime valuation profile; membership then reduces to
/// two matching queries on the bipartite graph between the tuple's primes
/// and the exceptional slots.

#include <map>
#include <span>
#include <vector>

#include "skolem/matching.hpp"
#include "skolem/skolemian.hpp"

namespace skolem {

struct ValuationEntry {
  Int prime;
  std::vector<Int> exponents;  // length = dimension, not all zero
};

/// The finite support of a tuple: primes in increasing order, each with its
/// componentwise exponent vector. Multiplying the powers back recovers the
/// tuple.
class ValuationProfile {
 public:
  ValuationProfile(int dim, std::vector<ValuationEntry> entries)
      : dim_(dim), entries_(std::move(entries)) {}

  int dim() const { return dim_; }
  const std::vector<ValuationEntry>& entries() const { return entries_; }

 private:
  int dim_;
  std::vector<ValuationEntry> entries_;
};

/// Factors every component by trial division. Components must be positive;
/// zero cannot be represented as a product of prime powers.
inline ValuationProfile valuationProfile(std::span<const Int> w) {
  for (Int x : w)
    if (x < 1)
      throw DomainError("tuple components must be positive integers, got " +
                        std::to_string(x));
  std::map<Int, std::vector<Int>> exps;
  const std::size_t d = w.size();
  for (std::size_t i = 0; i < d; ++i) {
    Int n = w[i];
    for (Int p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
      if (n % p != 0) continue;
      Int e = 0;
      while (n % p == 0) n /= p, ++e;
      auto& vec = exps.try_emplace(p, std::vector<Int>(d, 0)).first->second;
      vec[i] = e;
    }
    if (n > 1) {
      auto& vec = exps.try_emplace(n, std::vector<Int>(d, 0)).first->second;
      vec[i] += 1;
    }
  }
  std::vector<ValuationEntry> entries;
  entries.reserve(exps.size());
  for (auto& [p, vec] : exps) entries.push_back({p, std::move(vec)});
  return ValuationProfile(static_cast<int>(d), std::move(entries));
}

/// Membership criterion: with P the primes of w, P0 those whose valuation
/// falls outside the rest set, and edges (p, i) whenever the valuation of p
/// lies in exceptional slot i, w belongs exactly when P0 and the full slot
/// side both admit covering matchings. The two conditions may be tested
/// independently; separately coverable sides always merge into one matching.
inline bool memberSkolemian(const SkolemianSet& s, std::span<const Int> w) {
  if (s.dim() < 1)
    throw DimensionError("membership requires dimension >= 1; "
                         "dimension 0 uses decideDimZero");
  if (w.size() != static_cast<std::size_t>(s.dim()))
    throw DimensionError("tuple has length " + std::to_string(w.size()) +
                         ", set has dimension " + std::to_string(s.dim()));
  ValuationProfile profile = valuationProfile(w);
  const int primeCount = static_cast<int>(profile.entries().size());
  const int n = static_cast<int>(s.exceptional().size());

  std::vector<int> outsideRest;
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < primeCount; ++k) {
    const auto& exps = profile.entries()[static_cast<std::size_t>(k)].exponents;
    if (!s.rest().member(exps)) outsideRest.push_back(k + 1);
    for (int i = 0; i < n; ++i)
      if (s.exceptional()[static_cast<std::size_t>(i)].member(exps))
        edges.emplace_back(k + 1, i + 1);
  }
  BipartiteGraph g(primeCount, n, std::move(edges));
  if (!hasMatchingCovering(g, Side::Left, outsideRest)) return false;
  std::vector<int> allSlots;
  for (int i = 1; i <= n; ++i) allSlots.push_back(i);
  return hasMatchingCovering(g, Side::Right, allSlots);
}

inline bool memberSemi(const SemiskolemianSet& s, std::span<const Int> w) {
  for (const auto& d : s.disjuncts())
    if (memberSkolemian(d, w)) return true;
  return false;
}

}  // namespace skolem

#endif  // SKOLEM_MEMBERSHIP_HPP
