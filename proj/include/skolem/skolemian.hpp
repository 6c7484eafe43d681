#ifndef SKOLEM_SKOLEMIAN_HPP
#define SKOLEM_SKOLEMIAN_HPP

/// Skolemian sets Def(a_1, ..., a_n; a) over N^d: tuples expressible as a
/// product p_1^{w_1} ... p_n^{w_n} q_1^{u_1} ... q_k^{u_k} of powers of
/// pairwise distinct primes with each exceptional exponent vector w_i drawn
/// from a_i and every other exponent vector drawn from the rest set a.
/// Semiskolemian sets are finite unions of these; they are closed under
/// intersection, complement and projection, and those three constructions
/// live here.
///
/// Representation invariant (dimension >= 1): the rest set contains the zero
/// vector and no exceptional set does. At dimension 0 components are TOP/BOT
/// and the invariant is waived; truth is decided by decideDimZero.

#include <algorithm>
#include <bit>
#include <functional>
#include <string>
#include <vector>

#include "skolem/semilinear.hpp"

namespace skolem {

struct Limits {
  std::size_t maxFormulaNodes = kDefaultMaxFormulaNodes;
  std::size_t maxDisjuncts = 100000;
};

class SkolemianSet {
 public:
  SkolemianSet(std::vector<SemilinearSet> exceptional, SemilinearSet rest)
      : dim_(rest.dim()),
        exceptional_(std::move(exceptional)),
        rest_(std::move(rest)) {
    for (std::size_t i = 0; i < exceptional_.size(); ++i) {
      if (exceptional_[i].dim() != dim_)
        throw DimensionError("exceptional component " + std::to_string(i + 1) +
                             " has dimension " +
                             std::to_string(exceptional_[i].dim()) +
                             ", rest has " + std::to_string(dim_));
    }
    if (dim_ >= 1) {
      if (!rest_.containsZero())
        throw InvariantError("rest set must contain the zero vector");
      for (std::size_t i = 0; i < exceptional_.size(); ++i)
        if (exceptional_[i].containsZero())
          throw InvariantError("exceptional component " +
                               std::to_string(i + 1) +
                               " contains the zero vector");
    }
    // canonical slot order: slot permutations denote the same set
    std::sort(exceptional_.begin(), exceptional_.end(),
              [](const SemilinearSet& a, const SemilinearSet& b) {
                return PresFormula::compare(a.formula(), b.formula()) < 0;
              });
  }

  int dim() const { return dim_; }
  const std::vector<SemilinearSet>& exceptional() const {
    return exceptional_;
  }
  const SemilinearSet& rest() const { return rest_; }

  std::string render() const {
    std::string out = "Def(";
    for (std::size_t i = 0; i < exceptional_.size(); ++i) {
      if (i) out += ", ";
      out += exceptional_[i].render();
    }
    if (!exceptional_.empty()) out += " ; ";
    out += rest_.render();
    out += ")";
    return out;
  }

 private:
  int dim_;
  std::vector<SemilinearSet> exceptional_;
  SemilinearSet rest_;
};

/// Validating constructor, spelled the way the paper writes the sets.
inline SkolemianSet makeDef(std::vector<SemilinearSet> exceptional,
                            SemilinearSet rest) {
  return SkolemianSet(std::move(exceptional), std::move(rest));
}

class SemiskolemianSet {
 public:
  SemiskolemianSet(int dim, std::vector<SkolemianSet> disjuncts,
                   const Limits& limits = {})
      : dim_(dim) {
    for (const auto& d : disjuncts)
      if (d.dim() != dim_) throw DimensionError("disjunct dimension mismatch");
    // deduplicate by rendered form; canonical slot order makes this catch
    // permuted duplicates as well
    std::vector<std::string> seen;
    for (auto& d : disjuncts) {
      std::string key = d.render();
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(std::move(key));
      disjuncts_.push_back(std::move(d));
      if (disjuncts_.size() > limits.maxDisjuncts)
        throw ResourceError("disjunct cap (" +
                            std::to_string(limits.maxDisjuncts) +
                            ") exceeded");
    }
  }

  static SemiskolemianSet empty(int dim) { return SemiskolemianSet(dim, {}); }

  /// The whole space N^d as the single disjunct Def(; full).
  static SemiskolemianSet full(int dim) {
    return SemiskolemianSet(dim, {makeDef({}, SemilinearSet::full(dim))});
  }

  int dim() const { return dim_; }
  const std::vector<SkolemianSet>& disjuncts() const { return disjuncts_; }
  bool isEmptyUnion() const { return disjuncts_.empty(); }

  std::string render() const {
    if (disjuncts_.empty()) return "EMPTY";
    std::string out;
    for (std::size_t i = 0; i < disjuncts_.size(); ++i) {
      if (i) out += " ∪ ";
      out += disjuncts_[i].render();
    }
    return out;
  }

 private:
  int dim_;
  std::vector<SkolemianSet> disjuncts_;
};

/// Truth of a dimension-0 skolemian set: the empty tuple belongs exactly when
/// every exceptional component is TOP (the rest set is irrelevant, since no
/// prime carries a nonzero exponent vector).
inline bool decideDimZero(const SkolemianSet& s) {
  if (s.dim() != 0)
    throw DimensionError("decideDimZero requires dimension 0");
  for (const auto& slot : s.exceptional())
    if (!slot.formula().isTrue()) return false;
  return true;
}

namespace detail {

inline bool anySlotEmpty(const std::vector<SemilinearSet>& slots,
                         std::size_t maxNodes) {
  for (const auto& s : slots)
    if (s.isEmpty(maxNodes)) return true;
  return false;
}

inline void appendDisjunct(std::vector<SkolemianSet>& out, SkolemianSet d,
                           const Limits& limits) {
  out.push_back(std::move(d));
  if (out.size() > limits.maxDisjuncts)
    throw ResourceError("disjunct cap (" +
                        std::to_string(limits.maxDisjuncts) + ") exceeded");
}

}  // namespace detail

/// Intersection of two skolemian sets. Every element of the intersection
/// factors through some pairing of exceptional slots: each slot of one side
/// is either identified with a slot of the other side or falls into the other
/// side's rest set. The result is the union, over all such pairings, of
/// Def((a_i intersect b_j)_{(i,j)}; a intersect b), where index 0 stands for
/// the rest set. The (0,0) pair is excluded: it would put a zero-containing
/// set into an exceptional slot, and the rest slot already covers it.
inline SemiskolemianSet intersectSkolemian(const SkolemianSet& a,
                                           const SkolemianSet& b,
                                           const Limits& limits = {}) {
  if (a.dim() != b.dim()) throw DimensionError("dimension mismatch");
  const int n = static_cast<int>(a.exceptional().size());
  const int m = static_cast<int>(b.exceptional().size());
  SemilinearSet restBoth = intersect(a.rest(), b.rest());

  std::vector<SkolemianSet> out;
  std::vector<int> partner(static_cast<std::size_t>(n), 0);  // 0 = rest of b
  std::vector<char> usedRight(static_cast<std::size_t>(m) + 1, 0);

  std::function<void(int)> enumerate = [&](int i) {
    if (i == n) {
      std::vector<SemilinearSet> slots;
      for (int k = 0; k < n; ++k) {
        const SemilinearSet& left = a.exceptional()[static_cast<std::size_t>(k)];
        int j = partner[static_cast<std::size_t>(k)];
        slots.push_back(j == 0
                            ? intersect(left, b.rest())
                            : intersect(left, b.exceptional()[static_cast<std::size_t>(j - 1)]));
      }
      for (int j = 1; j <= m; ++j)
        if (!usedRight[static_cast<std::size_t>(j)])
          slots.push_back(intersect(
              a.rest(), b.exceptional()[static_cast<std::size_t>(j - 1)]));
      if (detail::anySlotEmpty(slots, limits.maxFormulaNodes)) return;
      detail::appendDisjunct(out, makeDef(std::move(slots), restBoth), limits);
      return;
    }
    partner[static_cast<std::size_t>(i)] = 0;
    enumerate(i + 1);
    for (int j = 1; j <= m; ++j) {
      if (usedRight[static_cast<std::size_t>(j)]) continue;
      usedRight[static_cast<std::size_t>(j)] = 1;
      partner[static_cast<std::size_t>(i)] = j;
      enumerate(i + 1);
      usedRight[static_cast<std::size_t>(j)] = 0;
    }
  };
  enumerate(0);
  return SemiskolemianSet(a.dim(), std::move(out), limits);
}

/// Complement of a skolemian set, following the two failure modes of the
/// matching criterion. With a = rest, a_i = exceptional:
///   (a1) at least n+1 primes carry exponents outside a:
///        Def(a^c x (n+1); N^d);
///   (a2) some n' primes land outside a and outside n-n'+1 of the a_i
///        simultaneously (a Hall violation on the bad primes):
///        Def(beta_I x n'; N^d) with beta_I = a^c and the complements of the
///        chosen a_i, over all 1 <= n' <= n, |I| = n-n'+1;
///   (b)  fewer primes meet gamma_I = union of {a_i : i in I} than |I|
///        (a Hall violation on the slots):
///        Def(gamma_I x n'; gamma_I^c), over all nonempty I and n' < |I|.
inline SemiskolemianSet complementSkolemian(const SkolemianSet& s,
                                            const Limits& limits = {}) {
  if (s.dim() < 1)
    throw DimensionError("complementSkolemian requires dimension >= 1");
  const int d = s.dim();
  const int n = static_cast<int>(s.exceptional().size());
  if (n > 20) throw ResourceError("too many exceptional components: " +
                                  std::to_string(n));
  const SemilinearSet full = SemilinearSet::full(d);
  const SemilinearSet restC = complement(s.rest());
  std::vector<SkolemianSet> out;

  // (a1)
  if (!restC.isEmpty(limits.maxFormulaNodes)) {
    std::vector<SemilinearSet> slots(static_cast<std::size_t>(n) + 1, restC);
    detail::appendDisjunct(out, makeDef(std::move(slots), full), limits);
  }

  // (a2)
  for (int nPrime = 1; nPrime <= n; ++nPrime) {
    const int want = n - nPrime + 1;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != want) continue;
      SemilinearSet beta = restC;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i))
          beta = intersect(
              beta, complement(s.exceptional()[static_cast<std::size_t>(i)]));
      if (beta.isEmpty(limits.maxFormulaNodes)) continue;
      std::vector<SemilinearSet> slots(static_cast<std::size_t>(nPrime), beta);
      detail::appendDisjunct(out, makeDef(std::move(slots), full), limits);
    }
  }

  // (b)
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    SemilinearSet gamma = SemilinearSet::empty(d);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i))
        gamma = unite(gamma, s.exceptional()[static_cast<std::size_t>(i)]);
    const bool gammaEmpty = gamma.isEmpty(limits.maxFormulaNodes);
    SemilinearSet gammaC = complement(gamma);
    for (int nPrime = 0; nPrime < std::popcount(mask); ++nPrime) {
      if (nPrime >= 1 && gammaEmpty) break;  // empty exceptional slot
      std::vector<SemilinearSet> slots(static_cast<std::size_t>(nPrime), gamma);
      detail::appendDisjunct(out, makeDef(std::move(slots), gammaC), limits);
    }
  }

  return SemiskolemianSet(d, std::move(out), limits);
}

/// Projection of a skolemian set is componentwise projection followed by a
/// repair step: a projected exceptional slot may have gained the zero vector,
/// which the representation forbids. A slot value of zero means its prime is
/// simply absent (fresh primes are plentiful), so such a disjunct splits into
/// "slot minus zero" and "slot dropped".
inline SemiskolemianSet projectSkolemian(const SkolemianSet& s, Var coord,
                                         const Limits& limits = {}) {
  if (s.dim() < 1) throw DimensionError("projection requires dimension >= 1");
  if (coord < 1 || coord > s.dim())
    throw DimensionError("projection coordinate out of range");
  const int newDim = s.dim() - 1;
  SemilinearSet rest = projectAway(s.rest(), coord, limits.maxFormulaNodes);
  std::vector<SemilinearSet> slots;
  for (const auto& e : s.exceptional())
    slots.push_back(projectAway(e, coord, limits.maxFormulaNodes));

  std::vector<SkolemianSet> out;
  std::vector<SemilinearSet> cur;
  std::function<void(std::size_t)> normalize = [&](std::size_t k) {
    if (k == slots.size()) {
      if (detail::anySlotEmpty(cur, limits.maxFormulaNodes)) return;
      detail::appendDisjunct(out, makeDef(cur, rest), limits);
      return;
    }
    const SemilinearSet& slot = slots[k];
    if (newDim >= 1 && slot.containsZero()) {
      cur.push_back(slot.removeZero());
      normalize(k + 1);
      cur.pop_back();
      normalize(k + 1);  // slot dropped: its prime is chosen fresh
    } else {
      cur.push_back(slot);
      normalize(k + 1);
      cur.pop_back();
    }
  };
  normalize(0);
  return SemiskolemianSet(newDim, std::move(out), limits);
}

// ---------------------------------------------------------------------------
// Operations lifted to unions

inline SemiskolemianSet unionSemi(const SemiskolemianSet& a,
                                  const SemiskolemianSet& b,
                                  const Limits& limits = {}) {
  if (a.dim() != b.dim()) throw DimensionError("dimension mismatch");
  std::vector<SkolemianSet> all = a.disjuncts();
  for (const auto& d : b.disjuncts()) all.push_back(d);
  return SemiskolemianSet(a.dim(), std::move(all), limits);
}

inline SemiskolemianSet intersectSemi(const SemiskolemianSet& a,
                                      const SemiskolemianSet& b,
                                      const Limits& limits = {}) {
  if (a.dim() != b.dim()) throw DimensionError("dimension mismatch");
  std::vector<SkolemianSet> all;
  for (const auto& da : a.disjuncts()) {
    for (const auto& db : b.disjuncts()) {
      SemiskolemianSet pair = intersectSkolemian(da, db, limits);
      for (const auto& d : pair.disjuncts())
        detail::appendDisjunct(all, d, limits);
    }
  }
  return SemiskolemianSet(a.dim(), std::move(all), limits);
}

inline SemiskolemianSet complementSemi(const SemiskolemianSet& a,
                                       const Limits& limits = {}) {
  if (a.dim() == 0) {
    // subsets of {eps}: complement flips the decided truth value
    for (const auto& d : a.disjuncts())
      if (decideDimZero(d)) return SemiskolemianSet::empty(0);
    return SemiskolemianSet::full(0);
  }
  if (a.isEmptyUnion()) return SemiskolemianSet::full(a.dim());
  SemiskolemianSet acc = complementSkolemian(a.disjuncts()[0], limits);
  for (std::size_t i = 1; i < a.disjuncts().size(); ++i)
    acc = intersectSemi(acc, complementSkolemian(a.disjuncts()[i], limits),
                        limits);
  return acc;
}

inline SemiskolemianSet projectSemi(const SemiskolemianSet& a, Var coord,
                                    const Limits& limits = {}) {
  std::vector<SkolemianSet> all;
  for (const auto& d : a.disjuncts()) {
    SemiskolemianSet projected = projectSkolemian(d, coord, limits);
    for (const auto& p : projected.disjuncts())
      detail::appendDisjunct(all, p, limits);
  }
  return SemiskolemianSet(a.dim() - 1, std::move(all), limits);
}

}  // namespace skolem

#endif  // SKOLEM_SKOLEMIAN_HPP
