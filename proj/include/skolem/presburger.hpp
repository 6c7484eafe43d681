#ifndef SKOLEM_PRESBURGER_HPP
#define SKOLEM_PRESBURGER_HPP

/// Quantifier-free Presburger formulas over natural-number variables:
/// construction with eager simplification, point evaluation, Cooper-style
/// existential quantifier elimination, truth of closed sentences, and a
/// round-trippable text form.
///
/// Atoms are `term = 0`, `term <= 0` and `m | term` for linear terms with
/// integer coefficients. The variables always denote naturals (they are
/// prime-exponent coordinates); elimination of `exists v` therefore guards
/// the eliminated variable with `v >= 0` internally and the simplifier may
/// use nonnegativity of the remaining variables.

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skolem/errors.hpp"

namespace skolem {

inline constexpr std::size_t kDefaultMaxFormulaNodes = 100000;

// ---------------------------------------------------------------------------
// LinearTerm

/// Integer-linear expression sum(coeff_i * v_i) + constant, kept in canonical
/// form: coefficients sorted by variable index, no zero coefficient stored.
class LinearTerm {
 public:
  LinearTerm() = default;
  explicit LinearTerm(Int constant) : constant_(constant) {}

  static LinearTerm variable(Var v, Int coeff = 1) {
    LinearTerm t;
    if (v < 1) throw DimensionError("variable index must be >= 1");
    if (coeff != 0) t.coeffs_.emplace_back(v, coeff);
    return t;
  }

  const std::vector<std::pair<Var, Int>>& coeffs() const { return coeffs_; }
  Int constant() const { return constant_; }
  bool isConstant() const { return coeffs_.empty(); }

  Int coeff(Var v) const {
    for (const auto& [var, c] : coeffs_)
      if (var == v) return c;
    return 0;
  }

  Var maxVar() const { return coeffs_.empty() ? 0 : coeffs_.back().first; }

  bool mentions(Var v) const { return coeff(v) != 0; }

  LinearTerm operator+(const LinearTerm& o) const {
    LinearTerm r;
    r.constant_ = checkedAdd(constant_, o.constant_);
    std::size_t i = 0, j = 0;
    while (i < coeffs_.size() || j < o.coeffs_.size()) {
      if (j == o.coeffs_.size() ||
          (i < coeffs_.size() && coeffs_[i].first < o.coeffs_[j].first)) {
        r.coeffs_.push_back(coeffs_[i++]);
      } else if (i == coeffs_.size() || o.coeffs_[j].first < coeffs_[i].first) {
        r.coeffs_.push_back(o.coeffs_[j++]);
      } else {
        Int c = checkedAdd(coeffs_[i].second, o.coeffs_[j].second);
        if (c != 0) r.coeffs_.emplace_back(coeffs_[i].first, c);
        ++i, ++j;
      }
    }
    return r;
  }

  LinearTerm operator-() const {
    LinearTerm r = *this;
    r.constant_ = checkedSub(0, r.constant_);
    for (auto& [v, c] : r.coeffs_) c = checkedSub(0, c);
    return r;
  }

  LinearTerm operator-(const LinearTerm& o) const { return *this + (-o); }

  LinearTerm operator*(Int k) const {
    if (k == 0) return LinearTerm{};
    LinearTerm r = *this;
    r.constant_ = checkedMul(r.constant_, k);
    for (auto& [v, c] : r.coeffs_) c = checkedMul(c, k);
    return r;
  }

  /// Replaces variable v (with its stored coefficient c) by c * repl.
  LinearTerm substitute(Var v, const LinearTerm& repl) const {
    Int c = coeff(v);
    if (c == 0) return *this;
    return withoutVar(v) + repl * c;
  }

  LinearTerm withoutVar(Var v) const {
    LinearTerm r = *this;
    std::erase_if(r.coeffs_, [v](const auto& p) { return p.first == v; });
    return r;
  }

  LinearTerm withCoeff(Var v, Int c) const {
    LinearTerm r = withoutVar(v);
    return r + variable(v, c);
  }

  /// Renumbers every variable index > v down by one (used when a coordinate
  /// is projected away).
  LinearTerm shiftAbove(Var v) const {
    LinearTerm r = *this;
    for (auto& [var, c] : r.coeffs_) {
      if (var == v) throw DimensionError("cannot shift over a live variable");
      if (var > v) --var;
    }
    return r;
  }

  Int evaluate(std::span<const Int> point) const {
    Int acc = constant_;
    for (const auto& [v, c] : coeffs_) {
      if (static_cast<std::size_t>(v) > point.size())
        throw DimensionError("point too short for variable v" +
                             std::to_string(v));
      acc = checkedAdd(acc, checkedMul(c, point[v - 1]));
    }
    return acc;
  }

  auto operator<=>(const LinearTerm&) const = default;

 private:
  std::vector<std::pair<Var, Int>> coeffs_;
  Int constant_ = 0;
};

// ---------------------------------------------------------------------------
// PresAtom

enum class AtomKind { Eq, Leq, Dvd };

/// Eq: term = 0.  Leq: term <= 0.  Dvd: modulus | term, modulus >= 1.
struct PresAtom {
  AtomKind kind;
  LinearTerm term;
  Int modulus = 0;  // Dvd only

  auto operator<=>(const PresAtom&) const = default;
};

namespace detail {

inline std::size_t hashCombine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hashTerm(const LinearTerm& t) {
  std::size_t h = std::hash<Int>{}(t.constant());
  for (const auto& [v, c] : t.coeffs()) {
    h = hashCombine(h, std::hash<Var>{}(v));
    h = hashCombine(h, std::hash<Int>{}(c));
  }
  return h;
}

inline std::size_t hashAtom(const PresAtom& a) {
  std::size_t h = static_cast<std::size_t>(a.kind) * 0x51ed270b;
  h = hashCombine(h, hashTerm(a.term));
  h = hashCombine(h, std::hash<Int>{}(a.modulus));
  return h;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// PresFormula

/// Immutable boolean tree over atoms. Nodes are shared; all construction goes
/// through the simplifying factories, so trivially foldable subtrees (constant
/// atoms, double negation, true/false units, duplicate or complementary
/// children) never survive construction.
class PresFormula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or };

  /// Default-constructed formula is `true`.
  PresFormula() : node_(trueNode()) {}

  static PresFormula top() { return PresFormula(trueNode()); }
  static PresFormula bottom() { return PresFormula(falseNode()); }

  /// Normalizing atom factory: folds constant atoms, gcd-reduces, takes
  /// divisibility coefficients modulo the modulus and fixes the sign of
  /// equations.
  static PresFormula atom(PresAtom a);

  static PresFormula eq(LinearTerm t) {
    return atom({AtomKind::Eq, std::move(t), 0});
  }
  static PresFormula leq(LinearTerm t) {
    return atom({AtomKind::Leq, std::move(t), 0});
  }
  static PresFormula dvd(Int modulus, LinearTerm t) {
    return atom({AtomKind::Dvd, std::move(t), modulus});
  }
  // Strict and negated comparisons desugar to the three stored kinds.
  static PresFormula lt(LinearTerm t) { return leq(t + LinearTerm(1)); }
  static PresFormula geq(LinearTerm t) { return leq(-t); }
  static PresFormula neq(LinearTerm t) { return negate(eq(std::move(t))); }

  static PresFormula negate(const PresFormula& f) {
    switch (f.kind()) {
      case Kind::True:
        return bottom();
      case Kind::False:
        return top();
      case Kind::Not:
        return f.children()[0];
      default:
        return PresFormula(makeNode(Kind::Not, std::nullopt, {f}));
    }
  }

  static PresFormula conj(std::vector<PresFormula> kids) {
    return nary(Kind::And, std::move(kids));
  }
  static PresFormula disj(std::vector<PresFormula> kids) {
    return nary(Kind::Or, std::move(kids));
  }
  static PresFormula conj(PresFormula a, PresFormula b) {
    return conj(std::vector<PresFormula>{std::move(a), std::move(b)});
  }
  static PresFormula disj(PresFormula a, PresFormula b) {
    return disj(std::vector<PresFormula>{std::move(a), std::move(b)});
  }

  Kind kind() const { return node_->kind; }
  bool isTrue() const { return kind() == Kind::True; }
  bool isFalse() const { return kind() == Kind::False; }
  const PresAtom& atomValue() const { return *node_->atom; }
  const std::vector<PresFormula>& children() const { return node_->kids; }

  /// Number of nodes in the tree expansion (shared subtrees counted each
  /// time they occur); the quantity limited by the formula size cap.
  std::size_t nodeCount() const { return node_->size; }
  Var maxVar() const { return node_->maxVar; }
  std::size_t hash() const { return node_->hash; }

  bool mentions(Var v) const {
    if (v > maxVar()) return false;
    switch (kind()) {
      case Kind::True:
      case Kind::False:
        return false;
      case Kind::Atom:
        return atomValue().term.mentions(v);
      default:
        for (const auto& k : children())
          if (k.mentions(v)) return true;
        return false;
    }
  }

  /// Truth under the assignment point[i-1] for variable v_i. Coordinates
  /// beyond the formula's variables are ignored; a too-short point raises
  /// DimensionError.
  bool evaluate(std::span<const Int> point) const {
    switch (kind()) {
      case Kind::True:
        return true;
      case Kind::False:
        return false;
      case Kind::Atom: {
        const PresAtom& a = atomValue();
        Int val = a.term.evaluate(point);
        switch (a.kind) {
          case AtomKind::Eq:
            return val == 0;
          case AtomKind::Leq:
            return val <= 0;
          case AtomKind::Dvd:
            return modFloor(val, a.modulus) == 0;
        }
        return false;
      }
      case Kind::Not:
        return !children()[0].evaluate(point);
      case Kind::And:
        for (const auto& k : children())
          if (!k.evaluate(point)) return false;
        return true;
      case Kind::Or:
        for (const auto& k : children())
          if (k.evaluate(point)) return true;
        return false;
    }
    return false;
  }

  /// Total structural order; 0 on equal trees. Used for canonical child
  /// ordering and deduplication, never for semantics.
  static int compare(const PresFormula& a, const PresFormula& b) {
    if (a.node_ == b.node_) return 0;
    if (a.node_->hash != b.node_->hash)
      return a.node_->hash < b.node_->hash ? -1 : 1;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    if (a.kind() == Kind::Atom) {
      if (a.atomValue() == b.atomValue()) return 0;
      return a.atomValue() < b.atomValue() ? -1 : 1;
    }
    if (a.children().size() != b.children().size())
      return a.children().size() < b.children().size() ? -1 : 1;
    for (std::size_t i = 0; i < a.children().size(); ++i) {
      int c = compare(a.children()[i], b.children()[i]);
      if (c != 0) return c;
    }
    return 0;
  }

  bool equals(const PresFormula& o) const { return compare(*this, o) == 0; }

  std::string render() const;
  static PresFormula read(std::string_view text);

 private:
  struct Node {
    Kind kind;
    std::optional<PresAtom> atom;
    std::vector<PresFormula> kids;
    std::size_t size;
    Var maxVar;
    std::size_t hash;
  };

  explicit PresFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static const std::shared_ptr<const Node>& trueNode() {
    static const auto n = std::make_shared<const Node>(
        Node{Kind::True, std::nullopt, {}, 1, 0, 0x74727565});
    return n;
  }
  static const std::shared_ptr<const Node>& falseNode() {
    static const auto n = std::make_shared<const Node>(
        Node{Kind::False, std::nullopt, {}, 1, 0, 0x66616c73});
    return n;
  }

  static std::shared_ptr<const Node> makeNode(Kind kind,
                                              std::optional<PresAtom> atom,
                                              std::vector<PresFormula> kids) {
    std::size_t size = 1;
    Var maxVar = 0;
    std::size_t h = static_cast<std::size_t>(kind) * 0x9e3779b9;
    if (atom) {
      maxVar = atom->term.maxVar();
      h = detail::hashCombine(h, detail::hashAtom(*atom));
    }
    for (const auto& k : kids) {
      size += k.nodeCount();
      maxVar = std::max(maxVar, k.maxVar());
      h = detail::hashCombine(h, k.hash());
    }
    return std::make_shared<const Node>(
        Node{kind, std::move(atom), std::move(kids), size, maxVar, h});
  }

  static PresFormula nary(Kind kind, std::vector<PresFormula> kids) {
    const bool isAnd = (kind == Kind::And);
    std::vector<PresFormula> flat;
    for (auto& k : kids) {
      if (isAnd ? k.isFalse() : k.isTrue())
        return isAnd ? bottom() : top();  // absorbing element
      if (isAnd ? k.isTrue() : k.isFalse()) continue;  // unit element
      if (k.kind() == kind) {
        for (const auto& g : k.children()) flat.push_back(g);
      } else {
        flat.push_back(std::move(k));
      }
    }
    std::sort(flat.begin(), flat.end(), [](const auto& a, const auto& b) {
      return compare(a, b) < 0;
    });
    flat.erase(std::unique(flat.begin(), flat.end(),
                           [](const auto& a, const auto& b) {
                             return compare(a, b) == 0;
                           }),
               flat.end());
    // x & !x -> false, x | !x -> true
    for (const auto& k : flat) {
      if (k.kind() != Kind::Not) continue;
      const PresFormula& inner = k.children()[0];
      for (const auto& g : flat)
        if (compare(g, inner) == 0) return isAnd ? bottom() : top();
    }
    if (flat.empty()) return isAnd ? top() : bottom();
    if (flat.size() == 1) return flat[0];
    return PresFormula(makeNode(kind, std::nullopt, std::move(flat)));
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Atom normalization

inline PresFormula PresFormula::atom(PresAtom a) {
  switch (a.kind) {
    case AtomKind::Eq: {
      if (a.term.isConstant())
        return a.term.constant() == 0 ? top() : bottom();
      Int g = 0;
      for (const auto& [v, c] : a.term.coeffs()) g = std::gcd(g, c);
      if (a.term.constant() % g != 0) return bottom();
      LinearTerm t;
      for (const auto& [v, c] : a.term.coeffs())
        t = t + LinearTerm::variable(v, c / g);
      t = t + LinearTerm(a.term.constant() / g);
      if (t.coeffs().front().second < 0) t = -t;  // leading coefficient > 0
      return PresFormula(
          makeNode(Kind::Atom, PresAtom{AtomKind::Eq, std::move(t), 0}, {}));
    }
    case AtomKind::Leq: {
      if (a.term.isConstant())
        return a.term.constant() <= 0 ? top() : bottom();
      Int g = 0;
      for (const auto& [v, c] : a.term.coeffs()) g = std::gcd(g, c);
      LinearTerm t;
      for (const auto& [v, c] : a.term.coeffs())
        t = t + LinearTerm::variable(v, c / g);
      // g*t' + c <= 0  <=>  t' <= floor(-c/g)
      t = t + LinearTerm(-floorDiv(-a.term.constant(), g));
      return PresFormula(
          makeNode(Kind::Atom, PresAtom{AtomKind::Leq, std::move(t), 0}, {}));
    }
    case AtomKind::Dvd: {
      if (a.modulus < 1) throw DomainError("divisibility modulus must be >= 1");
      if (a.modulus == 1) return top();
      LinearTerm t(modFloor(a.term.constant(), a.modulus));
      for (const auto& [v, c] : a.term.coeffs())
        t = t + LinearTerm::variable(v, modFloor(c, a.modulus));
      if (t.isConstant()) return t.constant() == 0 ? top() : bottom();
      Int g = a.modulus;
      for (const auto& [v, c] : t.coeffs()) g = std::gcd(g, c);
      g = std::gcd(g, t.constant());
      if (g > 1) {
        LinearTerm t2(t.constant() / g);
        for (const auto& [v, c] : t.coeffs())
          t2 = t2 + LinearTerm::variable(v, c / g);
        t = std::move(t2);
        a.modulus /= g;
      }
      if (a.modulus == 1) return top();
      return PresFormula(makeNode(
          Kind::Atom, PresAtom{AtomKind::Dvd, std::move(t), a.modulus}, {}));
    }
  }
  throw InvariantError("bad atom kind");
}

// ---------------------------------------------------------------------------
// Traversal helpers

/// Rewrites every atom through the simplifying constructors, replacing the
/// eliminated variable v (any coefficient) by the given term.
inline PresFormula substitute(const PresFormula& f, Var v,
                              const LinearTerm& repl) {
  switch (f.kind()) {
    case PresFormula::Kind::True:
    case PresFormula::Kind::False:
      return f;
    case PresFormula::Kind::Atom: {
      const PresAtom& a = f.atomValue();
      if (!a.term.mentions(v)) return f;
      return PresFormula::atom(
          {a.kind, a.term.substitute(v, repl), a.modulus});
    }
    case PresFormula::Kind::Not:
      return PresFormula::negate(substitute(f.children()[0], v, repl));
    case PresFormula::Kind::And:
    case PresFormula::Kind::Or: {
      std::vector<PresFormula> kids;
      kids.reserve(f.children().size());
      for (const auto& k : f.children()) kids.push_back(substitute(k, v, repl));
      return f.kind() == PresFormula::Kind::And
                 ? PresFormula::conj(std::move(kids))
                 : PresFormula::disj(std::move(kids));
    }
  }
  throw InvariantError("bad formula kind");
}

/// Renumbers every variable index above v down by one. The formula must not
/// mention v itself.
inline PresFormula shiftAbove(const PresFormula& f, Var v) {
  switch (f.kind()) {
    case PresFormula::Kind::True:
    case PresFormula::Kind::False:
      return f;
    case PresFormula::Kind::Atom: {
      const PresAtom& a = f.atomValue();
      if (a.term.maxVar() <= v) return f;
      return PresFormula::atom({a.kind, a.term.shiftAbove(v), a.modulus});
    }
    case PresFormula::Kind::Not:
      return PresFormula::negate(shiftAbove(f.children()[0], v));
    case PresFormula::Kind::And:
    case PresFormula::Kind::Or: {
      std::vector<PresFormula> kids;
      kids.reserve(f.children().size());
      for (const auto& k : f.children()) kids.push_back(shiftAbove(k, v));
      return f.kind() == PresFormula::Kind::And
                 ? PresFormula::conj(std::move(kids))
                 : PresFormula::disj(std::move(kids));
    }
  }
  throw InvariantError("bad formula kind");
}

/// Simplification that is sound when every variable ranges over the
/// naturals: an inequality whose term cannot be positive folds to true, one
/// whose term is always positive folds to false, and equations with a
/// same-signed nonzero bias fold to false. Inner boolean structure is rebuilt
/// through the smart constructors.
inline PresFormula simplifyAssumeNat(const PresFormula& f) {
  switch (f.kind()) {
    case PresFormula::Kind::True:
    case PresFormula::Kind::False:
      return f;
    case PresFormula::Kind::Atom: {
      const PresAtom& a = f.atomValue();
      if (a.kind == AtomKind::Dvd) return f;
      bool allNonNeg = true, allNonPos = true;
      for (const auto& [v, c] : a.term.coeffs()) {
        allNonNeg &= c > 0;
        allNonPos &= c < 0;
      }
      Int k = a.term.constant();
      if (a.kind == AtomKind::Leq) {
        if (allNonPos && k <= 0) return PresFormula::top();
        if (allNonNeg && k > 0) return PresFormula::bottom();
      } else {  // Eq
        if (allNonNeg && k > 0) return PresFormula::bottom();
        if (allNonPos && k < 0) return PresFormula::bottom();
      }
      return f;
    }
    case PresFormula::Kind::Not:
      return PresFormula::negate(simplifyAssumeNat(f.children()[0]));
    case PresFormula::Kind::And:
    case PresFormula::Kind::Or: {
      std::vector<PresFormula> kids;
      kids.reserve(f.children().size());
      for (const auto& k : f.children()) kids.push_back(simplifyAssumeNat(k));
      return f.kind() == PresFormula::Kind::And
                 ? PresFormula::conj(std::move(kids))
                 : PresFormula::disj(std::move(kids));
    }
  }
  throw InvariantError("bad formula kind");
}

// ---------------------------------------------------------------------------
// Cooper-style quantifier elimination

namespace detail {

/// Negation normal form in which Not survives only on divisibility atoms;
/// negated equations and inequalities are desugared into inequalities.
inline PresFormula nnf(const PresFormula& f, bool positive) {
  switch (f.kind()) {
    case PresFormula::Kind::True:
      return positive ? PresFormula::top() : PresFormula::bottom();
    case PresFormula::Kind::False:
      return positive ? PresFormula::bottom() : PresFormula::top();
    case PresFormula::Kind::Atom: {
      if (positive) return f;
      const PresAtom& a = f.atomValue();
      switch (a.kind) {
        case AtomKind::Eq:  // t != 0  <=>  t <= -1 or -t <= -1
          return PresFormula::disj(
              PresFormula::leq(a.term + LinearTerm(1)),
              PresFormula::leq(-a.term + LinearTerm(1)));
        case AtomKind::Leq:  // !(t <= 0)  <=>  -t + 1 <= 0
          return PresFormula::leq(-a.term + LinearTerm(1));
        case AtomKind::Dvd:
          return PresFormula::negate(f);
      }
      throw InvariantError("bad atom kind");
    }
    case PresFormula::Kind::Not:
      return nnf(f.children()[0], !positive);
    case PresFormula::Kind::And:
    case PresFormula::Kind::Or: {
      std::vector<PresFormula> kids;
      kids.reserve(f.children().size());
      for (const auto& k : f.children()) kids.push_back(nnf(k, positive));
      bool mkAnd = (f.kind() == PresFormula::Kind::And) == positive;
      return mkAnd ? PresFormula::conj(std::move(kids))
                   : PresFormula::disj(std::move(kids));
    }
  }
  throw InvariantError("bad formula kind");
}

inline void forEachAtom(const PresFormula& f,
                        const std::function<void(const PresAtom&)>& fn) {
  switch (f.kind()) {
    case PresFormula::Kind::Atom:
      fn(f.atomValue());
      return;
    case PresFormula::Kind::Not:
    case PresFormula::Kind::And:
    case PresFormula::Kind::Or:
      for (const auto& k : f.children()) forEachAtom(k, fn);
      return;
    default:
      return;
  }
}

/// Scales every atom containing x so that x's coefficient becomes +-lambda,
/// then reinterprets lambda*x as a unit-coefficient variable.
inline PresFormula scaleVar(const PresFormula& f, Var x, Int lambda) {
  switch (f.kind()) {
    case PresFormula::Kind::True:
    case PresFormula::Kind::False:
      return f;
    case PresFormula::Kind::Atom: {
      const PresAtom& a = f.atomValue();
      Int c = a.term.coeff(x);
      if (c == 0) return f;
      Int k = lambda / (c < 0 ? -c : c);
      LinearTerm t = (a.term * k).withCoeff(x, c < 0 ? -1 : 1);
      Int m = a.kind == AtomKind::Dvd ? checkedMul(a.modulus, k) : 0;
      return PresFormula::atom({a.kind, std::move(t), m});
    }
    case PresFormula::Kind::Not:
      return PresFormula::negate(scaleVar(f.children()[0], x, lambda));
    case PresFormula::Kind::And:
    case PresFormula::Kind::Or: {
      std::vector<PresFormula> kids;
      kids.reserve(f.children().size());
      for (const auto& k : f.children()) kids.push_back(scaleVar(k, x, lambda));
      return f.kind() == PresFormula::Kind::And
                 ? PresFormula::conj(std::move(kids))
                 : PresFormula::disj(std::move(kids));
    }
  }
  throw InvariantError("bad formula kind");
}

/// Virtual substitution of x -> -inf (or +inf): order atoms on x decide,
/// divisibility atoms survive for the residue disjunction.
inline PresFormula infProject(const PresFormula& f, Var x, bool minusInf) {
  switch (f.kind()) {
    case PresFormula::Kind::True:
    case PresFormula::Kind::False:
      return f;
    case PresFormula::Kind::Atom: {
      const PresAtom& a = f.atomValue();
      Int c = a.term.coeff(x);
      if (c == 0 || a.kind == AtomKind::Dvd) return f;
      if (a.kind == AtomKind::Eq) return PresFormula::bottom();
      // Leq with coefficient +-1: decided by the sign at the chosen infinity.
      bool towardTrue = minusInf ? (c > 0) : (c < 0);
      return towardTrue ? PresFormula::top() : PresFormula::bottom();
    }
    case PresFormula::Kind::Not:
      return PresFormula::negate(infProject(f.children()[0], x, minusInf));
    case PresFormula::Kind::And:
    case PresFormula::Kind::Or: {
      std::vector<PresFormula> kids;
      kids.reserve(f.children().size());
      for (const auto& k : f.children())
        kids.push_back(infProject(k, x, minusInf));
      return f.kind() == PresFormula::Kind::And
                 ? PresFormula::conj(std::move(kids))
                 : PresFormula::disj(std::move(kids));
    }
  }
  throw InvariantError("bad formula kind");
}

}  // namespace detail

/// Cooper elimination of `exists v over the NATURALS` from a quantifier-free
/// formula: returns an equivalent quantifier-free formula not mentioning v.
/// Internally runs integer elimination of exists v (v >= 0 and f).
inline PresFormula eliminateExists(
    const PresFormula& f, Var x,
    std::size_t maxNodes = kDefaultMaxFormulaNodes) {
  if (!f.mentions(x)) return simplifyAssumeNat(f);

  // Guard: x ranges over the naturals.
  PresFormula guarded =
      PresFormula::conj(PresFormula::leq(LinearTerm::variable(x, -1)), f);
  PresFormula n = detail::nnf(guarded, true);

  Int lambda = 1;
  detail::forEachAtom(n, [&](const PresAtom& a) {
    Int c = a.term.coeff(x);
    if (c != 0) lambda = checkedLcm(lambda, c < 0 ? -c : c);
  });
  PresFormula scaled = detail::scaleVar(n, x, lambda);
  if (lambda > 1)
    scaled = PresFormula::conj(scaled,
                               PresFormula::dvd(lambda, LinearTerm::variable(x)));

  Int delta = 1;
  std::vector<LinearTerm> lower, upper;  // b < x resp. x < a boundary terms
  detail::forEachAtom(scaled, [&](const PresAtom& a) {
    Int c = a.term.coeff(x);
    if (c == 0) return;
    if (a.kind == AtomKind::Dvd) {
      delta = checkedLcm(delta, a.modulus);
      return;
    }
    LinearTerm rest = a.term.withoutVar(x);
    if (a.kind == AtomKind::Eq) {
      // x = e where e = -rest/c with c = +-1
      LinearTerm e = c > 0 ? -rest : rest;
      lower.push_back(e - LinearTerm(1));
      upper.push_back(e + LinearTerm(1));
    } else if (c > 0) {  // x + rest <= 0: x < -rest + 1
      upper.push_back(-rest + LinearTerm(1));
    } else {  // -x + rest <= 0: rest - 1 < x
      lower.push_back(rest - LinearTerm(1));
    }
  });
  for (auto* side : {&lower, &upper}) {
    std::sort(side->begin(), side->end());
    side->erase(std::unique(side->begin(), side->end()), side->end());
  }
  if (static_cast<std::size_t>(delta) > maxNodes)
    throw ResourceError("quantifier elimination period " +
                        std::to_string(delta) + " exceeds the size cap");

  std::vector<PresFormula> parts;
  std::size_t budget = 0;
  auto push = [&](PresFormula d) {
    d = simplifyAssumeNat(d);
    if (d.isFalse()) return;
    budget += d.nodeCount();
    if (budget > maxNodes)
      throw ResourceError("formula size cap (" + std::to_string(maxNodes) +
                          " nodes) exceeded during quantifier elimination");
    parts.push_back(std::move(d));
  };

  const bool useLower = lower.size() <= upper.size();
  PresFormula atInf = detail::infProject(scaled, x, useLower);
  const auto& bounds = useLower ? lower : upper;
  for (Int j = 1; j <= delta; ++j) {
    push(substitute(atInf, x, LinearTerm(useLower ? j : -j)));
    for (const auto& b : bounds) {
      LinearTerm val = useLower ? (b + LinearTerm(j)) : (b - LinearTerm(j));
      push(substitute(scaled, x, val));
    }
  }
  PresFormula result = PresFormula::disj(std::move(parts));
  assert(!result.mentions(x));
  return result;
}

enum class Quantifier { Exists, Forall };

/// Truth of a closed prenex sentence over the naturals; quantifiers are
/// eliminated innermost-out, universals as !exists!.
inline bool decideSentence(
    std::span<const std::pair<Quantifier, Var>> prefix, PresFormula matrix,
    std::size_t maxNodes = kDefaultMaxFormulaNodes) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    if (it->first == Quantifier::Exists) {
      matrix = eliminateExists(matrix, it->second, maxNodes);
    } else {
      matrix = PresFormula::negate(
          eliminateExists(PresFormula::negate(matrix), it->second, maxNodes));
    }
  }
  return matrix.evaluate({});
}

// ---------------------------------------------------------------------------
// Text form

namespace detail {

inline void renderTerm(std::ostream& os, const LinearTerm& t) {
  bool first = true;
  for (const auto& [v, c] : t.coeffs()) {
    Int mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag << "*";
    os << "v" << v;
    first = false;
  }
  if (first) {
    os << t.constant();
  } else if (t.constant() != 0) {
    os << (t.constant() < 0 ? " - " : " + ")
       << (t.constant() < 0 ? -t.constant() : t.constant());
  }
}

inline void renderFormula(std::ostream& os, const PresFormula& f) {
  using Kind = PresFormula::Kind;
  switch (f.kind()) {
    case Kind::True:
      os << "true";
      return;
    case Kind::False:
      os << "false";
      return;
    case Kind::Atom: {
      const PresAtom& a = f.atomValue();
      if (a.kind == AtomKind::Dvd) {
        os << a.modulus << " | ";
        renderTerm(os, a.term);
      } else {
        renderTerm(os, a.term);
        os << (a.kind == AtomKind::Eq ? " = 0" : " <= 0");
      }
      return;
    }
    case Kind::Not:
      os << "!(";
      renderFormula(os, f.children()[0]);
      os << ")";
      return;
    case Kind::And:
    case Kind::Or: {
      os << "(";
      const char* sep = f.kind() == Kind::And ? " & " : " | ";
      bool first = true;
      for (const auto& k : f.children()) {
        if (!first) os << sep;
        renderFormula(os, k);
        first = false;
      }
      os << ")";
      return;
    }
  }
}

/// Tokenizer/parser for the rendered formula syntax.
class PresReader {
 public:
  explicit PresReader(std::string_view text) : text_(text) {}

  PresFormula parse() {
    PresFormula f = parseOr();
    skipSpace();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') ++line, col = 1;
      else ++col;
    }
    throw SyntaxError(msg, line, col);
  }

  void skipSpace() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  bool eat(char c) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eatWord(std::string_view w) {
    skipSpace();
    if (text_.substr(pos_, w.size()) == w) {
      std::size_t end = pos_ + w.size();
      if (end == text_.size() || !std::isalnum((unsigned char)text_[end])) {
        pos_ = end;
        return true;
      }
    }
    return false;
  }

  bool peekIs(char c) {
    skipSpace();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Int parseInt() {
    skipSpace();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_]))
      ++pos_;
    if (start == pos_) fail("expected a number");
    Int value = 0;
    for (std::size_t i = start; i < pos_; ++i) {
      value = checkedAdd(checkedMul(value, 10), text_[i] - '0');
    }
    return value;
  }

  Var parseVar() {
    skipSpace();
    if (pos_ >= text_.size() || text_[pos_] != 'v') fail("expected a variable");
    ++pos_;
    Int idx = parseInt();
    if (idx < 1) fail("variable index must be >= 1");
    return static_cast<Var>(idx);
  }

  PresFormula parseOr() {
    std::vector<PresFormula> kids{parseAnd()};
    while (eat('|')) kids.push_back(parseAnd());
    return PresFormula::disj(std::move(kids));
  }

  PresFormula parseAnd() {
    std::vector<PresFormula> kids{parseUnary()};
    while (eat('&')) kids.push_back(parseUnary());
    return PresFormula::conj(std::move(kids));
  }

  PresFormula parseUnary() {
    if (eat('!')) {
      if (!eat('(')) fail("expected '(' after '!'");
      PresFormula f = parseOr();
      if (!eat(')')) fail("expected ')'");
      return PresFormula::negate(f);
    }
    if (eat('(')) {
      PresFormula f = parseOr();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (eatWord("true")) return PresFormula::top();
    if (eatWord("false")) return PresFormula::bottom();
    return parseAtom();
  }

  // An atom starting with a bare number followed by '|' is a divisibility;
  // the divided term cannot itself contain '|', so one token of lookahead
  // settles it.
  PresFormula parseAtom() {
    skipSpace();
    if (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
      std::size_t save = pos_;
      Int m = parseInt();
      if (eat('|')) return PresFormula::dvd(m, parseTerm());
      pos_ = save;
    }
    LinearTerm t = parseTerm();
    skipSpace();
    if (text_.substr(pos_, 2) == "<=") {
      pos_ += 2;
      if (parseInt() != 0) fail("expected 0 on the right-hand side");
      return PresFormula::leq(std::move(t));
    }
    if (eat('=')) {
      if (parseInt() != 0) fail("expected 0 on the right-hand side");
      return PresFormula::eq(std::move(t));
    }
    fail("expected '= 0' or '<= 0' after term");
  }

  LinearTerm parseTerm() {
    LinearTerm acc;
    bool negative = eat('-');
    acc = acc + parseProduct(negative);
    while (true) {
      if (eat('+')) {
        acc = acc + parseProduct(false);
      } else if (eat('-')) {
        acc = acc + parseProduct(true);
      } else {
        return acc;
      }
    }
  }

  LinearTerm parseProduct(bool negative) {
    skipSpace();
    Int sign = negative ? -1 : 1;
    if (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
      Int k = parseInt();
      if (eat('*')) return LinearTerm::variable(parseVar(), sign * k);
      return LinearTerm(sign * k);
    }
    return LinearTerm::variable(parseVar(), sign);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string PresFormula::render() const {
  std::ostringstream os;
  detail::renderFormula(os, *this);
  return os.str();
}

inline PresFormula PresFormula::read(std::string_view text) {
  return detail::PresReader(text).parse();
}

}  // namespace skolem

#endif  // SKOLEM_PRESBURGER_HPP
