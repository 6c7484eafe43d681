#ifndef SKOLEM_SEMILINEAR_HPP
#define SKOLEM_SEMILINEAR_HPP

/// Dimension-tagged semilinear subsets of N^d, carried as quantifier-free
/// Presburger formulas over the coordinate variables v1..vd. Dimension 0 is
/// the one-point space {eps}; its two subsets normalize to TOP and BOT.

#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "skolem/presburger.hpp"

namespace skolem {

class SemilinearSet {
 public:
  SemilinearSet() : dim_(0), formula_(PresFormula::top()) {}

  SemilinearSet(int dim, PresFormula formula)
      : dim_(dim), formula_(simplifyAssumeNat(formula)) {
    if (dim < 0) throw DimensionError("negative dimension");
    if (formula_.maxVar() > dim)
      throw DimensionError("formula mentions v" +
                           std::to_string(formula_.maxVar()) +
                           " beyond dimension " + std::to_string(dim));
  }

  static SemilinearSet full(int dim) {
    return SemilinearSet(dim, PresFormula::top());
  }
  static SemilinearSet empty(int dim) {
    return SemilinearSet(dim, PresFormula::bottom());
  }

  /// The set { v : sum lhs_i * v_i = sum rhs_i * v_i } for natural
  /// multiplicities keyed by 1-based coordinate.
  static SemilinearSet atomLinear(int dim, const std::map<Var, Int>& lhs,
                                  const std::map<Var, Int>& rhs) {
    LinearTerm t;
    for (const auto& [v, mult] : lhs) {
      if (v < 1 || v > dim)
        throw DimensionError("coordinate index " + std::to_string(v) +
                             " out of range");
      if (mult < 0) throw DomainError("multiplicities must be naturals");
      t = t + LinearTerm::variable(v, mult);
    }
    for (const auto& [v, mult] : rhs) {
      if (v < 1 || v > dim)
        throw DimensionError("coordinate index " + std::to_string(v) +
                             " out of range");
      if (mult < 0) throw DomainError("multiplicities must be naturals");
      t = t - LinearTerm::variable(v, mult);
    }
    return SemilinearSet(dim, PresFormula::eq(std::move(t)));
  }

  int dim() const { return dim_; }
  const PresFormula& formula() const { return formula_; }

  bool member(std::span<const Int> point) const {
    if (point.size() != static_cast<std::size_t>(dim_))
      throw DimensionError("point has length " + std::to_string(point.size()) +
                           ", set has dimension " + std::to_string(dim_));
    return formula_.evaluate(point);
  }

  bool containsZero() const {
    std::vector<Int> zero(static_cast<std::size_t>(dim_), 0);
    return member(zero);
  }

  bool isEmpty(std::size_t maxNodes = kDefaultMaxFormulaNodes) const {
    if (dim_ == 0) return formula_.isFalse();
    std::vector<std::pair<Quantifier, Var>> prefix;
    for (Var i = 1; i <= dim_; ++i) prefix.emplace_back(Quantifier::Exists, i);
    return !decideSentence(prefix, formula_, maxNodes);
  }

  /// s minus the all-zero vector.
  SemilinearSet removeZero() const {
    if (dim_ == 0)
      return SemilinearSet(0, PresFormula::bottom());  // {eps} \ {eps}
    std::vector<PresFormula> nonzero;
    for (Var i = 1; i <= dim_; ++i)
      nonzero.push_back(
          PresFormula::geq(LinearTerm::variable(i) - LinearTerm(1)));
    return SemilinearSet(dim_,
                         PresFormula::conj(formula_,
                                           PresFormula::disj(std::move(nonzero))));
  }

  std::string render() const {
    if (dim_ == 0) return formula_.isTrue() ? "TOP" : "BOT";
    std::ostringstream os;
    os << "{ ";
    for (Var i = 1; i <= dim_; ++i) os << (i > 1 ? "," : "") << "v" << i;
    os << " | " << formula_.render() << " }";
    return os.str();
  }

 private:
  int dim_;
  PresFormula formula_;
};

inline SemilinearSet intersect(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.dim() != b.dim()) throw DimensionError("dimension mismatch");
  return SemilinearSet(a.dim(), PresFormula::conj(a.formula(), b.formula()));
}

inline SemilinearSet unite(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.dim() != b.dim()) throw DimensionError("dimension mismatch");
  return SemilinearSet(a.dim(), PresFormula::disj(a.formula(), b.formula()));
}

inline SemilinearSet complement(const SemilinearSet& a) {
  return SemilinearSet(a.dim(), PresFormula::negate(a.formula()));
}

enum class SetOp { And, Or, Not };

inline SemilinearSet combine(SetOp op, std::span<const SemilinearSet> args) {
  if (args.empty()) throw DimensionError("combine needs at least one operand");
  switch (op) {
    case SetOp::Not:
      if (args.size() != 1)
        throw DimensionError("complement takes exactly one operand");
      return complement(args[0]);
    case SetOp::And: {
      SemilinearSet acc = args[0];
      for (std::size_t i = 1; i < args.size(); ++i)
        acc = intersect(acc, args[i]);
      return acc;
    }
    case SetOp::Or: {
      SemilinearSet acc = args[0];
      for (std::size_t i = 1; i < args.size(); ++i) acc = unite(acc, args[i]);
      return acc;
    }
  }
  throw InvariantError("bad set operation");
}

/// Projects away one coordinate: dimension drops by one and the coordinates
/// above shift down. Projecting the last coordinate of a nonempty set yields
/// TOP, of an empty set BOT.
inline SemilinearSet projectAway(const SemilinearSet& s, Var coord,
                                 std::size_t maxNodes = kDefaultMaxFormulaNodes) {
  if (s.dim() < 1) throw DimensionError("cannot project a dimension-0 set");
  if (coord < 1 || coord > s.dim())
    throw DimensionError("projection coordinate out of range");
  PresFormula g = eliminateExists(s.formula(), coord, maxNodes);
  return SemilinearSet(s.dim() - 1, shiftAbove(g, coord));
}

}  // namespace skolem

#endif  // SKOLEM_SEMILINEAR_HPP
