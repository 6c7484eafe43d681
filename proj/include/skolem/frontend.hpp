#ifndef SKOLEM_FRONTEND_HPP
#define SKOLEM_FRONTEND_HPP

/// First-order formulas over multiplication: terms are products of
/// variables, atoms are term equations, and the usual connectives and
/// quantifiers apply. The compiler turns a formula into a semiskolemian
/// representation of its solution set by structural induction, and a
/// sentence into a dimension-0 truth value.
///
/// Grammar (ASCII, '#' starts a line comment):
///   formula := binder | iff
///   binder  := ("forall" | "exists") ident+ "." formula
///   iff     := imp ("<->" imp)*
///   imp     := or ("->" or)*
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := "!" unary | "(" formula ")" | binder | atom
///   atom    := term "=" term
///   term    := ident ("*" ident)*
///   ident   := [a-z][a-z0-9_]*
/// Binders reach as far right as possible. There are no constants: ground
/// values enter only through evaluation assignments.

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skolem/membership.hpp"
#include "skolem/skolemian.hpp"

namespace skolem {

struct SourcePos {
  int line = 1;
  int col = 1;
};

/// Nonempty product of variables with multiplicities.
class SkolemTerm {
 public:
  explicit SkolemTerm(std::map<std::string, Int> factors)
      : factors_(std::move(factors)) {
    if (factors_.empty()) throw InvariantError("empty product term");
    for (const auto& [name, mult] : factors_)
      if (mult < 1) throw InvariantError("multiplicity of " + name +
                                         " must be >= 1");
  }

  const std::map<std::string, Int>& factors() const { return factors_; }

 private:
  std::map<std::string, Int> factors_;
};

class SkolemFormula {
 public:
  enum class Kind { Atom, Not, And, Or, Implies, Iff, Exists, Forall };

  static SkolemFormula atom(SkolemTerm lhs, SkolemTerm rhs, SourcePos pos = {}) {
    auto n = std::make_shared<Node>(Node{Kind::Atom, std::move(lhs),
                                         std::move(rhs), {}, "", pos});
    return SkolemFormula(std::move(n));
  }
  static SkolemFormula mkNot(SkolemFormula f, SourcePos pos = {}) {
    return connective(Kind::Not, {std::move(f)}, pos);
  }
  static SkolemFormula mkAnd(SkolemFormula a, SkolemFormula b,
                             SourcePos pos = {}) {
    return connective(Kind::And, {std::move(a), std::move(b)}, pos);
  }
  static SkolemFormula mkOr(SkolemFormula a, SkolemFormula b,
                            SourcePos pos = {}) {
    return connective(Kind::Or, {std::move(a), std::move(b)}, pos);
  }
  static SkolemFormula mkImplies(SkolemFormula a, SkolemFormula b,
                                 SourcePos pos = {}) {
    return connective(Kind::Implies, {std::move(a), std::move(b)}, pos);
  }
  static SkolemFormula mkIff(SkolemFormula a, SkolemFormula b,
                             SourcePos pos = {}) {
    return connective(Kind::Iff, {std::move(a), std::move(b)}, pos);
  }
  static SkolemFormula exists(std::string var, SkolemFormula body,
                              SourcePos pos = {}) {
    return binder(Kind::Exists, std::move(var), std::move(body), pos);
  }
  static SkolemFormula forall(std::string var, SkolemFormula body,
                              SourcePos pos = {}) {
    return binder(Kind::Forall, std::move(var), std::move(body), pos);
  }

  Kind kind() const { return node_->kind; }
  const SkolemTerm& lhs() const { return *node_->lhs; }
  const SkolemTerm& rhs() const { return *node_->rhs; }
  const std::vector<SkolemFormula>& children() const { return node_->kids; }
  const std::string& boundVar() const { return node_->var; }
  SourcePos pos() const { return node_->pos; }

  /// Free variables in lexicographic order; shadowed occurrences are bound.
  std::set<std::string> freeVariables() const {
    std::set<std::string> acc;
    collectFree(acc, {});
    return acc;
  }

 private:
  struct Node {
    Kind kind;
    std::optional<SkolemTerm> lhs, rhs;  // Atom
    std::vector<SkolemFormula> kids;
    std::string var;  // Exists / Forall
    SourcePos pos;
  };

  explicit SkolemFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static SkolemFormula connective(Kind k, std::vector<SkolemFormula> kids,
                                  SourcePos pos) {
    auto n = std::make_shared<Node>(
        Node{k, std::nullopt, std::nullopt, std::move(kids), "", pos});
    return SkolemFormula(std::move(n));
  }
  static SkolemFormula binder(Kind k, std::string var, SkolemFormula body,
                              SourcePos pos) {
    auto n = std::make_shared<Node>(Node{
        k, std::nullopt, std::nullopt, {std::move(body)}, std::move(var), pos});
    return SkolemFormula(std::move(n));
  }

  void collectFree(std::set<std::string>& acc,
                   std::set<std::string> bound) const {
    switch (kind()) {
      case Kind::Atom:
        for (const auto& [v, mult] : lhs().factors())
          if (!bound.contains(v)) acc.insert(v);
        for (const auto& [v, mult] : rhs().factors())
          if (!bound.contains(v)) acc.insert(v);
        return;
      case Kind::Exists:
      case Kind::Forall:
        bound.insert(boundVar());
        children()[0].collectFree(acc, std::move(bound));
        return;
      default:
        for (const auto& k : children()) k.collectFree(acc, bound);
        return;
    }
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Parser

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  SkolemFormula parse() {
    SkolemFormula f = parseFormula();
    skip();
    if (pos_ != text_.size()) fail("trailing input after formula");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    SourcePos p = position(pos_);
    throw SyntaxError(msg, p.line, p.col);
  }

  SourcePos position(std::size_t at) const {
    SourcePos p;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') ++p.line, p.col = 1;
      else ++p.col;
    }
    return p;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool eatSymbol(std::string_view s) {
    skip();
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  bool peekIdentStart() {
    skip();
    return pos_ < text_.size() && std::islower((unsigned char)text_[pos_]);
  }

  std::string parseIdent() {
    skip();
    if (!peekIdentStart()) fail("expected an identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::islower((unsigned char)text_[pos_]) ||
            std::isdigit((unsigned char)text_[pos_]) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // Peeks an identifier without consuming it.
  std::string peekIdent() {
    std::size_t save = pos_;
    std::string id = peekIdentStart() ? parseIdent() : std::string();
    pos_ = save;
    return id;
  }

  SkolemFormula parseFormula() {
    std::string id = peekIdent();
    if (id == "forall" || id == "exists") return parseBinder();
    return parseIff();
  }

  SkolemFormula parseBinder() {
    skip();
    SourcePos p = position(pos_);
    std::string kw = parseIdent();
    bool universal = kw == "forall";
    std::vector<std::string> vars;
    while (peekIdentStart()) {
      std::string v = parseIdent();
      if (v == "forall" || v == "exists")
        fail("'" + v + "' cannot be a variable name");
      vars.push_back(std::move(v));
    }
    if (vars.empty()) fail("expected at least one variable after '" + kw + "'");
    if (!eatSymbol(".")) fail("expected '.' after bound variables");
    SkolemFormula body = parseFormula();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      body = universal ? SkolemFormula::forall(*it, std::move(body), p)
                       : SkolemFormula::exists(*it, std::move(body), p);
    return body;
  }

  SkolemFormula parseIff() {
    SkolemFormula a = parseImp();
    if (eatSymbol("<->")) {
      skip();
      SourcePos p = position(pos_);
      return SkolemFormula::mkIff(std::move(a), parseIff(), p);
    }
    return a;
  }

  SkolemFormula parseImp() {
    SkolemFormula a = parseOr();
    if (eatSymbol("->")) {
      skip();
      SourcePos p = position(pos_);
      return SkolemFormula::mkImplies(std::move(a), parseImp(), p);
    }
    return a;
  }

  SkolemFormula parseOr() {
    SkolemFormula a = parseAnd();
    while (true) {
      skip();
      // do not swallow the '|' of '|>' etc.; only a bare '|' is disjunction
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        skip();
        SourcePos p = position(pos_);
        a = SkolemFormula::mkOr(std::move(a), parseAnd(), p);
      } else {
        return a;
      }
    }
  }

  SkolemFormula parseAnd() {
    SkolemFormula a = parseUnary();
    while (eatSymbol("&")) {
      skip();
      SourcePos p = position(pos_);
      a = SkolemFormula::mkAnd(std::move(a), parseUnary(), p);
    }
    return a;
  }

  SkolemFormula parseUnary() {
    skip();
    SourcePos p = position(pos_);
    if (eatSymbol("!")) return SkolemFormula::mkNot(parseUnary(), p);
    if (eatSymbol("(")) {
      SkolemFormula f = parseFormula();
      if (!eatSymbol(")")) fail("expected ')'");
      return f;
    }
    std::string id = peekIdent();
    if (id == "forall" || id == "exists") return parseBinder();
    return parseAtom();
  }

  SkolemFormula parseAtom() {
    skip();
    SourcePos p = position(pos_);
    SkolemTerm lhs = parseTerm();
    if (!eatSymbol("=")) fail("expected '=' in atomic formula");
    SkolemTerm rhs = parseTerm();
    return SkolemFormula::atom(std::move(lhs), std::move(rhs), p);
  }

  SkolemTerm parseTerm() {
    std::map<std::string, Int> factors;
    while (true) {
      if (!peekIdentStart()) fail("expected a variable");
      std::string v = parseIdent();
      if (v == "forall" || v == "exists")
        fail("'" + v + "' cannot appear in a term");
      ++factors[v];
      if (!eatSymbol("*")) break;
    }
    return SkolemTerm(std::move(factors));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SkolemFormula parseFormula(std::string_view text) {
  return detail::FormulaParser(text).parse();
}

// ---------------------------------------------------------------------------
// Compiler

namespace detail {

/// Equality of products over positive integers holds exactly when every
/// prime's exponents balance, so an atom becomes one linear exponent
/// equation with the multiplicities as coefficients.
inline SemiskolemianSet compileAtom(const SkolemFormula& f,
                                    const std::map<std::string, Var>& env,
                                    int dim) {
  std::map<Var, Int> lhs, rhs;
  for (const auto& [name, mult] : f.lhs().factors()) {
    auto it = env.find(name);
    if (it == env.end())
      throw InvariantError("variable '" + name + "' missing from the order");
    lhs[it->second] += mult;
  }
  for (const auto& [name, mult] : f.rhs().factors()) {
    auto it = env.find(name);
    if (it == env.end())
      throw InvariantError("variable '" + name + "' missing from the order");
    rhs[it->second] += mult;
  }
  SemilinearSet alpha = SemilinearSet::atomLinear(dim, lhs, rhs);
  return SemiskolemianSet(dim, {makeDef({}, std::move(alpha))});
}

inline SemiskolemianSet compileRec(const SkolemFormula& f,
                                   std::map<std::string, Var> env, int dim,
                                   const Limits& limits) {
  using Kind = SkolemFormula::Kind;
  try {
    switch (f.kind()) {
      case Kind::Atom:
        return compileAtom(f, env, dim);
      case Kind::Not:
        return complementSemi(compileRec(f.children()[0], env, dim, limits),
                              limits);
      case Kind::And:
        return intersectSemi(compileRec(f.children()[0], env, dim, limits),
                             compileRec(f.children()[1], env, dim, limits),
                             limits);
      case Kind::Or:
        return unionSemi(compileRec(f.children()[0], env, dim, limits),
                         compileRec(f.children()[1], env, dim, limits),
                         limits);
      case Kind::Implies:
        return unionSemi(
            complementSemi(compileRec(f.children()[0], env, dim, limits),
                           limits),
            compileRec(f.children()[1], env, dim, limits), limits);
      case Kind::Iff: {
        SemiskolemianSet a = compileRec(f.children()[0], env, dim, limits);
        SemiskolemianSet b = compileRec(f.children()[1], env, dim, limits);
        return unionSemi(intersectSemi(a, b, limits),
                         intersectSemi(complementSemi(a, limits),
                                       complementSemi(b, limits), limits),
                         limits);
      }
      case Kind::Exists:
      case Kind::Forall: {
        // bind the variable to a fresh innermost coordinate, then project
        std::map<std::string, Var> inner = env;
        inner[f.boundVar()] = dim + 1;
        if (f.kind() == Kind::Exists) {
          SemiskolemianSet body =
              compileRec(f.children()[0], std::move(inner), dim + 1, limits);
          return projectSemi(body, dim + 1, limits);
        }
        SemiskolemianSet negBody = complementSemi(
            compileRec(f.children()[0], std::move(inner), dim + 1, limits),
            limits);
        return complementSemi(projectSemi(negBody, dim + 1, limits), limits);
      }
    }
    throw InvariantError("bad formula kind");
  } catch (ResourceError& e) {
    if (!e.located) {
      ResourceError annotated(std::string(e.what()) + " while compiling the "
                              "subformula at line " +
                              std::to_string(f.pos().line) + ", col " +
                              std::to_string(f.pos().col));
      annotated.located = true;
      throw annotated;
    }
    throw;
  }
}

}  // namespace detail

/// Compiles a formula into the semiskolemian representation of its solution
/// set, with coordinate i carrying the i-th variable of varOrder. varOrder
/// must list exactly the free variables.
inline SemiskolemianSet compile(const SkolemFormula& f,
                                std::span<const std::string> varOrder,
                                const Limits& limits = {}) {
  std::set<std::string> free = f.freeVariables();
  if (free.size() != varOrder.size())
    throw InvariantError("variable order does not match the free variables");
  std::map<std::string, Var> env;
  for (std::size_t i = 0; i < varOrder.size(); ++i) {
    if (!free.contains(varOrder[i]))
      throw InvariantError("'" + varOrder[i] + "' is not a free variable");
    if (!env.emplace(varOrder[i], static_cast<Var>(i + 1)).second)
      throw InvariantError("duplicate variable '" + varOrder[i] +
                           "' in the order");
  }
  return detail::compileRec(f, std::move(env),
                            static_cast<int>(varOrder.size()), limits);
}

/// Truth of a sentence: compile to dimension 0 and apply the TOP test.
inline bool decide(const SkolemFormula& f, const Limits& limits = {}) {
  if (!f.freeVariables().empty())
    throw InvariantError("decide requires a sentence without free variables");
  SemiskolemianSet s = compile(f, {}, limits);
  for (const auto& d : s.disjuncts())
    if (decideDimZero(d)) return true;
  return false;
}

/// Truth of a formula under a ground assignment of positive integers,
/// covering exactly the free variables. Coordinates follow the lexicographic
/// variable order.
inline bool evalGround(const SkolemFormula& f,
                       const std::map<std::string, Int>& assignment,
                       const Limits& limits = {}) {
  std::set<std::string> free = f.freeVariables();
  if (assignment.size() != free.size())
    throw InvariantError("assignment does not cover the free variables");
  std::vector<std::string> order;
  std::vector<Int> point;
  for (const auto& v : free) {
    auto it = assignment.find(v);
    if (it == assignment.end())
      throw InvariantError("no value assigned to '" + v + "'");
    if (it->second < 1)
      throw DomainError("variables range over positive integers; " + v +
                        " = " + std::to_string(it->second));
    order.push_back(v);
    point.push_back(it->second);
  }
  if (order.empty()) return decide(f, limits);
  return memberSemi(compile(f, order, limits), point);
}

}  // namespace skolem

#endif  // SKOLEM_FRONTEND_HPP
