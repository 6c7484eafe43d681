#ifndef SKOLEM_ERRORS_HPP
#define SKOLEM_ERRORS_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace skolem {

/// Signed 64-bit integer used for all coefficients, constants and tuple
/// components. Overflow is detected, never wrapped.
using Int = std::int64_t;

/// 1-based variable index into an exponent vector.
using Var = int;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A point or component has the wrong length for the set it is tested against.
struct DimensionError : Error {
  using Error::Error;
};

/// Input outside the structure's domain (zero or negative where a positive
/// integer is required).
struct DomainError : Error {
  using Error::Error;
};

/// A configured size cap (formula nodes, disjunct count, subset enumeration)
/// was exceeded. The computation is aborted, not approximated.
struct ResourceError : Error {
  using Error::Error;
  bool located = false;
};

/// 64-bit arithmetic could not represent an intermediate value.
struct OverflowError : Error {
  using Error::Error;
};

/// A representation invariant was violated (e.g. zero vector in an
/// exceptional component).
struct InvariantError : Error {
  using Error::Error;
};

/// Malformed input text; carries a 1-based source position.
struct SyntaxError : Error {
  int line;
  int col;
  SyntaxError(const std::string& msg, int line_, int col_)
      : Error("line " + std::to_string(line_) + ", col " +
              std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

inline Int checkedAdd(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("overflow in +");
  return r;
}

inline Int checkedSub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("overflow in -");
  return r;
}

inline Int checkedMul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("overflow in *");
  return r;
}

/// lcm of positive arguments, overflow-checked.
inline Int checkedLcm(Int a, Int b) {
  Int g = std::gcd(a, b);
  return checkedMul(a / g, b);
}

/// Floor division for b > 0.
inline Int floorDiv(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Residue of a modulo m in [0, m), for m >= 1.
inline Int modFloor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace skolem

#endif  // SKOLEM_ERRORS_HPP
