#pragma once

#include <stdexcept>
#include <string>

namespace arcjac {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Binary operation on elements of different truncated rings
// (num_vars or order disagree).
class RingMismatchError : public Error {
 public:
  using Error::Error;
};

// Inversion of a non-unit: zero rational, series with zero constant term,
// matrix whose determinant is not a unit.
class NonUnitError : public Error {
 public:
  using Error::Error;
};

// Square root of a series whose constant term is not the square of the
// supplied root.
class NotASquareError : public Error {
 public:
  using Error::Error;
};

// Malformed or out-of-contract input: bad exponents, inconsistent shapes,
// unparseable text, points off the curve, and the like.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A bounded search ran out of candidates or retries. Carries how far it got.
class ExhaustionError : public Error {
 public:
  ExhaustionError(const std::string& what, int best_rank, int candidates_consumed)
      : Error(what), best_rank(best_rank), candidates_consumed(candidates_consumed) {}

  int best_rank;
  int candidates_consumed;
};

}  // namespace arcjac
