#pragma once

#include <map>
#include <utility>
#include <vector>

#include "arcjac/rational.hpp"

namespace arcjac {

// Exponent vector of a monomial in t_0..t_{N-1}; entry i is the power of t_i.
using Exponents = std::vector<int>;

int total_degree(const Exponents& e);

// Strict weak order on exponent vectors: total degree first, then
// lexicographic. Leading terms in elimination code are the *largest* keys.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Element of k[t_0..t_{N-1}] / m^M over exact rationals, m the maximal ideal
// (t_0..t_{N-1}). Canonical form is maintained at all times: every stored
// term has total degree < M and a nonzero coefficient, so structural
// equality is ring equality. num_vars = 0 is allowed and gives plain Q.
class TruncatedSeries {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexLess>;

  // The zero series. order >= 1, num_vars >= 0.
  TruncatedSeries(int num_vars, int order);

  static TruncatedSeries constant(int num_vars, int order, const Rational& value);
  // The image of t_index. Zero when order == 1 (the ring is then just k).
  static TruncatedSeries variable(int num_vars, int order, int index);
  // Validates every exponent vector (length, nonnegativity, degree < order)
  // and accumulates duplicates. Out-of-ring degrees are an error, not a
  // silent truncation; call truncated() when truncation is meant.
  static TruncatedSeries from_terms(int num_vars, int order,
                                    const std::vector<std::pair<Exponents, Rational>>& terms);

  int num_vars() const { return num_vars_; }
  int order() const { return order_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  Rational constant_term() const;
  Rational coeff(const Exponents& e) const;
  // Largest total degree among stored terms; -1 for the zero series.
  int degree() const;

  // Adds c * t^e and restores canonical form. Degrees >= order are dropped
  // here (this is the internal accumulation path used by ring operations).
  void add_term(const Exponents& e, const Rational& c);

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

 private:
  int num_vars_;
  int order_;
  TermMap terms_;
};

// Ring operations. Binary operations require identical (num_vars, order) and
// throw RingMismatchError otherwise.
TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a);
TruncatedSeries operator*(const TruncatedSeries& a, const Rational& c);

// a^k for k >= 0 by repeated multiplication in the ring.
TruncatedSeries pow(const TruncatedSeries& a, int k);

// Formal partial derivative with respect to t_index. The result is exact for
// every stored term, but the top coefficient of degree order-1 information is
// by nature only as good as the input; the result stays in the same ring.
TruncatedSeries derivative(const TruncatedSeries& a, int index);

// Composition f(g) for univariate f (num_vars() == 1) and any g with zero
// constant term. The result lives in g's ring. Horner evaluation; exact.
TruncatedSeries substitute(const TruncatedSeries& f, const TruncatedSeries& g);

// Replaces t_index by g inside f. f and g must share a ring and g must have
// zero constant term. This is the ring endomorphism t_index -> g.
TruncatedSeries substitute_var(const TruncatedSeries& f, int index, const TruncatedSeries& g);

// Multiplicative inverse of a unit (nonzero constant term). Geometric series
// in the maximal-ideal part; throws NonUnitError otherwise.
TruncatedSeries invert_unit(const TruncatedSeries& a);

// Square root with chosen branch: returns s with s^2 == a and
// s(0) == root. Requires root^2 == a(0) != 0; throws NonUnitError when the
// constant term is zero and NotASquareError when root^2 != a(0).
TruncatedSeries sqrt_unit(const TruncatedSeries& a, const Rational& root);

// Image under the quotient map to order new_order <= order().
TruncatedSeries truncated(const TruncatedSeries& a, int new_order);

std::string series_to_string(const TruncatedSeries& a);

// Ring-protocol hooks shared with generic matrix code.
inline TruncatedSeries ring_zero(const TruncatedSeries& sample) {
  return TruncatedSeries(sample.num_vars(), sample.order());
}
inline TruncatedSeries ring_one(const TruncatedSeries& sample) {
  return TruncatedSeries::constant(sample.num_vars(), sample.order(), 1);
}
inline bool ring_is_zero(const TruncatedSeries& a) { return a.is_zero(); }
inline TruncatedSeries ring_invert(const TruncatedSeries& a) { return invert_unit(a); }

inline Rational ring_zero(const Rational&) { return Rational(0); }
inline Rational ring_one(const Rational&) { return Rational(1); }
inline bool ring_is_zero(const Rational& a) { return a == 0; }
Rational ring_invert(const Rational& a);

}  // namespace arcjac
