#pragma once

#include <vector>

#include "arcjac/forms.hpp"
#include "arcjac/linalg.hpp"
#include "arcjac/series.hpp"

namespace arcjac {

// Dense univariate polynomial over Q, ascending coefficients, no trailing
// zeros (the zero polynomial stores nothing).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  Rational coeff(int k) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  // Evaluation at a series argument (substitution x -> a), in a's ring.
  TruncatedSeries operator()(const TruncatedSeries& a) const;

  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    return p.coeffs_ == q.coeffs_;
  }

 private:
  std::vector<Rational> coeffs_;
};

Polynomial operator+(const Polynomial& p, const Polynomial& q);
Polynomial operator-(const Polynomial& p, const Polynomial& q);
Polynomial operator*(const Polynomial& p, const Polynomial& q);
Polynomial operator*(const Rational& c, const Polynomial& p);
Polynomial poly_derivative(const Polynomial& p);
// Remainder of p modulo q (q nonzero).
Polynomial poly_rem(const Polynomial& p, const Polynomial& q);
// Monic gcd.
Polynomial poly_gcd(Polynomial p, Polynomial q);
bool is_squarefree(const Polynomial& p);
// Taylor coefficients of p(x0 + u) in u.
Polynomial poly_shift(const Polynomial& p, const Rational& x0);

struct AffinePoint {
  Rational x;
  Rational y;
  friend bool operator==(const AffinePoint& a, const AffinePoint& b) {
    return a.x == b.x && a.y == b.y;
  }
};

// y^2 = s(x) with s squarefree of odd degree 2g+1. The regular differentials
// carry the standard basis w_j = x^{j-1} dx / (2y), j = 1..g.
class HyperellipticCurve {
 public:
  const Polynomial& s() const { return s_; }
  int genus() const { return genus_; }
  bool contains(const AffinePoint& p) const { return p.y * p.y == s_(p.x); }

  friend bool operator==(const HyperellipticCurve& a, const HyperellipticCurve& b) {
    return a.s_ == b.s_;
  }

 private:
  friend HyperellipticCurve make_curve(const std::vector<Rational>& s_coefficients);
  HyperellipticCurve(Polynomial s, int genus) : s_(std::move(s)), genus_(genus) {}
  Polynomial s_;
  int genus_;
};

// Validates odd degree >= 3 and squarefreeness; genus = (deg - 1) / 2.
HyperellipticCurve make_curve(const std::vector<Rational>& s_coefficients);

// Interpolates a squarefree s of degree 2g+1 with s(x_l) = y_l^2 through the
// monic family x^{2g+1} + sum_{i<k} c_i x^i; when the interpolant is not
// squarefree, retries with s + lambda * prod(x - x_l) for lambda = 1, 2, ...
// Requires 1 <= k <= 2g+1 points, distinct x, all y != 0.
HyperellipticCurve curve_through_points(const std::vector<AffinePoint>& points, int genus);

// The unique y(u) in k[u]/u^order with y(u)^2 = s(x_p + u) and y(0) = y_p.
// The center must be non-Weierstrass (y_p != 0).
TruncatedSeries local_expansion(const HyperellipticCurve& c, const AffinePoint& p, int order);

// Formal arc on a curve: x(t) = x_center + displacement with displacement in
// the maximal ideal of A_M, plus the cached square-root expansion y(t).
// y(t)^2 = s(x(t)) holds exactly in A_M by construction.
struct FormalArc {
  AffinePoint center;
  TruncatedSeries displacement;  // element of m in (num_vars, order)
  TruncatedSeries y_series;      // same ring, constant term y_center

  int num_vars() const { return displacement.num_vars(); }
  int order() const { return displacement.order(); }
  TruncatedSeries x_series() const;

  friend bool operator==(const FormalArc& a, const FormalArc& b) {
    return a.center == b.center && a.displacement == b.displacement && a.y_series == b.y_series;
  }
};

FormalArc make_arc(const HyperellipticCurve& c, const AffinePoint& center,
                   const TruncatedSeries& displacement);

// Pullback of w_j = x^{j-1} dx/(2y) along the arc: the normal form of
// (x_c + xi)^{j-1} * (2 y(xi))^{-1} * d(xi) in Omega^1. All divisions are by
// units of A_M; j runs over 1..genus.
DifferentialForm pullback(const HyperellipticCurve& c, int j, const FormalArc& arc);

// Entry (i, l) is g_il(u) = (x_{p_l} + u)^{i-1} * (2 y_l(u))^{-1} in k[u]/u^order,
// so that pullback of w_i along the unit arc at p_l is g_il(xi) d(xi).
Matrix<TruncatedSeries> ratio_matrix(const HyperellipticCurve& c,
                                     const std::vector<AffinePoint>& points, int order);

// All affine points with x = a/b in lowest terms, |a| <= bound, 1 <= b <= max(bound, 1),
// and s(x) a nonzero rational square. Both y signs; deterministic order.
std::vector<AffinePoint> find_rational_points(const HyperellipticCurve& c, int bound);

}  // namespace arcjac
