#pragma once

#include <vector>

#include "arcjac/linalg.hpp"
#include "arcjac/series.hpp"

namespace arcjac {

// Element of R[[t]]/(t^M) where R = k[t_1..t_B]/m^M is itself a truncated
// ring on the remaining B = base_vars variables. The distinguished flow
// variable t is the one differentiated and integrated; keeping it separate
// from the total-degree grading of R is what makes flow residuals vanish
// identically through t-order M-2 instead of merely up to total degree.
// Stored as exactly `order` R-coefficients, index j for t^j.
class FlowSeries {
 public:
  FlowSeries(int base_vars, int order);  // zero

  static FlowSeries constant(const TruncatedSeries& value, int order);  // R -> R[[t]]/(t^M)
  static FlowSeries variable_t(int base_vars, int order);               // t itself
  // Reads a univariate series (num_vars == 1) as a series in t over B = 0.
  static FlowSeries from_univariate(const TruncatedSeries& f);

  int base_vars() const { return base_vars_; }
  int order() const { return order_; }

  const TruncatedSeries& coeff(int j) const;
  void set_coeff(int j, const TruncatedSeries& value);
  bool is_zero() const;

  // Projection into the plain total-degree ring on 1 + base_vars variables
  // (t becomes variable 0): terms with j + deg >= order are dropped.
  TruncatedSeries to_total_degree() const;
  // Inverse reading for base_vars == 0.
  TruncatedSeries to_univariate() const;

  friend bool operator==(const FlowSeries& a, const FlowSeries& b);
  friend bool operator!=(const FlowSeries& a, const FlowSeries& b) { return !(a == b); }

 private:
  int base_vars_, order_;
  std::vector<TruncatedSeries> coeffs_;
};

FlowSeries operator+(const FlowSeries& a, const FlowSeries& b);
FlowSeries operator-(const FlowSeries& a, const FlowSeries& b);
FlowSeries operator-(const FlowSeries& a);
FlowSeries operator*(const FlowSeries& a, const FlowSeries& b);
FlowSeries operator*(const Rational& c, const FlowSeries& a);

// d/dt. Coefficient j of the result is (j+1) * coeff(j+1); the top
// coefficient is zero since t^{order-1} information differentiates away.
FlowSeries derivative_t(const FlowSeries& a);
// Antiderivative with zero constant coefficient; coeff(order-1) of the input
// has no home and is dropped.
FlowSeries antiderivative_t(const FlowSeries& a);

// f(phi) for f with R-coefficients and phi with zero constant coefficient.
FlowSeries compose(const FlowSeries& f, const FlowSeries& phi);

// Inverse of a unit (coeff(0) a unit of R); t-adic recursion.
FlowSeries flow_invert_unit(const FlowSeries& a);

// Ring-protocol hooks so Matrix<FlowSeries> works.
inline FlowSeries ring_zero(const FlowSeries& sample) {
  return FlowSeries(sample.base_vars(), sample.order());
}
inline FlowSeries ring_one(const FlowSeries& sample) {
  return FlowSeries::constant(
      TruncatedSeries::constant(sample.base_vars(), sample.order(), 1), sample.order());
}
inline bool ring_is_zero(const FlowSeries& a) { return a.is_zero(); }
inline FlowSeries ring_invert(const FlowSeries& a) { return flow_invert_unit(a); }

// The square system sum_l f_il(phi_l) * phi_l' = b_i, i = 1..size, for
// unknown flows phi_l(t) with phi_l(0) = 0. Entry (i,l) of `matrix` is the
// one-argument function f_il: a FlowSeries whose t slot holds the argument,
// with coefficients in R. Arguments are nilpotent of order `order`, so
// argument-degree < order captures f_il exactly. `rhs` lives in R.
struct FlowProblem {
  int size = 0;
  int base_vars = 0;
  int order = 2;
  std::vector<std::vector<FlowSeries>> matrix;  // size x size
  std::vector<TruncatedSeries> rhs;             // size, elements of R

  // Shapes, ring parameters, and the unit leading matrix F(0).
  void validate() const;
  // F(0): constant terms of the f_il as elements of R.
  Matrix<TruncatedSeries> leading_matrix() const;
};

struct FlowSolution {
  std::vector<FlowSeries> phi;
  // The defining identity is certified for t-coefficients 0..valid_order-1;
  // valid_order = order - 1 since phi' loses the top coefficient.
  int valid_order = 0;
};

// Order-by-order solve: coefficient j+1 of phi is determined by inverting
// F(0) against the degree-j defect of the identity. Unique; exact.
// Throws NonUnitError when det F(0) is not a unit of R.
FlowSolution solve_flow(const FlowProblem& problem);

struct FlowResidual {
  std::vector<FlowSeries> components;  // sum_l f_il(phi_l) phi_l' - b_i
  int valid_order = 0;
  bool ok = false;  // components vanish at t-coefficients 0..valid_order-1
};

// Recomputes the defining identity from scratch for any claimed solution.
FlowResidual verify_flow(const FlowProblem& problem, const std::vector<FlowSeries>& phi);

// phi_l'(0) = row l of F(0)^{-1} b, elements of R.
std::vector<TruncatedSeries> initial_velocities(const FlowProblem& problem);

}  // namespace arcjac
