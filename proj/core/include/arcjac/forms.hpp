#pragma once

#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include "arcjac/linalg.hpp"
#include "arcjac/series.hpp"

namespace arcjac {

// Basis label of the free module underlying Omega^p: a coefficient monomial
// t^exponents together with a strictly increasing index set J naming
// dt_{J[0]} ^ ... ^ dt_{J[p-1]}.
struct FormKey {
  Exponents exponents;
  std::vector<int> indices;

  friend bool operator==(const FormKey& a, const FormKey& b) {
    return a.exponents == b.exponents && a.indices == b.indices;
  }
};

// Graded-lex on the coefficient monomial first, then lex on the index set.
// Elimination treats the largest key of a relation as its leading term.
struct FormKeyLess {
  bool operator()(const FormKey& a, const FormKey& b) const;
};

// A p-form over k[t_0..t_{N-1}]/m^M, stored as a free combination of
// monomial * dt_J terms (degree < M coefficients, no zero terms, index sets
// strictly increasing). This is a *representative*; two representatives are
// compared modulo the truncation relations, so operator== is equality in
// Omega^p. d and wedge act on representatives and are exact.
class DifferentialForm {
 public:
  using TermMap = std::map<FormKey, Rational, FormKeyLess>;

  // The zero p-form. degree >= 0; degree > num_vars is allowed (zero space).
  DifferentialForm(int num_vars, int order, int degree);

  static DifferentialForm from_series(const TruncatedSeries& s);  // degree 0
  static DifferentialForm from_terms(
      int num_vars, int order, int degree,
      const std::vector<std::tuple<Exponents, std::vector<int>, Rational>>& terms);

  int num_vars() const { return num_vars_; }
  int order() const { return order_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }

  // No stored terms. A nonzero representative can still be zero in Omega^p;
  // operator== and normal_form decide that.
  bool is_representative_zero() const { return terms_.empty(); }

  // Adds c * t^e dt_J, sorting J with the wedge sign and dropping repeated
  // indices and coefficient degrees >= order.
  void add_term(const Exponents& e, const std::vector<int>& indices, const Rational& c);

  TruncatedSeries to_series() const;  // degree 0 only

  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b);
  friend bool operator!=(const DifferentialForm& a, const DifferentialForm& b) {
    return !(a == b);
  }

 private:
  int num_vars_, order_, degree_;
  TermMap terms_;
};

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm operator-(const DifferentialForm& a);
DifferentialForm operator*(const Rational& c, const DifferentialForm& a);
DifferentialForm operator*(const TruncatedSeries& s, const DifferentialForm& a);

// Exterior derivative Omega^p -> Omega^{p+1}. d(d(w)) vanishes on the nose.
DifferentialForm d(const DifferentialForm& w);
DifferentialForm d(const TruncatedSeries& s);  // d of a 0-form

// Graded-commutative product; degrees add.
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

// Image of a form under truncation to a lower order (coefficients and
// relations both move to the smaller ring).
DifferentialForm truncate_form(const DifferentialForm& w, int new_order);

// The finite-dimensional space Omega^p of the ring (num_vars, order):
// the free module on monomial * dt_J modulo the k-span of
// d(mu) ^ dt_{J'} for monomials mu of total degree exactly `order`.
// Instances are built once per (N, M, p) and cached; access via omega_space.
class DeRhamSpace {
 public:
  int num_vars() const { return num_vars_; }
  int order() const { return order_; }
  int degree() const { return degree_; }

  int dim_total() const { return dim_total_; }
  int dim_closed() const { return dim_closed_; }
  int dim_exact() const { return dim_exact_; }

  // Monomial-form basis of the quotient (the non-pivot free keys, ascending).
  const std::vector<FormKey>& basis() const { return basis_; }

  // Canonical representative supported on basis() keys. Idempotent; linear;
  // zero exactly on the relation span.
  DifferentialForm normal_form(const DifferentialForm& w) const;

  // Coordinates of w in basis(), and back.
  std::vector<Rational> coordinates(const DifferentialForm& w) const;
  DifferentialForm from_coordinates(const std::vector<Rational>& coords) const;

  bool is_closed(const DifferentialForm& w) const;
  bool is_exact(const DifferentialForm& w) const;
  // A (degree-1)-form u with d(u) == w, when one exists.
  std::optional<DifferentialForm> exactness_witness(const DifferentialForm& w) const;

  // Internal representation of the relation space; also used by tests that
  // probe the elimination structure.
  struct Quotient;

 private:
  friend const DeRhamSpace& omega_space(int, int, int);
  DeRhamSpace(int num_vars, int order, int degree);

  int num_vars_, order_, degree_;
  int dim_total_ = 0, dim_closed_ = 0, dim_exact_ = 0;
  std::vector<FormKey> basis_;
  std::shared_ptr<const Quotient> here_, below_, above_;
  // d expressed in quotient bases: d_in_ maps Omega^{p-1} -> Omega^p,
  // d_out_ maps Omega^p -> Omega^{p+1}.
  std::unique_ptr<Matrix<Rational>> d_in_, d_out_;
};

// Cached accessor; thread-safe. degree > num_vars yields the zero space.
const DeRhamSpace& omega_space(int num_vars, int order, int degree);

// Convenience wrappers routing through the cached space of w's ring.
DifferentialForm normal_form(const DifferentialForm& w);
bool is_closed(const DifferentialForm& w);
bool is_exact(const DifferentialForm& w);
std::optional<DifferentialForm> exactness_witness(const DifferentialForm& w);

std::string form_to_string(const DifferentialForm& w);

}  // namespace arcjac
