#include "arcjac/flow.hpp"

#include <sstream>

#include "arcjac/error.hpp"

namespace arcjac {

namespace {

void check_flow_ring(const FlowSeries& a, const FlowSeries& b) {
  if (a.base_vars() != b.base_vars() || a.order() != b.order()) {
    std::ostringstream os;
    os << "flow ring mismatch: (" << a.base_vars() << "," << a.order() << ") vs ("
       << b.base_vars() << "," << b.order() << ")";
    throw RingMismatchError(os.str());
  }
}

}  // namespace

FlowSeries::FlowSeries(int base_vars, int order)
    : base_vars_(base_vars),
      order_(order),
      coeffs_(order >= 1 ? order : 0, TruncatedSeries(base_vars >= 0 ? base_vars : 0, order >= 1 ? order : 1)) {
  if (base_vars < 0) throw ValidationError("base_vars must be nonnegative");
  if (order < 1) throw ValidationError("truncation order must be >= 1");
}

FlowSeries FlowSeries::constant(const TruncatedSeries& value, int order) {
  if (value.order() != order)
    throw RingMismatchError("coefficient ring order disagrees with flow order");
  FlowSeries f(value.num_vars(), order);
  f.coeffs_[0] = value;
  return f;
}

FlowSeries FlowSeries::variable_t(int base_vars, int order) {
  FlowSeries f(base_vars, order);
  if (order > 1) f.coeffs_[1] = TruncatedSeries::constant(base_vars, order, 1);
  return f;
}

FlowSeries FlowSeries::from_univariate(const TruncatedSeries& f) {
  if (f.num_vars() != 1) throw ValidationError("from_univariate needs a one-variable series");
  FlowSeries r(0, f.order());
  for (const auto& [e, c] : f.terms()) r.coeffs_[e[0]] = TruncatedSeries::constant(0, f.order(), c);
  return r;
}

const TruncatedSeries& FlowSeries::coeff(int j) const {
  if (j < 0 || j >= order_) throw ValidationError("t-power out of range");
  return coeffs_[j];
}

void FlowSeries::set_coeff(int j, const TruncatedSeries& value) {
  if (j < 0 || j >= order_) throw ValidationError("t-power out of range");
  if (value.num_vars() != base_vars_ || value.order() != order_)
    throw RingMismatchError("coefficient belongs to the wrong ring");
  coeffs_[j] = value;
}

bool FlowSeries::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

TruncatedSeries FlowSeries::to_total_degree() const {
  TruncatedSeries r(base_vars_ + 1, order_);
  for (int j = 0; j < order_; ++j) {
    for (const auto& [e, c] : coeffs_[j].terms()) {
      Exponents full;
      full.reserve(base_vars_ + 1);
      full.push_back(j);
      full.insert(full.end(), e.begin(), e.end());
      r.add_term(full, c);  // drops j + deg >= order
    }
  }
  return r;
}

TruncatedSeries FlowSeries::to_univariate() const {
  if (base_vars_ != 0) throw ValidationError("to_univariate needs base_vars == 0");
  TruncatedSeries r(1, order_);
  for (int j = 0; j < order_; ++j) {
    Rational c = coeffs_[j].constant_term();
    if (c != 0) r.add_term(Exponents{j}, c);
  }
  return r;
}

bool operator==(const FlowSeries& a, const FlowSeries& b) {
  if (a.base_vars_ != b.base_vars_ || a.order_ != b.order_) return false;
  return a.coeffs_ == b.coeffs_;
}

FlowSeries operator+(const FlowSeries& a, const FlowSeries& b) {
  check_flow_ring(a, b);
  FlowSeries r(a.base_vars(), a.order());
  for (int j = 0; j < a.order(); ++j) r.set_coeff(j, a.coeff(j) + b.coeff(j));
  return r;
}

FlowSeries operator-(const FlowSeries& a, const FlowSeries& b) {
  check_flow_ring(a, b);
  FlowSeries r(a.base_vars(), a.order());
  for (int j = 0; j < a.order(); ++j) r.set_coeff(j, a.coeff(j) - b.coeff(j));
  return r;
}

FlowSeries operator-(const FlowSeries& a) {
  FlowSeries r(a.base_vars(), a.order());
  for (int j = 0; j < a.order(); ++j) r.set_coeff(j, -a.coeff(j));
  return r;
}

FlowSeries operator*(const FlowSeries& a, const FlowSeries& b) {
  check_flow_ring(a, b);
  FlowSeries r(a.base_vars(), a.order());
  for (int i = 0; i < a.order(); ++i) {
    if (a.coeff(i).is_zero()) continue;
    for (int j = 0; i + j < a.order(); ++j) {
      if (b.coeff(j).is_zero()) continue;
      r.set_coeff(i + j, r.coeff(i + j) + a.coeff(i) * b.coeff(j));
    }
  }
  return r;
}

FlowSeries operator*(const Rational& c, const FlowSeries& a) {
  FlowSeries r(a.base_vars(), a.order());
  for (int j = 0; j < a.order(); ++j) r.set_coeff(j, c * a.coeff(j));
  return r;
}

FlowSeries derivative_t(const FlowSeries& a) {
  FlowSeries r(a.base_vars(), a.order());
  for (int j = 0; j + 1 < a.order(); ++j) r.set_coeff(j, Rational(j + 1) * a.coeff(j + 1));
  return r;
}

FlowSeries antiderivative_t(const FlowSeries& a) {
  FlowSeries r(a.base_vars(), a.order());
  for (int j = 1; j < a.order(); ++j) r.set_coeff(j, (Rational(1) / j) * a.coeff(j - 1));
  return r;
}

FlowSeries compose(const FlowSeries& f, const FlowSeries& phi) {
  check_flow_ring(f, phi);
  if (!phi.coeff(0).is_zero())
    throw ValidationError("compose: argument must vanish at t = 0");
  FlowSeries r(f.base_vars(), f.order());
  for (int k = f.order() - 1; k >= 0; --k) {
    r = r * phi + FlowSeries::constant(f.coeff(k), f.order());
  }
  return r;
}

FlowSeries flow_invert_unit(const FlowSeries& a) {
  TruncatedSeries g0 = invert_unit(a.coeff(0));  // NonUnitError if not a unit of R
  FlowSeries r(a.base_vars(), a.order());
  r.set_coeff(0, g0);
  for (int j = 1; j < a.order(); ++j) {
    TruncatedSeries acc(a.base_vars(), a.order());
    for (int k = 1; k <= j; ++k) acc = acc + a.coeff(k) * r.coeff(j - k);
    r.set_coeff(j, -(g0 * acc));
  }
  return r;
}

void FlowProblem::validate() const {
  if (size < 1) throw ValidationError("flow system size must be >= 1");
  if (base_vars < 0) throw ValidationError("base_vars must be nonnegative");
  if (order < 2) throw ValidationError("flow problems need truncation order >= 2");
  if (static_cast<int>(matrix.size()) != size) throw ValidationError("matrix row count != size");
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != size) throw ValidationError("matrix column count != size");
    for (const auto& entry : row)
      if (entry.base_vars() != base_vars || entry.order() != order)
        throw RingMismatchError("matrix entry belongs to the wrong ring");
  }
  if (static_cast<int>(rhs.size()) != size) throw ValidationError("rhs length != size");
  for (const auto& b : rhs)
    if (b.num_vars() != base_vars || b.order() != order)
      throw RingMismatchError("rhs entry belongs to the wrong ring");
  // The unit condition on F(0) is enforced where it is used (inversion).
}

Matrix<TruncatedSeries> FlowProblem::leading_matrix() const {
  Matrix<TruncatedSeries> f0(size, size, TruncatedSeries(base_vars, order));
  for (int i = 0; i < size; ++i)
    for (int l = 0; l < size; ++l) f0.at(i, l) = matrix[i][l].coeff(0);
  return f0;
}

namespace {

// sum_l f_il(phi_l) phi_l' - b_i, recomputed from the definition.
std::vector<FlowSeries> raw_residual(const FlowProblem& p, const std::vector<FlowSeries>& phi) {
  std::vector<FlowSeries> res;
  res.reserve(p.size);
  for (int i = 0; i < p.size; ++i) {
    FlowSeries acc(p.base_vars, p.order);
    for (int l = 0; l < p.size; ++l)
      acc = acc + compose(p.matrix[i][l], phi[l]) * derivative_t(phi[l]);
    res.push_back(acc - FlowSeries::constant(p.rhs[i], p.order));
  }
  return res;
}

}  // namespace

FlowSolution solve_flow(const FlowProblem& problem) {
  problem.validate();
  const int n = problem.size;
  const int order = problem.order;
  Matrix<TruncatedSeries> f0_inv = invert(problem.leading_matrix());

  std::vector<FlowSeries> phi(n, FlowSeries(problem.base_vars, order));
  // Coefficient j+1 of phi kills the t^j defect; the defect at t^j never
  // moves again because later corrections enter at higher powers.
  for (int j = 0; j + 1 < order; ++j) {
    std::vector<FlowSeries> defect = raw_residual(problem, phi);
    std::vector<TruncatedSeries> ej;
    ej.reserve(n);
    bool all_zero = true;
    for (int i = 0; i < n; ++i) {
      ej.push_back(defect[i].coeff(j));
      all_zero = all_zero && ej.back().is_zero();
    }
    if (all_zero) continue;
    std::vector<TruncatedSeries> step = mat_vec(f0_inv, ej);
    for (int l = 0; l < n; ++l)
      phi[l].set_coeff(j + 1, phi[l].coeff(j + 1) - (Rational(1) / (j + 1)) * step[l]);
  }
  return FlowSolution{std::move(phi), order - 1};
}

FlowResidual verify_flow(const FlowProblem& problem, const std::vector<FlowSeries>& phi) {
  problem.validate();
  if (static_cast<int>(phi.size()) != problem.size)
    throw ValidationError("solution length != system size");
  for (const auto& f : phi) {
    if (f.base_vars() != problem.base_vars || f.order() != problem.order)
      throw RingMismatchError("solution component belongs to the wrong ring");
    if (!f.coeff(0).is_zero()) throw ValidationError("flows must vanish at t = 0");
  }
  FlowResidual r;
  r.components = raw_residual(problem, phi);
  r.valid_order = problem.order - 1;
  r.ok = true;
  for (const auto& comp : r.components)
    for (int j = 0; j < r.valid_order; ++j)
      if (!comp.coeff(j).is_zero()) r.ok = false;
  return r;
}

std::vector<TruncatedSeries> initial_velocities(const FlowProblem& problem) {
  problem.validate();
  return solve_linear(problem.leading_matrix(), problem.rhs);
}

}  // namespace arcjac
