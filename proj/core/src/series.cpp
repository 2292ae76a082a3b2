#include "arcjac/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "arcjac/error.hpp"

namespace arcjac {

int total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
  int da = total_degree(a);
  int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

void check_ring(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.num_vars() != b.num_vars() || a.order() != b.order()) {
    std::ostringstream os;
    os << "ring mismatch: (" << a.num_vars() << "," << a.order() << ") vs ("
       << b.num_vars() << "," << b.order() << ")";
    throw RingMismatchError(os.str());
  }
}

void check_exponents(int num_vars, int order, const Exponents& e, bool bound_degree) {
  if (static_cast<int>(e.size()) != num_vars)
    throw ValidationError("exponent vector length != num_vars");
  for (int v : e)
    if (v < 0) throw ValidationError("negative exponent");
  if (bound_degree && total_degree(e) >= order)
    throw ValidationError("term degree exceeds truncation order");
}

}  // namespace

TruncatedSeries::TruncatedSeries(int num_vars, int order)
    : num_vars_(num_vars), order_(order) {
  if (num_vars < 0) throw ValidationError("num_vars must be nonnegative");
  if (order < 1) throw ValidationError("truncation order must be >= 1");
}

TruncatedSeries TruncatedSeries::constant(int num_vars, int order, const Rational& value) {
  TruncatedSeries s(num_vars, order);
  if (value != 0) s.terms_.emplace(Exponents(num_vars, 0), value);
  return s;
}

TruncatedSeries TruncatedSeries::variable(int num_vars, int order, int index) {
  TruncatedSeries s(num_vars, order);
  if (index < 0 || index >= num_vars) throw ValidationError("variable index out of range");
  if (order > 1) {
    Exponents e(num_vars, 0);
    e[index] = 1;
    s.terms_.emplace(std::move(e), Rational(1));
  }
  return s;
}

TruncatedSeries TruncatedSeries::from_terms(
    int num_vars, int order, const std::vector<std::pair<Exponents, Rational>>& terms) {
  TruncatedSeries s(num_vars, order);
  for (const auto& [e, c] : terms) {
    check_exponents(num_vars, order, e, true);
    s.add_term(e, c);
  }
  return s;
}

Rational TruncatedSeries::constant_term() const {
  return coeff(Exponents(num_vars_, 0));
}

Rational TruncatedSeries::coeff(const Exponents& e) const {
  check_exponents(num_vars_, order_, e, false);
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int TruncatedSeries::degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.rbegin()->first);
}

void TruncatedSeries::add_term(const Exponents& e, const Rational& c) {
  if (c == 0 || total_degree(e) >= order_) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.num_vars_ == b.num_vars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_ring(a, b);
  TruncatedSeries r = a;
  for (const auto& [e, c] : b.terms()) r.add_term(e, c);
  return r;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_ring(a, b);
  TruncatedSeries r = a;
  for (const auto& [e, c] : b.terms()) r.add_term(e, -c);
  return r;
}

TruncatedSeries operator-(const TruncatedSeries& a) {
  TruncatedSeries r(a.num_vars(), a.order());
  for (const auto& [e, c] : a.terms()) r.add_term(e, -c);
  return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_ring(a, b);
  TruncatedSeries r(a.num_vars(), a.order());
  const int order = a.order();
  for (const auto& [ea, ca] : a.terms()) {
    int da = total_degree(ea);
    for (const auto& [eb, cb] : b.terms()) {
      if (da + total_degree(eb) >= order) continue;
      Exponents e(ea);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a) {
  TruncatedSeries r(a.num_vars(), a.order());
  if (c == 0) return r;
  for (const auto& [e, v] : a.terms()) r.add_term(e, c * v);
  return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const Rational& c) { return c * a; }

TruncatedSeries pow(const TruncatedSeries& a, int k) {
  if (k < 0) throw ValidationError("negative power");
  TruncatedSeries r = ring_one(a);
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

TruncatedSeries derivative(const TruncatedSeries& a, int index) {
  if (index < 0 || index >= a.num_vars()) throw ValidationError("variable index out of range");
  TruncatedSeries r(a.num_vars(), a.order());
  for (const auto& [e, c] : a.terms()) {
    if (e[index] == 0) continue;
    Exponents d(e);
    d[index] -= 1;
    r.add_term(d, c * e[index]);
  }
  return r;
}

TruncatedSeries substitute(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.num_vars() != 1) throw ValidationError("substitute: outer series must be univariate");
  if (g.constant_term() != 0)
    throw ValidationError("substitute: inner series must have zero constant term");
  // g is nilpotent, so only coefficients of f below g's order matter.
  int top = std::min(f.degree(), g.order() - 1);
  TruncatedSeries r(g.num_vars(), g.order());
  for (int k = top; k >= 0; --k) {
    r = r * g;
    Rational fk = f.coeff(Exponents{k});
    if (fk != 0) r.add_term(Exponents(g.num_vars(), 0), fk);
  }
  return r;
}

TruncatedSeries substitute_var(const TruncatedSeries& f, int index, const TruncatedSeries& g) {
  check_ring(f, g);
  if (index < 0 || index >= f.num_vars()) throw ValidationError("variable index out of range");
  if (g.constant_term() != 0)
    throw ValidationError("substitute_var: replacement must have zero constant term");
  // Bucket terms of f by the power of t_index, then Horner in g.
  int top = 0;
  for (const auto& [e, c] : f.terms()) top = std::max(top, e[index]);
  std::vector<TruncatedSeries> bucket(top + 1, TruncatedSeries(f.num_vars(), f.order()));
  for (const auto& [e, c] : f.terms()) {
    Exponents rest(e);
    rest[index] = 0;
    bucket[e[index]].add_term(rest, c);
  }
  TruncatedSeries r(f.num_vars(), f.order());
  for (int k = top; k >= 0; --k) r = r * g + bucket[k];
  return r;
}

TruncatedSeries invert_unit(const TruncatedSeries& a) {
  Rational c0 = a.constant_term();
  if (c0 == 0) throw NonUnitError("inverse of a series with zero constant term");
  // a = c0 (1 - u) with u in the maximal ideal; sum the geometric series.
  TruncatedSeries u = ring_one(a) - a * (Rational(1) / c0);
  TruncatedSeries r = ring_one(a);
  for (int k = 1; k < a.order(); ++k) r = r * u + ring_one(a);
  return r * (Rational(1) / c0);
}

TruncatedSeries sqrt_unit(const TruncatedSeries& a, const Rational& root) {
  Rational c0 = a.constant_term();
  if (c0 == 0) throw NonUnitError("square root of a series with zero constant term");
  if (root * root != c0) throw NotASquareError("supplied root does not square to the constant term");
  // a = c0 (1 + h); binomial series for (1 + h)^(1/2), h nilpotent.
  TruncatedSeries h = a * (Rational(1) / c0) - ring_one(a);
  TruncatedSeries sum = ring_one(a);
  TruncatedSeries hpow = ring_one(a);
  Rational binom(1);
  for (int k = 1; k < a.order(); ++k) {
    binom *= Rational(3 - 2 * k) / Rational(2 * k);  // C(1/2,k)/C(1/2,k-1)
    hpow = hpow * h;
    if (hpow.is_zero()) break;
    sum = sum + binom * hpow;
  }
  return root * sum;
}

TruncatedSeries truncated(const TruncatedSeries& a, int new_order) {
  if (new_order < 1 || new_order > a.order())
    throw ValidationError("truncation order must be in [1, order]");
  TruncatedSeries r(a.num_vars(), new_order);
  for (const auto& [e, c] : a.terms()) r.add_term(e, c);
  return r;
}

std::string series_to_string(const TruncatedSeries& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    os << rational_to_string(c);
    for (int i = 0; i < a.num_vars(); ++i) {
      if (e[i] == 0) continue;
      os << "*t" << i;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

Rational ring_invert(const Rational& a) {
  if (a == 0) throw NonUnitError("inverse of zero");
  return Rational(1) / a;
}

}  // namespace arcjac
