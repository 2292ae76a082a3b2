#include "arcjac/forms.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "arcjac/error.hpp"

namespace arcjac {

bool FormKeyLess::operator()(const FormKey& a, const FormKey& b) const {
  GradedLexLess less;
  if (less(a.exponents, b.exponents)) return true;
  if (less(b.exponents, a.exponents)) return false;
  return std::lexicographical_compare(a.indices.begin(), a.indices.end(), b.indices.begin(),
                                      b.indices.end());
}

namespace {

void gen_bounded(int num_vars, int bound, int pos, int used, Exponents& cur,
                 std::vector<Exponents>& out) {
  if (pos == num_vars) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; used + k <= bound; ++k) {
    cur[pos] = k;
    gen_bounded(num_vars, bound, pos + 1, used + k, cur, out);
  }
  cur[pos] = 0;
}

std::vector<Exponents> monomials_of_degree_below(int num_vars, int order) {
  std::vector<Exponents> out;
  Exponents cur(num_vars, 0);
  gen_bounded(num_vars, order - 1, 0, 0, cur, out);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

std::vector<Exponents> monomials_of_degree(int num_vars, int deg) {
  std::vector<Exponents> all, out;
  Exponents cur(num_vars, 0);
  gen_bounded(num_vars, deg, 0, 0, cur, all);
  for (auto& e : all)
    if (total_degree(e) == deg) out.push_back(std::move(e));
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

std::vector<std::vector<int>> combinations(int n, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > n) return out;
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int i = p - 1;
    while (i >= 0 && idx[i] == n - p + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

DifferentialForm::DifferentialForm(int num_vars, int order, int degree)
    : num_vars_(num_vars), order_(order), degree_(degree) {
  if (num_vars < 0) throw ValidationError("num_vars must be nonnegative");
  if (order < 1) throw ValidationError("truncation order must be >= 1");
  if (degree < 0) throw ValidationError("form degree must be nonnegative");
}

DifferentialForm DifferentialForm::from_series(const TruncatedSeries& s) {
  DifferentialForm w(s.num_vars(), s.order(), 0);
  for (const auto& [e, c] : s.terms()) w.add_term(e, {}, c);
  return w;
}

DifferentialForm DifferentialForm::from_terms(
    int num_vars, int order, int degree,
    const std::vector<std::tuple<Exponents, std::vector<int>, Rational>>& terms) {
  DifferentialForm w(num_vars, order, degree);
  for (const auto& [e, J, c] : terms) {
    if (static_cast<int>(e.size()) != num_vars)
      throw ValidationError("exponent vector length != num_vars");
    for (int v : e)
      if (v < 0) throw ValidationError("negative exponent");
    if (total_degree(e) >= order) throw ValidationError("term degree exceeds truncation order");
    for (int i : J)
      if (i < 0 || i >= num_vars) throw ValidationError("differential index out of range");
    w.add_term(e, J, c);
  }
  return w;
}

void DifferentialForm::add_term(const Exponents& e, const std::vector<int>& indices,
                                const Rational& c) {
  if (static_cast<int>(indices.size()) != degree_)
    throw ValidationError("index set size != form degree");
  if (c == 0 || total_degree(e) >= order_) return;
  // Insertion sort of the index set, tracking the wedge sign.
  std::vector<int> J(indices);
  int sign = 1;
  for (std::size_t i = 1; i < J.size(); ++i) {
    int v = J[i];
    std::size_t j = i;
    while (j > 0 && J[j - 1] > v) {
      J[j] = J[j - 1];
      --j;
      sign = -sign;
    }
    J[j] = v;
  }
  for (std::size_t i = 1; i < J.size(); ++i)
    if (J[i] == J[i - 1]) return;  // repeated differential
  FormKey key{e, std::move(J)};
  Rational value = (sign > 0) ? c : -c;
  auto [it, inserted] = terms_.emplace(std::move(key), value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

TruncatedSeries DifferentialForm::to_series() const {
  if (degree_ != 0) throw ValidationError("to_series needs a 0-form");
  TruncatedSeries s(num_vars_, order_);
  for (const auto& [k, c] : terms_) s.add_term(k.exponents, c);
  return s;
}

namespace {

void check_form_ring(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.num_vars() != b.num_vars() || a.order() != b.order()) {
    std::ostringstream os;
    os << "ring mismatch: (" << a.num_vars() << "," << a.order() << ") vs (" << b.num_vars()
       << "," << b.order() << ")";
    throw RingMismatchError(os.str());
  }
}

}  // namespace

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
  check_form_ring(a, b);
  if (a.degree() != b.degree()) throw ValidationError("adding forms of different degrees");
  DifferentialForm r = a;
  for (const auto& [k, c] : b.terms()) r.add_term(k.exponents, k.indices, c);
  return r;
}

DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
  check_form_ring(a, b);
  if (a.degree() != b.degree()) throw ValidationError("subtracting forms of different degrees");
  DifferentialForm r = a;
  for (const auto& [k, c] : b.terms()) r.add_term(k.exponents, k.indices, -c);
  return r;
}

DifferentialForm operator-(const DifferentialForm& a) {
  DifferentialForm r(a.num_vars(), a.order(), a.degree());
  for (const auto& [k, c] : a.terms()) r.add_term(k.exponents, k.indices, -c);
  return r;
}

DifferentialForm operator*(const Rational& c, const DifferentialForm& a) {
  DifferentialForm r(a.num_vars(), a.order(), a.degree());
  if (c == 0) return r;
  for (const auto& [k, v] : a.terms()) r.add_term(k.exponents, k.indices, c * v);
  return r;
}

DifferentialForm operator*(const TruncatedSeries& s, const DifferentialForm& a) {
  if (s.num_vars() != a.num_vars() || s.order() != a.order())
    throw RingMismatchError("series/form ring mismatch");
  DifferentialForm r(a.num_vars(), a.order(), a.degree());
  for (const auto& [es, cs] : s.terms()) {
    int ds = total_degree(es);
    for (const auto& [k, ck] : a.terms()) {
      if (ds + total_degree(k.exponents) >= a.order()) continue;
      Exponents e(es);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += k.exponents[i];
      r.add_term(e, k.indices, cs * ck);
    }
  }
  return r;
}

DifferentialForm d(const DifferentialForm& w) {
  DifferentialForm r(w.num_vars(), w.order(), w.degree() + 1);
  for (const auto& [k, c] : w.terms()) {
    for (int i = 0; i < w.num_vars(); ++i) {
      if (k.exponents[i] == 0) continue;
      if (std::find(k.indices.begin(), k.indices.end(), i) != k.indices.end()) continue;
      Exponents e(k.exponents);
      e[i] -= 1;
      std::vector<int> J;
      J.reserve(k.indices.size() + 1);
      J.push_back(i);
      J.insert(J.end(), k.indices.begin(), k.indices.end());
      r.add_term(e, J, c * k.exponents[i]);
    }
  }
  return r;
}

DifferentialForm d(const TruncatedSeries& s) { return d(DifferentialForm::from_series(s)); }

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  check_form_ring(a, b);
  DifferentialForm r(a.num_vars(), a.order(), a.degree() + b.degree());
  for (const auto& [ka, ca] : a.terms()) {
    int da = total_degree(ka.exponents);
    for (const auto& [kb, cb] : b.terms()) {
      if (da + total_degree(kb.exponents) >= a.order()) continue;
      Exponents e(ka.exponents);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += kb.exponents[i];
      std::vector<int> J(ka.indices);
      J.insert(J.end(), kb.indices.begin(), kb.indices.end());
      r.add_term(e, J, ca * cb);
    }
  }
  return r;
}

DifferentialForm truncate_form(const DifferentialForm& w, int new_order) {
  if (new_order < 1 || new_order > w.order())
    throw ValidationError("truncation order must be in [1, order]");
  DifferentialForm r(w.num_vars(), new_order, w.degree());
  for (const auto& [k, c] : w.terms()) r.add_term(k.exponents, k.indices, c);
  return r;
}

// --- quotient structure ---

struct DeRhamSpace::Quotient {
  int num_vars, order, degree;
  std::vector<FormKey> keys;  // free basis, ascending
  std::map<FormKey, int, FormKeyLess> index;
  // Echelon rows spanning the relation space. Each row is normalized with its
  // largest nonzero entry (the pivot) equal to 1; keyed by pivot column.
  std::map<int, std::vector<Rational>> pivots;
  std::vector<FormKey> basis;     // non-pivot keys, ascending
  std::vector<int> basis_cols;    // their columns
  std::map<int, int> col_to_basis;

  std::vector<Rational> dense(const DifferentialForm& w) const {
    std::vector<Rational> v(keys.size(), Rational(0));
    for (const auto& [k, c] : w.terms()) v[index.at(k)] = c;
    return v;
  }

  // Subtracts pivot rows, largest pivot first. A row only touches columns at
  // or below its pivot, so one descending pass is a full reduction.
  void reduce(std::vector<Rational>& v) const {
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      int col = it->first;
      if (v[col] == 0) continue;
      Rational f = v[col];
      const std::vector<Rational>& row = it->second;
      for (int j = 0; j <= col; ++j)
        if (row[j] != 0) v[j] -= f * row[j];
    }
  }

  DifferentialForm rebuild(const std::vector<Rational>& v) const {
    DifferentialForm w(num_vars, order, degree);
    for (std::size_t j = 0; j < keys.size(); ++j)
      if (v[j] != 0) w.add_term(keys[j].exponents, keys[j].indices, v[j]);
    return w;
  }

  void insert_relation(std::vector<Rational> row) {
    while (true) {
      int lead = -1;
      for (int j = static_cast<int>(row.size()) - 1; j >= 0; --j)
        if (row[j] != 0) {
          lead = j;
          break;
        }
      if (lead < 0) return;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        Rational c = row[lead];
        for (Rational& v : row) v /= c;
        pivots.emplace(lead, std::move(row));
        return;
      }
      Rational f = row[lead];
      const std::vector<Rational>& prow = it->second;
      for (int j = 0; j <= lead; ++j)
        if (prow[j] != 0) row[j] -= f * prow[j];
    }
  }
};

namespace {

std::shared_ptr<const DeRhamSpace::Quotient> build_quotient(int num_vars, int order, int degree) {
  auto q = std::make_shared<DeRhamSpace::Quotient>();
  q->num_vars = num_vars;
  q->order = order;
  q->degree = degree;
  if (degree < 0 || degree > num_vars) return q;  // zero space

  auto mons = monomials_of_degree_below(num_vars, order);
  auto sets = combinations(num_vars, degree);
  for (const auto& e : mons)
    for (const auto& J : sets) {
      q->index.emplace(FormKey{e, J}, static_cast<int>(q->keys.size()));
      q->keys.push_back(FormKey{e, J});
    }

  // Relations d(mu) ^ dt_{J'} for mu of total degree exactly `order`.
  auto tops = monomials_of_degree(num_vars, order);
  auto subsets = combinations(num_vars, degree - 1);
  for (const auto& mu : tops) {
    for (const auto& Jp : subsets) {
      std::vector<Rational> row(q->keys.size(), Rational(0));
      bool nonzero = false;
      for (int i = 0; i < num_vars; ++i) {
        if (mu[i] == 0) continue;
        if (std::binary_search(Jp.begin(), Jp.end(), i)) continue;
        Exponents e(mu);
        e[i] -= 1;
        std::vector<int> J(Jp);
        auto pos = std::lower_bound(J.begin(), J.end(), i);
        int swaps = static_cast<int>(pos - J.begin());
        J.insert(pos, i);
        Rational coeff = Rational(mu[i]);
        if (swaps % 2 != 0) coeff = -coeff;
        row[q->index.at(FormKey{e, J})] += coeff;
        nonzero = true;
      }
      if (nonzero) q->insert_relation(std::move(row));
    }
  }

  for (std::size_t j = 0; j < q->keys.size(); ++j) {
    if (q->pivots.count(static_cast<int>(j))) continue;
    q->col_to_basis[static_cast<int>(j)] = static_cast<int>(q->basis.size());
    q->basis.push_back(q->keys[j]);
    q->basis_cols.push_back(static_cast<int>(j));
  }
  return q;
}

std::shared_ptr<const DeRhamSpace::Quotient> quotient_cache(int num_vars, int order, int degree) {
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const DeRhamSpace::Quotient>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_tuple(num_vars, order, degree);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_quotient(num_vars, order, degree)).first;
  return it->second;
}

// d of a single basis key, expressed in the quotient basis of `target`.
std::vector<Rational> d_coords(const FormKey& key, const DeRhamSpace::Quotient& source,
                               const DeRhamSpace::Quotient& target) {
  DifferentialForm w(source.num_vars, source.order, source.degree);
  w.add_term(key.exponents, key.indices, Rational(1));
  DifferentialForm dw = d(w);
  std::vector<Rational> v = target.dense(dw);
  target.reduce(v);
  std::vector<Rational> coords(target.basis.size(), Rational(0));
  for (std::size_t b = 0; b < target.basis_cols.size(); ++b) coords[b] = v[target.basis_cols[b]];
  return coords;
}

}  // namespace

DeRhamSpace::DeRhamSpace(int num_vars, int order, int degree)
    : num_vars_(num_vars), order_(order), degree_(degree) {
  here_ = quotient_cache(num_vars, order, degree);
  below_ = degree >= 1 ? quotient_cache(num_vars, order, degree - 1) : nullptr;
  above_ = quotient_cache(num_vars, order, degree + 1);
  basis_ = here_->basis;
  dim_total_ = static_cast<int>(basis_.size());

  d_out_ = std::make_unique<Matrix<Rational>>(static_cast<int>(above_->basis.size()), dim_total_,
                                              Rational(0));
  for (int k = 0; k < dim_total_; ++k) {
    std::vector<Rational> col = d_coords(basis_[k], *here_, *above_);
    for (int i = 0; i < d_out_->rows(); ++i) d_out_->at(i, k) = col[i];
  }
  dim_closed_ = dim_total_ - q_rank(*d_out_);

  if (below_) {
    d_in_ = std::make_unique<Matrix<Rational>>(dim_total_, static_cast<int>(below_->basis.size()),
                                               Rational(0));
    for (int k = 0; k < d_in_->cols(); ++k) {
      std::vector<Rational> col = d_coords(below_->basis[k], *below_, *here_);
      for (int i = 0; i < dim_total_; ++i) d_in_->at(i, k) = col[i];
    }
    dim_exact_ = q_rank(*d_in_);
  } else {
    dim_exact_ = 0;  // nothing maps into Omega^0
  }
}

namespace {

void check_space_ring(const DeRhamSpace& sp, const DifferentialForm& w) {
  if (w.num_vars() != sp.num_vars() || w.order() != sp.order() || w.degree() != sp.degree())
    throw RingMismatchError("form does not belong to this space");
}

}  // namespace

DifferentialForm DeRhamSpace::normal_form(const DifferentialForm& w) const {
  check_space_ring(*this, w);
  if (here_->keys.empty()) return DifferentialForm(num_vars_, order_, degree_);
  std::vector<Rational> v = here_->dense(w);
  here_->reduce(v);
  return here_->rebuild(v);
}

std::vector<Rational> DeRhamSpace::coordinates(const DifferentialForm& w) const {
  check_space_ring(*this, w);
  std::vector<Rational> coords(dim_total_, Rational(0));
  if (here_->keys.empty()) return coords;
  std::vector<Rational> v = here_->dense(w);
  here_->reduce(v);
  for (std::size_t b = 0; b < here_->basis_cols.size(); ++b) coords[b] = v[here_->basis_cols[b]];
  return coords;
}

DifferentialForm DeRhamSpace::from_coordinates(const std::vector<Rational>& coords) const {
  if (static_cast<int>(coords.size()) != dim_total_)
    throw ValidationError("coordinate vector has wrong length");
  DifferentialForm w(num_vars_, order_, degree_);
  for (int b = 0; b < dim_total_; ++b)
    if (coords[b] != 0) w.add_term(basis_[b].exponents, basis_[b].indices, coords[b]);
  return w;
}

bool DeRhamSpace::is_closed(const DifferentialForm& w) const {
  check_space_ring(*this, w);
  DifferentialForm dw = d(w);
  if (above_->keys.empty()) return true;
  std::vector<Rational> v = above_->dense(dw);
  above_->reduce(v);
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

bool DeRhamSpace::is_exact(const DifferentialForm& w) const {
  if (degree_ == 0) {
    // The image of d in Omega^0 is {0}.
    std::vector<Rational> coords = coordinates(w);
    return std::all_of(coords.begin(), coords.end(), [](const Rational& x) { return x == 0; });
  }
  return exactness_witness(w).has_value();
}

std::optional<DifferentialForm> DeRhamSpace::exactness_witness(const DifferentialForm& w) const {
  check_space_ring(*this, w);
  if (!d_in_) return std::nullopt;  // no (degree-1)-forms to pull from
  std::vector<Rational> target = coordinates(w);
  auto sol = q_solve(*d_in_, target);
  if (!sol) return std::nullopt;
  DifferentialForm u(num_vars_, order_, degree_ - 1);
  for (std::size_t b = 0; b < sol->size(); ++b)
    if ((*sol)[b] != 0) u.add_term(below_->basis[b].exponents, below_->basis[b].indices, (*sol)[b]);
  return u;
}

const DeRhamSpace& omega_space(int num_vars, int order, int degree) {
  if (num_vars < 0 || order < 1 || degree < 0)
    throw ValidationError("omega_space needs num_vars >= 0, order >= 1, degree >= 0");
  static std::map<std::tuple<int, int, int>, std::unique_ptr<DeRhamSpace>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_tuple(num_vars, order, degree);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::unique_ptr<DeRhamSpace>(new DeRhamSpace(num_vars, order, degree)))
             .first;
  }
  return *it->second;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.num_vars() != b.num_vars() || a.order() != b.order() || a.degree() != b.degree())
    return false;
  if (a.degree() > a.num_vars()) return true;  // the zero space
  return normal_form(a - b).is_representative_zero();
}

DifferentialForm normal_form(const DifferentialForm& w) {
  if (w.degree() > w.num_vars()) return DifferentialForm(w.num_vars(), w.order(), w.degree());
  return omega_space(w.num_vars(), w.order(), w.degree()).normal_form(w);
}

bool is_closed(const DifferentialForm& w) {
  if (w.degree() > w.num_vars()) return true;
  return omega_space(w.num_vars(), w.order(), w.degree()).is_closed(w);
}

bool is_exact(const DifferentialForm& w) {
  if (w.degree() > w.num_vars()) return true;  // the zero space: w is the zero form
  return omega_space(w.num_vars(), w.order(), w.degree()).is_exact(w);
}

std::optional<DifferentialForm> exactness_witness(const DifferentialForm& w) {
  if (w.degree() > w.num_vars()) return std::nullopt;
  return omega_space(w.num_vars(), w.order(), w.degree()).exactness_witness(w);
}

std::string form_to_string(const DifferentialForm& w) {
  if (w.terms().empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : w.terms()) {
    if (!first) os << " + ";
    first = false;
    os << rational_to_string(c);
    for (int i = 0; i < w.num_vars(); ++i) {
      if (k.exponents[i] == 0) continue;
      os << "*t" << i;
      if (k.exponents[i] > 1) os << "^" << k.exponents[i];
    }
    for (std::size_t j = 0; j < k.indices.size(); ++j)
      os << (j == 0 ? " dt" : "^dt") << k.indices[j];
  }
  return os.str();
}

}  // namespace arcjac
