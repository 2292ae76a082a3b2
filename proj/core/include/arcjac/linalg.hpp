#pragma once

#include <optional>
#include <vector>

#include "arcjac/error.hpp"
#include "arcjac/series.hpp"

namespace arcjac {

// Dense matrix over a commutative ring T. T needs the ring_* protocol
// (ring_zero/ring_one/ring_is_zero/ring_invert taking a sample element);
// Rational and TruncatedSeries both provide it.
template <typename T>
class Matrix {
 public:
  Matrix(int rows, int cols, const T& fill)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw ValidationError("negative matrix dimension");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  // A sample element, used to mint zeros/ones of the right ring.
  const T& sample() const { return data_.at(0); }

  Matrix without_row_col(int row, int col) const {
    Matrix m(rows_ - 1, cols_ - 1, sample());
    for (int i = 0, mi = 0; i < rows_; ++i) {
      if (i == row) continue;
      for (int j = 0, mj = 0; j < cols_; ++j) {
        if (j == col) continue;
        m.at(mi, mj) = at(i, j);
        ++mj;
      }
      ++mi;
    }
    return m;
  }

 private:
  int rows_, cols_;
  std::vector<T> data_;
};

// Laplace expansion along the first column. Exact; meant for the small
// matrices this library works with (size <= genus + 1).
template <typename T>
T determinant(const Matrix<T>& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw ValidationError("determinant needs a square nonempty matrix");
  int n = a.rows();
  if (n == 1) return a.at(0, 0);
  T sum = ring_zero(a.sample());
  for (int i = 0; i < n; ++i) {
    if (ring_is_zero(a.at(i, 0))) continue;
    T cof = a.at(i, 0) * determinant(a.without_row_col(i, 0));
    if (i % 2 == 0)
      sum = sum + cof;
    else
      sum = sum - cof;
  }
  return sum;
}

// Transpose of the cofactor matrix, so a * adjugate(a) = det(a) * I.
template <typename T>
Matrix<T> adjugate(const Matrix<T>& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw ValidationError("adjugate needs a square nonempty matrix");
  int n = a.rows();
  Matrix<T> adj(n, n, ring_zero(a.sample()));
  if (n == 1) {
    adj.at(0, 0) = ring_one(a.sample());
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T minor = determinant(a.without_row_col(i, j));
      adj.at(j, i) = ((i + j) % 2 == 0) ? minor : (ring_zero(a.sample()) - minor);
    }
  return adj;
}

template <typename T>
std::vector<T> mat_vec(const Matrix<T>& a, const std::vector<T>& x) {
  if (static_cast<int>(x.size()) != a.cols()) throw ValidationError("matrix/vector shape mismatch");
  std::vector<T> y(a.rows(), ring_zero(a.sample()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[i] = y[i] + a.at(i, j) * x[j];
  return y;
}

template <typename T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw ValidationError("matrix shape mismatch");
  Matrix<T> c(a.rows(), b.cols(), ring_zero(a.sample()));
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (ring_is_zero(a.at(i, k))) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) = c.at(i, j) + a.at(i, k) * b.at(k, j);
    }
  return c;
}

// Inverse over the ring; the determinant must be a unit (NonUnitError
// otherwise, via ring_invert).
template <typename T>
Matrix<T> invert(const Matrix<T>& a) {
  T det_inv = ring_invert(determinant(a));
  Matrix<T> adj = adjugate(a);
  for (int i = 0; i < adj.rows(); ++i)
    for (int j = 0; j < adj.cols(); ++j) adj.at(i, j) = adj.at(i, j) * det_inv;
  return adj;
}

// Solves a x = b when det(a) is a unit, via the adjugate. Exact over any of
// the library's coefficient rings.
template <typename T>
std::vector<T> solve_linear(const Matrix<T>& a, const std::vector<T>& b) {
  if (a.rows() != a.cols()) throw ValidationError("solve_linear needs a square matrix");
  if (static_cast<int>(b.size()) != a.rows()) throw ValidationError("matrix/vector shape mismatch");
  T det_inv = ring_invert(determinant(a));
  std::vector<T> y = mat_vec(adjugate(a), b);
  for (T& v : y) v = v * det_inv;
  return y;
}

// Unsigned minors of a with row `row` deleted: entry c is the determinant of
// the square matrix obtained by deleting row `row` and column c. For 1x1
// input the empty minor is 1 by convention.
template <typename T>
std::vector<T> row_deleted_minors(const Matrix<T>& a, int row) {
  if (a.rows() != a.cols() || a.rows() == 0) throw ValidationError("row_deleted_minors needs a square nonempty matrix");
  if (row < 0 || row >= a.rows()) throw ValidationError("row index out of range");
  int n = a.rows();
  std::vector<T> minors;
  minors.reserve(n);
  for (int c = 0; c < n; ++c) {
    if (n == 1)
      minors.push_back(ring_one(a.sample()));
    else
      minors.push_back(determinant(a.without_row_col(row, c)));
  }
  return minors;
}

// --- Rational-only dense elimination (rectangular systems) ---

// Row-reduces in place with partial structure kept simple: returns the rank.
int q_rank(Matrix<Rational> a);

// A particular solution of a x = b if one exists.
std::optional<std::vector<Rational>> q_solve(const Matrix<Rational>& a,
                                             const std::vector<Rational>& b);

}  // namespace arcjac
