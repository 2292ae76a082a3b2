#include "arcjac/linalg.hpp"

namespace arcjac {

int q_rank(Matrix<Rational> a) {
  int rank = 0;
  for (int col = 0; col < a.cols() && rank < a.rows(); ++col) {
    int pivot = -1;
    for (int i = rank; i < a.rows(); ++i)
      if (a.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = col; j < a.cols(); ++j) std::swap(a.at(pivot, j), a.at(rank, j));
    for (int i = rank + 1; i < a.rows(); ++i) {
      if (a.at(i, col) == 0) continue;
      Rational f = a.at(i, col) / a.at(rank, col);
      for (int j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::optional<std::vector<Rational>> q_solve(const Matrix<Rational>& a,
                                             const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw ValidationError("matrix/vector shape mismatch");
  int rows = a.rows(), cols = a.cols();
  Matrix<Rational> m(rows, cols + 1, Rational(0));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m.at(i, j) = a.at(i, j);
    m.at(i, cols) = b[i];
  }
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = 0; j <= cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    Rational lead = m.at(rank, col);
    for (int j = 0; j <= cols; ++j) m.at(rank, j) /= lead;
    for (int i = 0; i < rows; ++i) {
      if (i == rank || m.at(i, col) == 0) continue;
      Rational f = m.at(i, col);
      for (int j = 0; j <= cols; ++j) m.at(i, j) -= f * m.at(rank, j);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int i = rank; i < rows; ++i)
    if (m.at(i, cols) != 0) return std::nullopt;  // inconsistent
  std::vector<Rational> x(cols, Rational(0));
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = m.at(r, cols);
  return x;
}

}  // namespace arcjac
