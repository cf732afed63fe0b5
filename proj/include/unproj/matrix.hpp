#pragma once

#include <stdexcept>
#include <vector>

#include "unproj/polynomial.hpp"

namespace unproj {

/// Rectangular grid of polynomials over one ring, stored row-major.
template <CoefficientField F>
class PolyMatrix {
 public:
  PolyMatrix(RingPtr<F> ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), entries_(rows * cols, Polynomial<F>(ring)) {}

  PolyMatrix(RingPtr<F> ring, const std::vector<std::vector<Polynomial<F>>>& rows)
      : PolyMatrix(ring, rows.size(), rows.empty() ? 0 : rows.front().size()) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (rows[i].size() != cols_) throw std::invalid_argument("matrix rows must have equal length");
      for (std::size_t j = 0; j < cols_; ++j) at(i, j) = map_to_ring(rows[i][j], ring_);
    }
  }

  const RingPtr<F>& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Polynomial<F>& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Polynomial<F>& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  /// Submatrix keeping the listed rows and columns, in the given order.
  PolyMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    PolyMatrix m(ring_, rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m.at(i, j) = at(rows[i], cols[j]);
    return m;
  }

  PolyMatrix without_column(std::size_t col) const {
    std::vector<std::size_t> rows(rows_), cols;
    for (std::size_t i = 0; i < rows_; ++i) rows[i] = i;
    for (std::size_t j = 0; j < cols_; ++j)
      if (j != col) cols.push_back(j);
    return submatrix(rows, cols);
  }

  PolyMatrix without(std::size_t row, std::size_t col) const {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < rows_; ++i)
      if (i != row) rows.push_back(i);
    for (std::size_t j = 0; j < cols_; ++j)
      if (j != col) cols.push_back(j);
    return submatrix(rows, cols);
  }

 private:
  RingPtr<F> ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial<F>> entries_;
};

/// Cofactor expansion along the first row.  The 0x0 determinant is 1.
template <CoefficientField F>
Polynomial<F> determinant(const PolyMatrix<F>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial<F>::constant(m.ring(), 1);
  if (n == 1) return m.at(0, 0);
  Polynomial<F> det(m.ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    Polynomial<F> term = m.at(0, j) * determinant(m.without(0, j));
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace unproj
