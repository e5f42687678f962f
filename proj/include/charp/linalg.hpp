#pragma once

#include <cstddef>
#include <vector>

#include "charp/poly.hpp"

namespace charp {

/// Row-major dense matrix over F_p.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Coeff& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Coeff at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Coeff* row(std::size_t r) { return data_.data() + r * cols_; }
  const Coeff* row(std::size_t r) const { return data_.data() + r * cols_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Coeff> data_;
};

/// In-place reduced row echelon form; returns pivot columns in row order.
std::vector<std::size_t> rref(DenseMatrix& m, const PrimeField& F);

std::size_t rank(DenseMatrix m, const PrimeField& F);

/// Basis of {v : m v = 0}, returned in reduced echelon form with respect to
/// the column order (row i has its first nonzero entry equal to 1, strictly
/// increasing positions).
std::vector<std::vector<Coeff>> kernel(const DenseMatrix& m, const PrimeField& F);

/// Greedy independence filter: vectors are offered in sequence and accepted
/// when they are not in the span of the previously accepted ones.
class IncrementalEchelon {
 public:
  IncrementalEchelon(std::size_t dim, const PrimeField& F) : dim_(dim), F_(F) {}
  bool add(std::vector<Coeff> v);
  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t dim_;
  const PrimeField& F_;
  std::vector<std::vector<Coeff>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace charp
