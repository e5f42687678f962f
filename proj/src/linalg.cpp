#include "charp/linalg.hpp"

#include <utility>

namespace charp {

std::vector<std::size_t> rref(DenseMatrix& m, const PrimeField& F) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m.at(piv, k), m.at(r, k));
    Coeff inv = F.inv(m.at(r, c));
    Coeff* pr = m.row(r);
    for (std::size_t k = c; k < m.cols(); ++k) pr[k] = F.mul(pr[k], inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      Coeff f = m.at(i, c);
      if (!f) continue;
      Coeff* pi = m.row(i);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (pr[k]) pi[k] = F.sub(pi[k], F.mul(f, pr[k]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(DenseMatrix m, const PrimeField& F) { return rref(m, F).size(); }

std::vector<std::vector<Coeff>> kernel(const DenseMatrix& m, const PrimeField& F) {
  DenseMatrix a = m;
  auto pivots = rref(a, F);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Coeff>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Coeff> v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(a.at(r, f));
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;
  DenseMatrix k(basis.size(), m.cols());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) k.at(i, j) = basis[i][j];
  auto kp = rref(k, F);
  std::vector<std::vector<Coeff>> out(kp.size());
  for (std::size_t i = 0; i < kp.size(); ++i) out[i].assign(k.row(i), k.row(i) + m.cols());
  return out;
}

bool IncrementalEchelon::add(std::vector<Coeff> v) {
  if (v.size() != dim_) v.resize(dim_, 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Coeff f = v[pivots_[i]];
    if (!f) continue;
    const auto& row = rows_[i];
    for (std::size_t k = pivots_[i]; k < dim_; ++k)
      if (row[k]) v[k] = F_.sub(v[k], F_.mul(f, row[k]));
  }
  std::size_t piv = 0;
  while (piv < dim_ && v[piv] == 0) ++piv;
  if (piv == dim_) return false;
  Coeff inv = F_.inv(v[piv]);
  for (std::size_t k = piv; k < dim_; ++k) v[k] = F_.mul(v[k], inv);
  // Keep existing rows reduced at the new pivot so later reductions stay one-pass.
  for (auto& row : rows_) {
    Coeff f = row[piv];
    if (!f) continue;
    for (std::size_t k = piv; k < dim_; ++k)
      if (v[k]) row[k] = F_.sub(row[k], F_.mul(f, v[k]));
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

}  // namespace charp
