#include "pdqls/sparse_oracle.hpp"

#include <algorithm>
#include <sstream>

namespace pdqls {

SparseMatrixOracle::SparseMatrixOracle(Index dim, Index sparsity,
                                       const std::vector<Triple>& coo)
    : dim_(dim), d_(sparsity), positions_(dim), support_(dim), values_(dim) {
  if (dim < 1 || sparsity < 1) throw validation_error("oracle needs dim >= 1 and d >= 1");
  for (const auto& t : coo) {
    if (t.row < 0 || t.row >= dim || t.col < 0 || t.col >= dim)
      throw validation_error("COO entry out of range");
    support_[t.row].push_back(t.col);
    values_[t.row].push_back(t.value);
  }
  for (Index i = 0; i < dim; ++i) {
    if (static_cast<Index>(support_[i].size()) > d_) {
      std::ostringstream os;
      os << "row " << i << " declares " << support_[i].size() << " entries, sparsity is " << d_;
      throw validation_error(os.str());
    }
    positions_[i] = support_[i];
    while (static_cast<Index>(positions_[i].size()) < d_) positions_[i].push_back(i);
  }
  // Hermitian pairing: every declared (i, j) must match conj at (j, i).
  for (Index i = 0; i < dim; ++i) {
    for (size_t k = 0; k < support_[i].size(); ++k) {
      const Index j = support_[i][k];
      if (std::abs(values_[i][k] - std::conj(value(j, i))) > 1e-12)
        throw validation_error("COO entries are not Hermitian-symmetric");
    }
  }
}

Index SparseMatrixOracle::position(Index i, Index nu) const { return positions_[i][nu]; }

Complex SparseMatrixOracle::value(Index i, Index j) const {
  const auto& sup = support_[i];
  for (size_t k = 0; k < sup.size(); ++k)
    if (sup[k] == j) return values_[i][k];
  return Complex(0.0, 0.0);
}

Matrix SparseMatrixOracle::to_dense() const {
  Matrix a = Matrix::Zero(dim_, dim_);
  for (Index i = 0; i < dim_; ++i)
    for (size_t k = 0; k < support_[i].size(); ++k) a(i, support_[i][k]) = values_[i][k];
  return a;
}

SparseMatrixOracle oracle_from_dense(const Matrix& a, Index sparsity) {
  std::vector<SparseMatrixOracle::Triple> coo;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != Complex(0.0, 0.0)) coo.push_back({i, j, a(i, j)});
  return SparseMatrixOracle(a.rows(), sparsity, coo);
}

}  // namespace pdqls
