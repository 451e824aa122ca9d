#pragma once

#include <vector>

#include "pdqls/common.hpp"

namespace pdqls {

// Row-sparse access to a Hermitian matrix: position function (i, nu) -> j and
// value function (i, j) -> entry. Rows hold exactly d declared positions,
// padded with the row's own index (the self-position convention).
class SparseMatrixOracle {
 public:
  struct Triple {
    Index row;
    Index col;
    Complex value;
  };

  SparseMatrixOracle(Index dim, Index sparsity, const std::vector<Triple>& coo);

  Index dim() const { return dim_; }
  Index sparsity() const { return d_; }

  Index position(Index i, Index nu) const;  // nu in [0, d)
  Complex value(Index i, Index j) const;

  const std::vector<Index>& row_support(Index i) const { return support_[i]; }
  Matrix to_dense() const;

 private:
  Index dim_;
  Index d_;
  std::vector<std::vector<Index>> positions_;   // padded to d
  std::vector<std::vector<Index>> support_;     // declared, unpadded
  std::vector<std::vector<Complex>> values_;    // aligned with support_
};

SparseMatrixOracle oracle_from_dense(const Matrix& a, Index sparsity);

}  // namespace pdqls
