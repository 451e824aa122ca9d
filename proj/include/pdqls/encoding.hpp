#pragma once

#include <map>
#include <string>
#include <utility>

#include "pdqls/hermitian.hpp"
#include "pdqls/ledger.hpp"
#include "pdqls/state.hpp"

namespace pdqls {

// Unitary on (ancilla register) x (target register) whose top-left block,
// times alpha, approximates a target matrix to eps in operator norm.
//
// Basis convention: row/column index = anc * target_dim + sys, so the encoded
// block is unitary.topLeftCorner(N, N). The ancilla register dimension is kept
// explicitly because the Gram construction lives naturally on a register of
// dimension 2(N+1), which is not a power of two; `ancillas` reports the qubit
// count a construction is contracted to use (>= ceil(log2 anc_dim)).
struct BlockEncoding {
  Matrix unitary;
  Index anc_dim = 1;
  int ancillas = 0;
  double alpha = 1.0;
  double eps = 0.0;
  Index target_dim = 0;
  std::map<std::string, long long> cost;  // oracle charges per application

  Index total_dim() const { return unitary.rows(); }
};

// Construction checks: dimensions consistent, unitarity within tol, and when
// a target is supplied, ||target - alpha * block|| <= eps (+ slack).
void validate_encoding(const BlockEncoding& e, const Matrix* target = nullptr,
                       double tol = kUnitaryTol);

// Exact one-ancilla encoding [[M, -S], [S, M]] with S = sqrt(I - M^2) taken
// spectrally; eigenvalues of I - M^2 are clamped to [0, 1] before the root.
BlockEncoding dilate_unitary(const HermitianOperator& m);

// alpha * (<0^a| ⊗ I) U (|0^a> ⊗ I)
Matrix extract_block(const BlockEncoding& e);

// Applies the encoding to |0^a>|b>, post-selects the |0^a> branch and returns
// the renormalized state together with the pre-normalization success
// probability. Charges the encoding's per-application cost to the ledger.
std::pair<StateVector, double> apply_postselected(const BlockEncoding& e,
                                                  const StateVector& b,
                                                  QueryLedger& ledger);

// Extends a set of orthonormal columns (placed at column indices 0..k-1) to a
// full unitary. Householder-based: prescribed columns are kept exactly, the
// completion comes from the full Q factor.
Matrix complete_unitary(const Matrix& prescribed_columns, Index total_dim);

// Max |(U^dag U - I)_ij|. Full product for small dims; above `exact_cap` a
// deterministic column sample is checked instead.
double unitarity_residual(const Matrix& u, Index exact_cap = 700);

}  // namespace pdqls
