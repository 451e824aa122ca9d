#pragma once

#include "pdqls/encoding.hpp"
#include "pdqls/hamiltonian_sum.hpp"
#include "pdqls/sparse_oracle.hpp"

namespace pdqls::enc {

using pdqls::BlockEncoding;

// Normalized (alpha = 1, eps = 0) encoding of B = I - A for Hermitian
// diagonally dominant A given through a sparse oracle. Builds the state pairs
//   psi_i = sum_l sqrt(delta_il - A_il) |l> + sqrt(r_i) |N+1>
//   phi_j = sum_k sqrt(delta_jk - conj(A_jk)) |k> + sqrt(r_j) |N+1>
// and returns U_L^dag U_R with U_L, U_R completed to unitaries from their
// prescribed action on the |0^a>|i> subspace. Also reports the sparse-oracle
// cost model: 4d+1 calls to P_A per column preparation.
struct GramEncoding {
  BlockEncoding encoding;
  Matrix u_left;
  Matrix u_right;
  long long queries_per_column;  // 4d + 1
};

GramEncoding gram_encoding(const SparseMatrixOracle& a, bool assert_diag_dominant = true);

// Normalized (alpha = 1, eps = 0) encoding of B = I - A/J for A given as a
// sum of PSD local terms: one-ancilla dilations u_j of w_j = I - h_j, the
// select unitary sum_j |j><j| ⊗ U_j, and a prepare unitary with
// Had|0> = sum_{j<J} J^{-1/2} |j> on a ceil(log2 J)-qubit control register.
struct LcuEncoding {
  BlockEncoding encoding;
  long long gate_cost_model;  // J * 2^{2s}, from the select-circuit derivation
};

LcuEncoding lcu_encoding(const SumHamiltonianSpec& spec);

}  // namespace pdqls::enc
