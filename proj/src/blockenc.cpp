#include "pdqls/blockenc.hpp"

#include <cmath>
#include <sstream>

namespace pdqls::enc {

namespace {

// Residual weights r_i = A_ii - sum_{l != i} |A_il|; guaranteed nonnegative
// for diagonally dominant A, clamped when rounding undershoots.
std::vector<double> residual_weights(const SparseMatrixOracle& a, bool assert_dd) {
  const Index n = a.dim();
  std::vector<double> r(n);
  Index worst_row = -1;
  double worst_margin = 0.0;
  for (Index i = 0; i < n; ++i) {
    const Complex diag = a.value(i, i);
    if (std::abs(diag.imag()) > 1e-12)
      throw validation_error("diagonal entries must be real");
    double off = 0.0;
    for (Index j : a.row_support(i))
      if (j != i) off += std::abs(a.value(i, j));
    const double margin = diag.real() - off;
    if (margin < worst_margin || worst_row < 0) {
      worst_margin = margin;
      worst_row = i;
    }
    if (diag.real() > 1.0 + 1e-12) {
      std::ostringstream os;
      os << "row " << i << ": diagonal " << diag.real() << " exceeds 1";
      throw validation_error(os.str());
    }
    r[i] = margin;
  }
  if (assert_dd && worst_margin < -1e-12) {
    std::ostringstream os;
    os << "matrix is not diagonally dominant: row " << worst_row << " has margin "
       << worst_margin;
    throw validation_error(os.str());
  }
  for (double& v : r) v = std::max(v, 0.0);
  return r;
}

}  // namespace

GramEncoding gram_encoding(const SparseMatrixOracle& a, bool assert_diag_dominant) {
  const Index n = a.dim();
  const std::vector<double> r = residual_weights(a, assert_diag_dominant);

  // psi_i on dimension N+1; phi_j[k] = conj-symmetric twin, which by
  // Hermiticity equals psi_k[j], so one table serves both families.
  Matrix psi = Matrix::Zero(n + 1, n);  // column i = psi_i
  for (Index i = 0; i < n; ++i) {
    for (Index l : a.row_support(i)) {
      const Complex delta = (l == i) ? Complex(1.0) : Complex(0.0);
      psi(l, i) = std::sqrt(delta - a.value(i, l));
    }
    psi(n, i) = std::sqrt(r[i]);
  }

  // Register layout: ancilla = (r1, q) with r1 of dimension N+1 and q a
  // qubit, system of dimension N; flat index = ((r1*2 + q) * N + s).
  // Psi_i sits at (r1=i, q=0, s=*) plus its residual at (r1=i, q=1, s=0);
  // Phi_j at (r1=*, q=0, s=j). The q-qubit keeps the two residual slots from
  // colliding, which is what the (N+1)-dimensional second register does in
  // the two-register form of the construction.
  const Index anc_dim = 2 * (n + 1);
  const Index total = anc_dim * n;
  auto flat = [&](Index r1, Index q, Index s) { return (r1 * 2 + q) * n + s; };

  Matrix left_cols = Matrix::Zero(total, n);
  Matrix right_cols = Matrix::Zero(total, n);
  for (Index i = 0; i < n; ++i) {
    for (Index m = 0; m < n; ++m) left_cols(flat(i, 0, m), i) = std::conj(psi(m, i));
    left_cols(flat(i, 1, 0), i) = std::conj(psi(n, i));
  }
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) right_cols(flat(k, 0, j), j) = psi(j, k);
    right_cols(flat(n, 0, j), j) = psi(n, j);
  }

  GramEncoding out;
  out.u_left = complete_unitary(left_cols, total);
  out.u_right = complete_unitary(right_cols, total);
  out.queries_per_column = 4 * a.sparsity() + 1;

  BlockEncoding& e = out.encoding;
  e.unitary = out.u_left.adjoint() * out.u_right;
  e.anc_dim = anc_dim;
  e.ancillas = static_cast<int>(std::ceil(std::log2(static_cast<double>(anc_dim))));
  e.alpha = 1.0;
  e.eps = 0.0;
  e.target_dim = n;
  e.cost["P_A"] = 2 * out.queries_per_column;  // U_L and U_R each
  return out;
}

LcuEncoding lcu_encoding(const SumHamiltonianSpec& spec) {
  spec.validate();
  spec.validate_norm_bound();
  const Index n = spec.dim();
  const Index J = static_cast<Index>(spec.terms.size());
  Index ctrl_dim = 1;
  int ctrl_qubits = 0;
  while (ctrl_dim < J) {
    ctrl_dim *= 2;
    ++ctrl_qubits;
  }

  // Shared one-qubit dilation ancilla: U_j = u_j ⊗ I on (q, system).
  const Index sys2 = 2 * n;
  Matrix u_select = Matrix::Zero(ctrl_dim * sys2, ctrl_dim * sys2);
  for (Index j = 0; j < ctrl_dim; ++j) {
    Matrix uj;
    if (j < J) {
      const auto& term = spec.terms[j];
      const Matrix w = Matrix::Identity(term.h.rows(), term.h.cols()) - term.h;
      HermitianOperator wop(w);
      const BlockEncoding dil = dilate_unitary(wop);
      // dil.unitary acts on (q, S_j); embed the system part across the rest.
      const Index td = term.h.rows();
      Matrix embedded = Matrix::Zero(sys2, sys2);
      for (Index qa = 0; qa < 2; ++qa)
        for (Index qb = 0; qb < 2; ++qb) {
          const Matrix blk =
              embed_operator(dil.unitary.block(qa * td, qb * td, td, td), term.sites,
                             spec.site_dims);
          embedded.block(qa * n, qb * n, n, n) = blk;
        }
      uj = std::move(embedded);
    } else {
      uj = Matrix::Identity(sys2, sys2);  // padding branch, never populated
    }
    u_select.block(j * sys2, j * sys2, sys2, sys2) = uj;
  }

  // Had |0> = sum_{j<J} J^{-1/2} |j>, completed orthonormally.
  Matrix had_col = Matrix::Zero(ctrl_dim, 1);
  for (Index j = 0; j < J; ++j) had_col(j, 0) = 1.0 / std::sqrt(static_cast<double>(J));
  const Matrix had = complete_unitary(had_col, ctrl_dim);

  // (Had^dag ⊗ I) Select (Had ⊗ I): Select is block diagonal, so block (a,b)
  // of the product is sum_j conj(had(j,a)) had(j,b) U_j.
  LcuEncoding out;
  BlockEncoding& e = out.encoding;
  e.unitary = Matrix::Zero(ctrl_dim * sys2, ctrl_dim * sys2);
  for (Index a = 0; a < ctrl_dim; ++a)
    for (Index b = 0; b < ctrl_dim; ++b) {
      Matrix blk = Matrix::Zero(sys2, sys2);
      for (Index j = 0; j < ctrl_dim; ++j) {
        const Complex w = std::conj(had(j, a)) * had(j, b);
        if (w != Complex(0.0, 0.0))
          blk += w * u_select.block(j * sys2, j * sys2, sys2, sys2);
      }
      e.unitary.block(a * sys2, b * sys2, sys2, sys2) = blk;
    }
  e.anc_dim = ctrl_dim * 2;
  e.ancillas = ctrl_qubits + 1;
  e.alpha = 1.0;
  e.eps = 0.0;
  e.target_dim = n;
  e.cost["U_select"] = 1;
  // Select-circuit derivation: each u_j takes O(dim(h_j)^2) elementary gates,
  // summed over terms. For qubit sites this is the J * 2^{2s} figure.
  const auto td = static_cast<long long>(spec.max_term_dim());
  out.gate_cost_model = J * td * td;
  return out;
}

}  // namespace pdqls::enc
