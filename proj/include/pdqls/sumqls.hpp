#pragma once

#include <map>
#include <vector>

#include "pdqls/hamiltonian_sum.hpp"
#include "pdqls/state.hpp"

namespace pdqls::sumqls {

using pdqls::Complex;
using pdqls::Index;
using pdqls::Matrix;
using pdqls::StateVector;
using pdqls::SumHamiltonianSpec;
using pdqls::Vector;

// Sparse vector in the computational basis.
struct SparseVector {
  Index dim = 0;
  std::vector<Index> positions;
  std::vector<Complex> values;

  Vector to_dense() const;
  double norm() const;
};

SparseVector sparsify(const Vector& v, double tol = 0.0);

struct CholeskyBlocks {
  std::vector<Matrix> l;      // lower triangular, positive diagonal
  std::vector<Matrix> l_inv;  // by back-substitution
};

// Rejects any term that is not strictly PD, naming the index and lambda_min.
CholeskyBlocks cholesky_blocks(const SumHamiltonianSpec& spec);

// Products of the classical preconditioning step: the implicit rectangular
// factor L = (L_1 | ... | L_J) with L L^dag = A, the generalized right
// pseudo-inverse L^g = (1/J) stack(L_j^{-1}), the preconditioned state
// b' ∝ stack(L_j^{-1} b), and the kappa bound sum(lmax)/sum(lmin).
struct FactorizationArtifacts {
  SumHamiltonianSpec spec;
  CholeskyBlocks blocks;
  SparseVector b;        // normalized input vector
  SparseVector b_prime;  // normalized, dimension J*N
  Index d_b_prime = 0;
  double gamma = 0.0;       // certified: 0.99 * ||Pi_L b'||^2
  double gamma_formula = 0.0;  // J^2 <b|A^{-1}|b> / sum_j <b|H_j^{-1}|b>
  double kappa_a = 0.0;     // sum lmax(h_j) / sum lmin(h_j)
  std::vector<double> term_quadratic;  // <b|H_j^{-1}|b> per term

  Index n_dim() const { return spec.dim(); }
  Index j_terms() const { return static_cast<Index>(spec.terms.size()); }
  Matrix assemble_l() const;       // N x JN
  Matrix assemble_l_g() const;     // JN x N
};

FactorizationArtifacts build_factorization(const SumHamiltonianSpec& spec,
                                           const SparseVector& b);

struct GammaDiagnostics {
  double formula_value = 0.0;    // ||Pi_L b'||^2 via the H_j^{-1} quotient
  double projector_value = 0.0;  // direct ||L^dag A^{-1} L b'||^2
  double certified = 0.0;        // 0.99 * formula_value
};

GammaDiagnostics gamma_overlap(const FactorizationArtifacts& art);

struct PseudoSolveCost {
  double q_ul = 0.0;   // (alpha/sqrt(gamma)) ktilde log^3(ktilde) log^2(1/eps)
  double q_uv = 0.0;   // (1/sqrt(gamma)) ktilde log(ktilde)
  double alpha = 0.0;  // J 2^s
  double kappa_tilde = 0.0;  // sqrt(kappa_a)
};

// Contract-level inner solver: exact Moore-Penrose pseudo-inversion of the
// Hermitian extension [[0, L^dag], [L, 0]] applied to (b', 0), with the
// solver's query-cost formulas evaluated for the report.
std::pair<StateVector, PseudoSolveCost> pseudo_solve(const FactorizationArtifacts& art,
                                                     double eps);

struct SumQlsReport {
  double gamma = 0.0;
  double gamma_formula = 0.0;
  double kappa_a = 0.0;
  Index d_b_prime = 0;
  PseudoSolveCost cost;
  double gate_estimate = 0.0;  // preprocessing-aware total gate model
  double trace_error = 0.0;    // against the dense direct solve
  Index dim = 0;
  Index j_terms = 0;
};

std::pair<StateVector, SumQlsReport> sumqls_solve(const SumHamiltonianSpec& spec,
                                                  const SparseVector& b, double eps);

}  // namespace pdqls::sumqls
