#pragma once

#include <vector>

#include "pdqls/common.hpp"

namespace pdqls {

// A = sum_j h_j acting on the sites S_j, each h_j PSD with ||h_j|| <= 2.
// Sites are qudits: site_dims lists the local dimension of every register
// factor (all 2 for plain qubit systems; the clock register of a compiled
// circuit has dimension 3T).
struct SumHamiltonianSpec {
  struct Term {
    Matrix h;                  // dim = product of site_dims over sites
    std::vector<int> sites;    // ordered, distinct
  };

  std::vector<Index> site_dims;
  std::vector<Term> terms;

  Index dim() const;                 // product of all site dims
  int num_sites() const { return static_cast<int>(site_dims.size()); }
  Index term_dim(int j) const { return terms[j].h.rows(); }
  int max_locality() const;          // max |S_j|
  Index max_term_dim() const;

  // Structural validation: Hermitian PSD terms within 1e-12, consistent site
  // lists. The ||h_j|| <= 2 bound is a requirement of the LCU dilation only
  // (the Cholesky pipeline accepts any strictly PD terms), so it is checked
  // separately.
  void validate() const;
  void validate_norm_bound() const;
  Matrix assemble() const;           // dense sum, desk scale
  Matrix embed_term(int j) const;    // h_j ⊗ I on the complement
};

SumHamiltonianSpec qubit_spec(int n_qubits, std::vector<SumHamiltonianSpec::Term> terms);

// Places an operator acting on `sites` (ordered) into the full register.
Matrix embed_operator(const Matrix& op, const std::vector<int>& sites,
                      const std::vector<Index>& site_dims);

}  // namespace pdqls
