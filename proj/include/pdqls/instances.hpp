#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdqls/hamiltonian_sum.hpp"
#include "pdqls/hermitian.hpp"
#include "pdqls/state.hpp"
#include "pdqls/sumqls.hpp"

namespace pdqls::inst {

using pdqls::HermitianOperator;
using pdqls::Index;
using pdqls::Matrix;
using pdqls::Rng;
using pdqls::StateVector;
using pdqls::SumHamiltonianSpec;
using pdqls::Vector;

// Benchmark instance: either a dense matrix system or a Hamiltonian-sum spec,
// with a declared condition number bound and family observables that a direct
// solve must reproduce.
struct QlsInstance {
  std::string family;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;
  std::optional<HermitianOperator> matrix;
  std::optional<SumHamiltonianSpec> spec;
  StateVector b;                      // dense form (normalized)
  sumqls::SparseVector b_sparse;      // spec-based instances
  double kappa = 1.0;                 // declared bound, >= true kappa
  std::map<std::string, double> observables;
  std::vector<Index> marked;          // family-specific index data (Grover S)
  Vector reference_state;             // family-specific reference (FK output)
};

// Diagonal search instance: alpha = sqrt((N-M)/N) off S, beta = sqrt(M/N) on
// S; solving against the uniform vector puts half the probability mass on S.
QlsInstance grover_diagonal(Index n, Index m, const std::vector<Index>& s);
QlsInstance grover_diagonal(Index n, Index m, std::uint64_t seed);

// Majority-vote instance A = I - (1-eps) K' with the phase-reference vector;
// the overlap with the "+" state decides the majority bit f.
QlsInstance promise_majority_instance(Index n, Index m, int f, std::uint64_t seed);

// Random d-regular expander with a measured spectral-gap certificate;
// c0 defaults to 100 / gap. Overlap bands >= 0.92 (f = 0) and <= 0.06 (f = 1).
QlsInstance expander_instance(Index n, Index d, Index m, int f, std::uint64_t seed,
                              double c0_factor = 100.0);

struct Gate {
  Matrix u;                 // 2x2 or 4x4 unitary
  std::vector<int> qubits;  // targets
};

// Clock-register compilation of a circuit into a strictly-PD Hamiltonian sum
// A = M^dag M with M = I - U e^{-1/T}; b = M^dag e_1.
QlsInstance feynman_kitaev_sumqls(const std::vector<Gate>& circuit);

enum class BModel { porter_thomas, fixed_eigvec };

// Eigenvalues uniform on [1/kappa, 1] with the endpoints pinned, Haar basis.
QlsInstance random_pd_instance(Index n, double kappa, std::uint64_t seed,
                               BModel b_model = BModel::porter_thomas,
                               double fixed_lambda = 0.0);

// Diagonal realization of random_pd_instance: identical eigenvalue and
// Porter-Thomas coefficient draws, eigenbasis fixed to the computational
// basis. Unitarily equivalent to the dense family and cheap enough for
// N ~ 1024 sweeps (no dense eigensolve).
QlsInstance random_pd_diag_instance(Index n, double kappa, std::uint64_t seed);

// ||A^{-1} b|| from the same spectral model without building any matrix;
// equals random_pd_diag_instance's statistic for equal seeds.
double sample_solution_norm(Index n, double kappa, std::uint64_t seed);

// Random circuit over single-qubit rotations and CNOTs; keeps b 3-sparse in
// the clock compilation.
std::vector<Gate> random_circuit(int n_qubits, int t_gates, std::uint64_t seed);

// y in {0,1}^N with exactly (N+M)/2 entries equal to f, seeded.
std::vector<int> majority_vector(Index n, Index m, int f, std::uint64_t seed);

}  // namespace pdqls::inst
