#pragma once

#include <optional>

#include "pdqls/common.hpp"

namespace pdqls {

struct Eigensystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns, orthonormal
};

// Dense Hermitian operator with a lazily cached spectral decomposition.
// kappa_bound is the promised upper bound on the condition number; eta the
// rescaling constant used when the operator appears inside B = I - eta*A.
class HermitianOperator {
 public:
  HermitianOperator(Matrix entries, double kappa_bound = 0.0, double eta = 1.0);

  // Builds V diag(values) V^dag with the decomposition cached up front; used
  // by generators that know the spectrum by construction, so large sweep
  // instances skip the dense eigensolve.
  static HermitianOperator from_spectrum(RealVector values, Matrix vectors,
                                         double kappa_bound = 0.0, double eta = 1.0);

  Index dim() const { return mat_.rows(); }
  const Matrix& entries() const { return mat_; }
  double kappa_bound() const { return kappa_bound_; }
  double eta() const { return eta_; }
  void set_kappa_bound(double k) { kappa_bound_ = k; }
  void set_eta(double e) { eta_ = e; }

  const Eigensystem& spectrum() const;

  double min_eigenvalue() const { return spectrum().values(0); }
  double max_eigenvalue() const { return spectrum().values(dim() - 1); }
  double operator_norm() const;   // largest singular value, from the spectrum
  double condition_number() const;

  bool is_positive_definite(double tol = 0.0) const;
  // Spectrum of a B-operator must sit in [-1, 1 - eta/kappa].
  void check_b_spectrum(double eta, double kappa, double tol = 1e-9) const;

  // f applied to the eigenvalues, V f(D) V^dag.
  Matrix apply_function(const std::function<double(double)>& f) const;
  Vector solve(const Vector& rhs) const;  // A^{-1} rhs, spectral
  Matrix inverse() const;

 private:
  Matrix mat_;
  double kappa_bound_;
  double eta_;
  mutable std::optional<Eigensystem> spec_;
};

// Rejects non-Hermitian input, reporting the worst asymmetry magnitude.
const Eigensystem& eigendecompose(const HermitianOperator& h);

Matrix reconstruct(const Eigensystem& es);

}  // namespace pdqls
