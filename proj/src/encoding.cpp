#include "pdqls/encoding.hpp"

#include <cmath>
#include <sstream>

#include "pdqls/state.hpp"

namespace pdqls {

double trace_distance(const StateVector& psi, const StateVector& phi) {
  if (psi.dim() != phi.dim()) throw validation_error("trace_distance: dimension mismatch");
  if (!psi.is_normalized(1e-9) || !phi.is_normalized(1e-9))
    throw validation_error("trace_distance expects normalized states");
  // sqrt(1 - |<psi|phi>|^2) equals the norm of phi's component orthogonal to
  // psi; the latter form has no cancellation at overlap ~ 1.
  const Vector a = psi.amps / psi.norm;
  const Vector b = phi.amps / phi.norm;
  const Complex c = a.dot(b);
  return std::min(1.0, (b - c * a).norm());
}

void validate_encoding(const BlockEncoding& e, const Matrix* target, double tol) {
  const Index n = e.target_dim;
  if (n <= 0 || e.anc_dim < 1) throw validation_error("encoding has empty registers");
  if (e.unitary.rows() != e.anc_dim * n || e.unitary.cols() != e.unitary.rows())
    throw validation_error("encoding dimensions inconsistent with anc_dim * target_dim");
  if (e.alpha < 1.0 - 1e-12) throw validation_error("encoding normalization alpha must be >= 1");
  const double resid = unitarity_residual(e.unitary);
  if (resid > tol) {
    std::ostringstream os;
    os << "encoding unitary fails the unitarity check: residual " << resid;
    throw numerical_error(os.str());
  }
  if (target != nullptr) {
    const Matrix block = extract_block(e);
    Eigen::JacobiSVD<Matrix> svd(*target - block);
    const double err = svd.singularValues()(0);
    if (err > e.eps + tol) {
      std::ostringstream os;
      os << "encoded block misses its target: ||target - alpha*block|| = " << err
         << " > eps = " << e.eps;
      throw numerical_error(os.str());
    }
  }
}

BlockEncoding dilate_unitary(const HermitianOperator& m) {
  const Index n = m.dim();
  const double nrm = m.operator_norm();
  if (nrm > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "dilation requires ||M|| <= 1, got spectral radius " << nrm;
    throw validation_error(os.str());
  }
  // sqrt(I - M^2) computed spectrally; 1 - lambda^2 can undershoot zero by
  // rounding, hence the clamp.
  const Matrix s = m.apply_function(
      [](double lam) { return std::sqrt(std::clamp(1.0 - lam * lam, 0.0, 1.0)); });

  BlockEncoding e;
  e.anc_dim = 2;
  e.ancillas = 1;
  e.alpha = 1.0;
  e.eps = 0.0;
  e.target_dim = n;
  e.unitary = Matrix::Zero(2 * n, 2 * n);
  e.unitary.topLeftCorner(n, n) = m.entries();
  e.unitary.topRightCorner(n, n) = -s;
  e.unitary.bottomLeftCorner(n, n) = s;
  e.unitary.bottomRightCorner(n, n) = m.entries();
  return e;
}

Matrix extract_block(const BlockEncoding& e) {
  return e.alpha * e.unitary.topLeftCorner(e.target_dim, e.target_dim);
}

std::pair<StateVector, double> apply_postselected(const BlockEncoding& e, const StateVector& b,
                                                  QueryLedger& ledger) {
  if (b.dim() != e.target_dim) throw validation_error("apply_postselected: dimension mismatch");
  if (!b.is_normalized(1e-9)) throw validation_error("apply_postselected expects a normalized state");
  const Index n = e.target_dim;
  // (<0^a| ⊗ I) U (|0^a> ⊗ |b>): only the first block-column and block-row
  // of U participate.
  Vector kept = e.unitary.block(0, 0, n, n) * b.amps;
  const double p = kept.squaredNorm();
  for (const auto& [oracle, c] : e.cost) ledger.add(oracle, c);
  if (p < 1e-15)
    throw numerical_error("null post-selection: success probability below 1e-15");
  return {StateVector(Vector(kept / std::sqrt(p))), p};
}

Matrix complete_unitary(const Matrix& prescribed, Index total_dim) {
  const Index k = prescribed.cols();
  if (prescribed.rows() != total_dim || k > total_dim)
    throw validation_error("complete_unitary: bad prescribed block shape");
  const Matrix gram = prescribed.adjoint() * prescribed;
  if ((gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10)
    throw numerical_error("complete_unitary: prescribed columns are not orthonormal");
  Eigen::HouseholderQR<Matrix> qr(prescribed);
  const Matrix q = qr.householderQ();
  Matrix u(total_dim, total_dim);
  u.leftCols(k) = prescribed;              // kept exactly
  u.rightCols(total_dim - k) = q.rightCols(total_dim - k);
  return u;
}

double unitarity_residual(const Matrix& u, Index exact_cap) {
  const Index d = u.rows();
  if (d <= exact_cap) {
    return (u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  }
  // Deterministic column sample keeps large Gram encodings checkable without
  // a d^3 product.
  Rng rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(d));
  const Index samples = std::min<Index>(256, d);
  double worst = 0.0;
  for (Index s = 0; s < samples; ++s) {
    const Index j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(d)));
    Vector col = u.adjoint() * u.col(j);
    col(j) -= 1.0;
    worst = std::max(worst, col.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace pdqls
