#include "pdqls/hermitian.hpp"

#include <sstream>

namespace pdqls {

namespace {

void check_hermitian(const Matrix& m) {
  const double fnorm = m.norm();
  const Matrix asym = m - m.adjoint();
  double worst = asym.cwiseAbs().maxCoeff();
  if (asym.norm() > kHermTol * std::max(fnorm, 1.0)) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max asymmetry magnitude " << worst;
    throw validation_error(os.str());
  }
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix entries, double kappa_bound, double eta)
    : mat_(std::move(entries)), kappa_bound_(kappa_bound), eta_(eta) {
  if (mat_.rows() != mat_.cols()) throw validation_error("operator must be square");
  if (mat_.rows() < 1 || mat_.rows() > kMaxDim)
    throw validation_error("operator dimension outside the supported dense range");
  check_hermitian(mat_);
  // Hermitize exactly so downstream spectral calls see a symmetric input.
  mat_ = ((mat_ + mat_.adjoint()) / 2.0).eval();
}

HermitianOperator HermitianOperator::from_spectrum(RealVector values, Matrix vectors,
                                                   double kappa_bound, double eta) {
  const Index n = values.size();
  if (vectors.rows() != n || vectors.cols() != n)
    throw validation_error("from_spectrum: eigenvector block must be n x n");
  for (Index i = 1; i < n; ++i)
    if (values(i) < values(i - 1)) throw validation_error("from_spectrum: values must ascend");
  Matrix m = vectors * values.asDiagonal() * vectors.adjoint();
  HermitianOperator out(std::move(m), kappa_bound, eta);
  out.spec_ = Eigensystem{std::move(values), std::move(vectors)};
  return out;
}

const Eigensystem& HermitianOperator::spectrum() const {
  if (!spec_) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(mat_);
    if (es.info() != Eigen::Success) throw numerical_error("eigendecomposition failed");
    spec_ = Eigensystem{es.eigenvalues(), es.eigenvectors()};
  }
  return *spec_;
}

double HermitianOperator::operator_norm() const {
  const auto& ev = spectrum().values;
  return std::max(std::abs(ev(0)), std::abs(ev(dim() - 1)));
}

double HermitianOperator::condition_number() const {
  const auto& ev = spectrum().values;
  double smin = ev.cwiseAbs().minCoeff();
  if (smin == 0.0) throw numerical_error("condition number of a singular operator");
  return operator_norm() / smin;
}

bool HermitianOperator::is_positive_definite(double tol) const {
  return min_eigenvalue() > tol;
}

void HermitianOperator::check_b_spectrum(double eta, double kappa, double tol) const {
  const double lo = min_eigenvalue();
  const double hi = max_eigenvalue();
  if (lo < -1.0 - tol || hi > 1.0 - eta / kappa + tol) {
    std::ostringstream os;
    os << "B-operator spectrum [" << lo << ", " << hi << "] escapes [-1, 1 - eta/kappa = "
       << 1.0 - eta / kappa << "]";
    throw validation_error(os.str());
  }
}

Matrix HermitianOperator::apply_function(const std::function<double(double)>& f) const {
  const auto& es = spectrum();
  RealVector fv(dim());
  for (Index i = 0; i < dim(); ++i) fv(i) = f(es.values(i));
  return es.vectors * fv.asDiagonal() * es.vectors.adjoint();
}

Vector HermitianOperator::solve(const Vector& rhs) const {
  const auto& es = spectrum();
  Vector coeffs = es.vectors.adjoint() * rhs;
  for (Index i = 0; i < dim(); ++i) {
    if (es.values(i) == 0.0) throw numerical_error("solve on a singular operator");
    coeffs(i) /= es.values(i);
  }
  return es.vectors * coeffs;
}

Matrix HermitianOperator::inverse() const {
  return apply_function([](double x) { return 1.0 / x; });
}

const Eigensystem& eigendecompose(const HermitianOperator& h) { return h.spectrum(); }

Matrix reconstruct(const Eigensystem& es) {
  return es.vectors * es.values.asDiagonal() * es.vectors.adjoint();
}

}  // namespace pdqls
