#include "pdqls/common.hpp"

#include <cmath>
#include <vector>

namespace pdqls {

Matrix haar_unitary(Index dim, Rng& rng) {
  Matrix g = random_gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    const double a = std::abs(d);
    q.col(i) *= (a == 0.0 ? Complex(1.0) : d / a);
  }
  return q;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw validation_error("loglog_slope needs two same-length samples");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log2(x[i]);
    const double ly = std::log2(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace pdqls
