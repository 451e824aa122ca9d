#include "pdqls/approximant.hpp"

#include <cmath>
#include <sstream>

namespace pdqls::poly {

ShiftedChebyshev::ShiftedChebyshev(int ell_, double kappa_) : ell(ell_), kappa(kappa_) {
  if (ell < 1) throw validation_error("shifted Chebyshev needs ell >= 1");
  if (kappa <= 1.0) throw validation_error("shifted Chebyshev needs kappa > 1");
  delta = 1.0 / (kappa - 0.5);
}

double ShiftedChebyshev::y_of_x(double x) const {
  const double half = 1.0 / (2.0 * kappa);
  return (x + half) / (1.0 - half);
}

double ShiftedChebyshev::operator()(double x) const {
  if (x < -1.0 - 1e-12 || x > 1.0 + delta)
    throw validation_error("shifted Chebyshev evaluated outside [-1, 1 + delta]");
  const double y = y_of_x(x);
  const double denom = chebyshev_t(ell, 1.0 + delta);
  if (y >= -1.0 && y <= 1.0) {
    // Three-term recurrence; |y| <= 1 keeps it stable.
    double t0 = 1.0, t1 = y;
    if (ell == 0) return t0 / denom;
    for (int k = 2; k <= ell; ++k) {
      const double t2 = 2.0 * y * t1 - t0;
      t0 = t1;
      t1 = t2;
    }
    return t1 / denom;
  }
  return chebyshev_t(ell, y) / denom;
}

double shifted_cheb_eval(const ShiftedChebyshev& c, double x) { return c(x); }

InverseApproximant build_inverse_approximant(int ell, double kappa) {
  if (kappa <= 1.0) throw validation_error("build_inverse_approximant needs kappa > 1");
  if (ell < 1) throw validation_error("build_inverse_approximant needs ell >= 1");
  const ShiftedChebyshev that(ell, kappa);
  // (1 - That)^2 has a double root at x = 1, so f is a polynomial of degree
  // exactly 2*ell - 1; interpolation through 2*ell interior nodes is exact.
  auto f = [&](double x) {
    const double r = 1.0 - that(x);
    return r * r / (1.0 - x);
  };
  InverseApproximant p;
  p.ell = ell;
  p.kappa = kappa;
  p.cheb_coeffs = chebyshev_interpolate(f, 2 * ell);
  // Force the x = 1 root exactly: P(1) = sum of coefficients.
  double at_one = 0.0;
  for (double c : p.cheb_coeffs) at_one += c;
  p.cheb_coeffs[0] -= at_one;
  p.K = 2.0 * chebyshev_max_abs(p.cheb_coeffs, 50 * p.degree());
  return p;
}

std::vector<double> InverseApproximant::normalized_coeffs() const {
  std::vector<double> c = cheb_coeffs;
  for (double& v : c) v /= K;
  return c;
}

double approx_error_sup(const InverseApproximant& p, int grid_points) {
  const double hi = 1.0 - 1.0 / p.kappa;
  double worst = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = -1.0 + (hi + 1.0) * i / (grid_points - 1);
    const double err = std::abs(p.eval(x) - 1.0 / (1.0 - x));
    worst = std::max(worst, err);
  }
  return worst;
}

namespace {

template <typename Pred>
int least_ell_satisfying(Pred&& ok, int ell_cap) {
  int hi = 1;
  while (hi < ell_cap && !ok(hi)) hi *= 2;
  if (hi >= ell_cap && !ok(hi)) {
    std::ostringstream os;
    os << "no degree below the cap " << ell_cap << " meets the target";
    throw numerical_error(os.str());
  }
  int lo = hi / 2;  // ok(hi) holds, ok(lo) failed (or lo == 0)
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

int least_ell_absolute(double kappa, double eps, int ell_cap) {
  return least_ell_satisfying(
      [&](int ell) { return approx_error_sup(build_inverse_approximant(ell, kappa)) <= eps; },
      ell_cap);
}

int least_ell_certified(double kappa, double eps, int ell_cap) {
  return least_ell_satisfying(
      [&](int ell) {
        const InverseApproximant p = build_inverse_approximant(ell, kappa);
        return approx_error_sup(p) <= eps * p.K;
      },
      ell_cap);
}

}  // namespace pdqls::poly
