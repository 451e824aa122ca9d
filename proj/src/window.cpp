#include "pdqls/window.hpp"

#include <cmath>
#include <sstream>

namespace pdqls::poly {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

// Largest sigma with Phi(-0.5*delta/sigma) <= eps/4, i.e. sigma = 0.5*delta/z
// where Phi(-z) = eps/4; z found by bisection.
double solve_sigma(double eps, double delta) {
  const double target = eps / 4.0;
  double lo = 0.0, hi = 50.0;  // Phi(-50) is far below any admissible eps/4
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(-mid) > target ? lo : hi) = mid;
  }
  return 0.5 * delta / hi;
}

bool bands_hold_impl(const std::vector<double>& coeffs, double eps, double delta,
                     int grid_points, double slack) {
  for (int i = 0; i < grid_points; ++i) {
    const double x = -1.0 + 2.0 * i / (grid_points - 1);
    const double v = clenshaw_eval(coeffs, x);
    if (std::abs(v) > 1.0 + slack) return false;
    const double a = std::abs(x);
    if (a <= 1.0 - 2.0 * delta && (v < 1.0 - eps - slack || v > 1.0 + slack)) return false;
    if (a >= 1.0 - delta && std::abs(v) > eps + slack) return false;
  }
  return true;
}

}  // namespace

WindowPolynomial build_window(double eps, double delta, int degree_cap) {
  if (eps <= 0.0 || eps > 0.5 || delta <= 0.0 || delta > 0.5)
    throw validation_error("build_window needs eps, delta in (0, 1/2]");
  WindowPolynomial w;
  w.eps = eps;
  w.delta = delta;
  w.sigma = solve_sigma(eps, delta);

  auto plateau = [&](double x) {
    return normal_cdf((x + 1.0 - 1.5 * delta) / w.sigma) *
           normal_cdf((-x + 1.0 - 1.5 * delta) / w.sigma);
  };

  auto attempt = [&](int degree) -> std::vector<double> {
    std::vector<double> c = chebyshev_interpolate(plateau, 2 * (degree + 1), degree);
    for (size_t k = 1; k < c.size(); k += 2) c[k] = 0.0;  // even parity, exactly
    // Renormalize by the grid maximum so |W| <= 1 holds on the check grid.
    const double mx = chebyshev_max_abs(c, 20000);
    if (mx > 0.0)
      for (double& v : c) v /= mx;
    if (!bands_hold_impl(c, eps, delta, 10000, 0.0)) c.clear();
    return c;
  };

  int degree = std::max(4, static_cast<int>(std::ceil(1.0 / std::sqrt(w.sigma))));
  if (degree % 2 != 0) ++degree;

  std::vector<double> found;
  while (degree <= degree_cap) {
    found = attempt(degree);
    if (!found.empty()) break;
    degree *= 2;
  }
  if (found.empty()) {
    std::ostringstream os;
    os << "window construction failed: bands unmet at degree cap " << degree_cap
       << " (eps=" << eps << ", delta=" << delta << ", sigma=" << w.sigma << ")";
    throw numerical_error(os.str());
  }
  // Doubling overshoots by up to 2x; bisect down to the least passing even
  // degree so stage budgets track the actual requirement.
  int lo = degree / 2, hi = degree;
  while (hi - lo > 2) {
    int mid = lo + (hi - lo) / 2;
    if (mid % 2 != 0) ++mid;
    if (mid >= hi) break;
    std::vector<double> c = attempt(mid);
    if (c.empty()) {
      lo = mid;
    } else {
      hi = mid;
      found = std::move(c);
    }
  }
  w.degree = hi;
  w.cheb_coeffs = std::move(found);
  return w;
}

bool window_bands_hold(const WindowPolynomial& w, int grid_points, double slack) {
  return bands_hold_impl(w.cheb_coeffs, w.eps, w.delta, grid_points, slack);
}

}  // namespace pdqls::poly
