#include "pdqls/chebyshev.hpp"

#include <cmath>

namespace pdqls::poly {

double clenshaw_eval(const std::vector<double>& coeffs, double x) {
  if (coeffs.empty()) return 0.0;
  if (x < -1.0 - 1e-9 || x > 1.0 + 1e-9)
    throw validation_error("clenshaw_eval expects x in [-1, 1]");
  x = std::clamp(x, -1.0, 1.0);
  double b1 = 0.0, b2 = 0.0;
  const double two_x = 2.0 * x;
  for (size_t k = coeffs.size() - 1; k >= 1; --k) {
    const double b0 = coeffs[k] + two_x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs[0] + x * b1 - b2;
}

double chebyshev_t(long long n, double x) {
  if (n < 0) n = -n;
  if (x >= -1.0 && x <= 1.0) return std::cos(static_cast<double>(n) * std::acos(x));
  if (x > 1.0) return std::cosh(static_cast<double>(n) * std::acosh(x));
  const double body = std::cosh(static_cast<double>(n) * std::acosh(-x));
  return (n % 2 == 0) ? body : -body;
}

std::vector<double> chebyshev_nodes(int m) {
  std::vector<double> x(m);
  for (int k = 0; k < m; ++k) x[k] = std::cos(M_PI * (k + 0.5) / m);
  return x;
}

std::vector<double> chebyshev_interpolate(const std::function<double(double)>& f, int m,
                                          int degree) {
  if (m < 1) throw validation_error("chebyshev_interpolate needs at least one node");
  if (degree < 0 || degree >= m) degree = m - 1;
  std::vector<double> fx(m);
  for (int k = 0; k < m; ++k) fx[k] = f(std::cos(M_PI * (k + 0.5) / m));
  std::vector<double> c(degree + 1, 0.0);
  for (int j = 0; j <= degree; ++j) {
    double acc = 0.0;
    for (int k = 0; k < m; ++k) acc += fx[k] * std::cos(j * M_PI * (k + 0.5) / m);
    c[j] = acc * 2.0 / m;
  }
  c[0] /= 2.0;
  return c;
}

double chebyshev_max_abs(const std::vector<double>& coeffs, int grid_points) {
  if (grid_points < 3) grid_points = 3;
  double best = 0.0, best_x = 0.0;
  const double h = 2.0 / (grid_points - 1);
  for (int i = 0; i < grid_points; ++i) {
    const double x = -1.0 + i * h;
    const double v = std::abs(clenshaw_eval(coeffs, x));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  // Golden-section pass over the bracketing interval around the grid argmax.
  double lo = std::max(-1.0, best_x - h);
  double hi = std::min(1.0, best_x + h);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = std::abs(clenshaw_eval(coeffs, c));
  double fd = std::abs(clenshaw_eval(coeffs, d));
  for (int it = 0; it < 90 && hi - lo > 1e-15; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = std::abs(clenshaw_eval(coeffs, c));
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = std::abs(clenshaw_eval(coeffs, d));
    }
  }
  return std::max({best, fc, fd});
}

}  // namespace pdqls::poly
