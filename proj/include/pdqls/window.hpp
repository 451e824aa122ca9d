#pragma once

#include <vector>

#include "pdqls/chebyshev.hpp"

namespace pdqls::poly {

// Even polynomial close to 1 on [-1+2*delta, 1-2*delta] and close to 0 on
// [-1, -1+delta] U [1-delta, 1], bounded by 1 everywhere on [-1, 1].
// Built as a Chebyshev expansion of the product-of-Gaussian-CDFs plateau
// Phi((x+1-1.5d)/sigma) * Phi((-x+1-1.5d)/sigma).
struct WindowPolynomial {
  double eps;
  double delta;
  double sigma;
  int degree;                       // even
  std::vector<double> cheb_coeffs;  // odd entries exactly zero

  double eval(double x) const { return clenshaw_eval(cheb_coeffs, x); }
};

// Standard normal CDF through erfc, stable in the tails.
double normal_cdf(double x);

WindowPolynomial build_window(double eps, double delta, int degree_cap = 100000);

// Grid check of the three band constraints at the given resolution.
bool window_bands_hold(const WindowPolynomial& w, int grid_points = 10000,
                       double slack = 0.0);

}  // namespace pdqls::poly
