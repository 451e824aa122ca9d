#pragma once

#include <vector>

#include "pdqls/common.hpp"

namespace pdqls::poly {

// Value of sum_k c_k T_k(x) by the backward (Clenshaw) recurrence, x in [-1,1].
double clenshaw_eval(const std::vector<double>& coeffs, double x);

// T_n(x) for arbitrary real x: cosine form inside [-1,1], hyperbolic-cosine
// closed form outside.
double chebyshev_t(long long n, double x);

// Chebyshev-Gauss nodes cos(pi (k+1/2)/m), k = 0..m-1; all interior.
std::vector<double> chebyshev_nodes(int m);

// Chebyshev-T coefficients of the interpolant of f through m nodes; exact for
// polynomials of degree < m. `degree` truncates the returned series
// (defaults to m-1).
std::vector<double> chebyshev_interpolate(const std::function<double(double)>& f, int m,
                                          int degree = -1);

// Max of |series(x)| over a dense grid plus golden-section refinement around
// the best bracket. Grid size picked by the caller.
double chebyshev_max_abs(const std::vector<double>& coeffs, int grid_points);

}  // namespace pdqls::poly
