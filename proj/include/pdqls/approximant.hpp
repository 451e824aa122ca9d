#pragma once

#include <vector>

#include "pdqls/chebyshev.hpp"

namespace pdqls::poly {

// T_ell((x + 1/(2k)) / (1 - 1/(2k))) / T_ell(1 + delta), the minimax residual
// polynomial on [-1, 1 - 1/kappa]; equals 1 at x = 1.
struct ShiftedChebyshev {
  int ell;
  double kappa;
  double delta;  // 1 / (kappa - 1/2)

  ShiftedChebyshev(int ell_, double kappa_);
  double operator()(double x) const;
  double y_of_x(double x) const;
};

double shifted_cheb_eval(const ShiftedChebyshev& c, double x);

// Degree 2*ell - 1 approximation of 1/(1-x) on [-1, 1 - 1/kappa]:
// P(x) = (1 - That(x))^2 / (1 - x), held as unnormalized Chebyshev-T
// coefficients together with K = 2 max_{[-1,1]} |P|.
struct InverseApproximant {
  int ell;
  double kappa;
  std::vector<double> cheb_coeffs;  // length 2*ell
  double K;

  int degree() const { return 2 * ell - 1; }
  double eval(double x) const { return clenshaw_eval(cheb_coeffs, x); }
  double eval_normalized(double x) const { return eval(x) / K; }
  std::vector<double> normalized_coeffs() const;
};

InverseApproximant build_inverse_approximant(int ell, double kappa);

// sup |P(x) - 1/(1-x)| over a 10^4-point grid of [-1, 1 - 1/kappa].
double approx_error_sup(const InverseApproximant& p, int grid_points = 10000);

// Least ell with approx_error_sup <= eps (absolute target).
int least_ell_absolute(double kappa, double eps, int ell_cap = 1 << 16);

// Least ell whose grid certificate reaches eps * K(ell); this is the degree
// selection the inverse encoding uses, matching the (K, b+2, eps) contract.
int least_ell_certified(double kappa, double eps, int ell_cap = 1 << 16);

}  // namespace pdqls::poly
