#pragma once

#include "pdqls/approximant.hpp"
#include "pdqls/encoding.hpp"

namespace pdqls::enc {

using pdqls::BlockEncoding;
using pdqls::QueryLedger;

// Matrix-level realization of the signal-processing contract: given a
// normalized encoding of Hermitian B and a real Chebyshev-basis polynomial p
// with |p| <= 1/2 on [-1,1] (or <= 1 with definite parity), returns a
// (1, b+2, 4*deg*sqrt(eps_B))-encoding of p(B), computed spectrally and
// dilated. Charges deg accesses to the input encoding's oracles.
BlockEncoding qsp_apply(const BlockEncoding& e_b, const std::vector<double>& poly_coeffs,
                        QueryLedger& ledger);

struct InverseEncoding {
  BlockEncoding encoding;     // encodes A^{-1} with normalization eta * K
  poly::InverseApproximant approximant;
  double kappa_eff;           // kappa / eta (floored near 1)
  double certified_sup_error; // grid certificate of |P - 1/(1-x)| on D_B
};

// Builds the least-degree certified inverse approximant for spectrum promise
// D_B = [-1, 1 - eta/kappa] and pushes it through qsp_apply. The query count
// charged equals the polynomial degree 2*ell - 1.
InverseEncoding inverse_encoding(const BlockEncoding& e_b, double kappa, double eta,
                                 double eps_target, QueryLedger& ledger);

}  // namespace pdqls::enc
