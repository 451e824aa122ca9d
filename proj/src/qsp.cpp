#include "pdqls/qsp.hpp"

#include <cmath>
#include <sstream>

#include "pdqls/hermitian.hpp"

namespace pdqls::enc {

namespace {

bool has_definite_parity(const std::vector<double>& c) {
  bool even_ok = true, odd_ok = true;
  for (size_t k = 0; k < c.size(); ++k) {
    if (k % 2 == 1 && c[k] != 0.0) even_ok = false;
    if (k % 2 == 0 && c[k] != 0.0) odd_ok = false;
  }
  return even_ok || odd_ok;
}

void check_magnitude(const std::vector<double>& c) {
  const double bound = has_definite_parity(c) ? 1.0 : 0.5;
  const int grid = 4001;
  for (int i = 0; i < grid; ++i) {
    const double x = -1.0 + 2.0 * i / (grid - 1);
    const double v = std::abs(poly::clenshaw_eval(c, x));
    if (v > bound + 1e-9) {
      std::ostringstream os;
      os << "polynomial magnitude " << v << " at x = " << x << " exceeds the QSP bound "
         << bound;
      throw validation_error(os.str());
    }
  }
}

}  // namespace

BlockEncoding qsp_apply(const BlockEncoding& e_b, const std::vector<double>& poly_coeffs,
                        QueryLedger& ledger) {
  if (std::abs(e_b.alpha - 1.0) > 1e-12)
    throw validation_error(
        "qsp_apply requires a normalized block-encoding (alpha = 1); rescaled encodings move "
        "the singularity into the interior and void the degree guarantee");
  if (poly_coeffs.empty()) throw validation_error("qsp_apply needs a nonempty polynomial");
  check_magnitude(poly_coeffs);
  const auto degree = static_cast<long long>(poly_coeffs.size()) - 1;

  Matrix b = extract_block(e_b);
  HermitianOperator bop(std::move(b));  // rejects a non-Hermitian block
  if (bop.operator_norm() > 1.0 + 1e-9)
    throw validation_error("encoded block must have spectrum inside [-1, 1]");

  const auto& es = bop.spectrum();
  RealVector pv(bop.dim());
  for (Index i = 0; i < bop.dim(); ++i)
    pv(i) = poly::clenshaw_eval(poly_coeffs, std::clamp(es.values(i), -1.0, 1.0));
  Matrix poly_b = es.vectors * pv.asDiagonal() * es.vectors.adjoint();

  BlockEncoding out = dilate_unitary(HermitianOperator(std::move(poly_b)));
  out.ancillas = e_b.ancillas + 2;
  out.eps = 4.0 * static_cast<double>(degree) * std::sqrt(e_b.eps);
  // Each application of the output spends `degree` applications of the input.
  for (const auto& [oracle, c] : e_b.cost) out.cost[oracle] = c * degree;
  if (e_b.cost.empty()) out.cost["U_B"] = degree;
  for (const auto& [oracle, c] : out.cost) ledger.add(oracle, c);
  return out;
}

InverseEncoding inverse_encoding(const BlockEncoding& e_b, double kappa, double eta,
                                 double eps_target, QueryLedger& ledger) {
  if (eta <= 0.0 || eta > 1.0) throw validation_error("inverse_encoding needs eta in (0, 1]");
  if (eps_target <= 0.0) throw validation_error("inverse_encoding needs eps_target > 0");
  // The approximant itself requires kappa > 1; near the kappa -> 1 edge the
  // floor only widens the certified domain.
  const double kappa_eff = std::max(kappa / eta, 1.5);

  const int ell = poly::least_ell_certified(kappa_eff, eps_target);
  poly::InverseApproximant p = poly::build_inverse_approximant(ell, kappa_eff);
  const double sup_err = poly::approx_error_sup(p);

  BlockEncoding enc = qsp_apply(e_b, p.normalized_coeffs(), ledger);
  enc.alpha = eta * p.K;
  enc.eps = eta * sup_err;  // absolute error of alpha * block against A^{-1}

  InverseEncoding out;
  out.encoding = std::move(enc);
  out.approximant = std::move(p);
  out.kappa_eff = kappa_eff;
  out.certified_sup_error = sup_err;
  return out;
}

}  // namespace pdqls::enc
