#include "pdqls/solver.hpp"

#include <cmath>
#include <sstream>

namespace pdqls::solve {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::worst: return "worst";
    case Regime::best: return "best";
    default: return "average";
  }
}

std::pair<Regime, double> regime_classify(const HermitianOperator& a, const StateVector& b) {
  if (!a.is_positive_definite()) throw validation_error("regime_classify needs a PD operator");
  const double stat = a.solve(b.normalized().amps).norm();
  const double kappa = a.kappa_bound() > 1.0 ? a.kappa_bound() : a.condition_number();
  // Thresholds are conventions standing in for the asymptotic regimes.
  Regime r = Regime::average;
  if (stat <= 2.0) r = Regime::worst;
  else if (stat >= kappa / 2.0) r = Regime::best;
  return {r, stat};
}

std::pair<StateVector, SolveReport> solve_postselect(const HermitianOperator& a,
                                                     const StateVector& b, double eta,
                                                     double eps, Mode mode) {
  if (eta <= 0.0 || eta > 1.0) throw validation_error("solve needs eta in (0, 1]");
  if (eps <= 0.0 || eps >= 1.0) throw validation_error("solve needs eps in (0, 1)");
  if (b.dim() != a.dim()) throw validation_error("dimension mismatch between A and b");
  const double kappa = a.kappa_bound();
  if (kappa <= 1.0) throw validation_error("solve needs a declared kappa bound > 1");
  const double lmin = a.min_eigenvalue();
  const double lmax = a.max_eigenvalue();
  if (lmin < 1.0 / kappa - 1e-9) {
    std::ostringstream os;
    os << "spectrum promise violated: eigenvalue " << lmin << " below 1/kappa = " << 1.0 / kappa;
    throw validation_error(os.str());
  }
  if (lmax > 1.0 + 1e-9) throw validation_error("solve expects ||A|| <= 1 after rescaling");
  const StateVector bn = b.normalized();

  // B = I - eta*A as a normalized one-ancilla encoding.
  Matrix bmat = Matrix::Identity(a.dim(), a.dim()) - eta * a.entries();
  BlockEncoding e_b = dilate_unitary(HermitianOperator(std::move(bmat)));
  e_b.cost["U_B"] = 1;

  // eps is split evenly between the encoding target and certificate slack.
  SolveReport rep;
  enc::InverseEncoding inv = enc::inverse_encoding(e_b, kappa, eta, eps / 2.0, rep.queries);

  QueryLedger scratch;  // the construction charge above already covers one application
  auto [x, p_sim] = apply_postselected(inv.encoding, bn, scratch);

  const Vector direct = a.solve(bn.amps);
  const double anorm = direct.norm();
  const double eta_k = eta * inv.approximant.K;

  rep.p_succ = p_sim;
  rep.p_succ_formula = anorm * anorm / (eta_k * eta_k);
  rep.trace_error = trace_distance(x, StateVector(direct).normalized());
  rep.statistic = anorm;
  rep.kappa = kappa;
  rep.eta = eta;
  rep.eps = eps;
  rep.K = inv.approximant.K;
  rep.ell = inv.approximant.ell;
  rep.degree = inv.approximant.degree();
  rep.dim = a.dim();
  std::tie(rep.regime, std::ignore) = regime_classify(a, bn);

  if (mode == Mode::postselect) {
    rep.expected_repetitions = 1.0 / p_sim;  // reported, not charged
    rep.queries.add("U_b", 1);
  } else {
    const double theta = std::asin(std::min(1.0, std::sqrt(p_sim)));
    const long long k = std::max<long long>(0, std::llround(M_PI / (4.0 * theta) - 0.5));
    rep.aa_rounds = k;
    rep.amplified_p = std::pow(std::sin((2 * k + 1) * theta), 2);
    // (2k+1) applications of the inverse encoding and of U_b in total.
    rep.queries.add("U_B", 2 * k * rep.degree);
    rep.queries.add("U_b", 2 * k + 1);
  }
  return {std::move(x), std::move(rep)};
}

}  // namespace pdqls::solve
