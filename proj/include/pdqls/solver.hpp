#pragma once

#include <string>

#include "pdqls/qsp.hpp"
#include "pdqls/state.hpp"

namespace pdqls::solve {

using pdqls::BlockEncoding;
using pdqls::HermitianOperator;
using pdqls::QueryLedger;
using pdqls::StateVector;

enum class Mode { postselect, amplify };
enum class Regime { worst, average, best };

std::string to_string(Regime r);

struct SolveReport {
  double p_succ = 0.0;          // simulated post-selection probability
  double p_succ_formula = 0.0;  // ||A^{-1}b||^2 / (eta K)^2 from a direct solve
  long long aa_rounds = 0;      // k; 0 in postselect mode
  double amplified_p = 0.0;     // sin^2((2k+1) theta), amplify mode only
  double expected_repetitions = 0.0;  // 1/p_succ, postselect mode only
  double trace_error = 0.0;     // against the dense direct solve
  QueryLedger queries;
  Regime regime = Regime::average;
  double statistic = 0.0;       // ||A^{-1}|b>||
  double kappa = 0.0;
  double eta = 0.0;
  double eps = 0.0;
  double K = 0.0;
  int ell = 0;
  long long degree = 0;         // 2*ell - 1
  Index dim = 0;
};

std::pair<Regime, double> regime_classify(const HermitianOperator& a, const StateVector& b);

// End-to-end PD-QLS solve through the inverse block-encoding: rejects inputs
// violating the [1/kappa, 1] spectrum promise, builds the normalized encoding
// of B = I - eta*A by dilation, applies the certified inverse approximant and
// post-selects (optionally amplifying in closed form on the good/bad span).
std::pair<StateVector, SolveReport> solve_postselect(const HermitianOperator& a,
                                                     const StateVector& b, double eta,
                                                     double eps, Mode mode);

}  // namespace pdqls::solve
