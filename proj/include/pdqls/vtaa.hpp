#pragma once

#include <optional>
#include <vector>

#include "pdqls/approximant.hpp"
#include "pdqls/hermitian.hpp"
#include "pdqls/ledger.hpp"
#include "pdqls/state.hpp"
#include "pdqls/window.hpp"

namespace pdqls::vtaa {

using pdqls::HermitianOperator;
using pdqls::QueryLedger;
using pdqls::StateVector;

// Stage data for the variable-stopping-time solver: m = ceil(log2 kappa) + 1
// stages with shrinking windows delta_j = eta * 2^-j, inverse approximants
// certified on [-1, 1 - delta_j], a shared normalization K, and cumulative
// stopping times t_j.
struct VttSchedule {
  int m = 0;
  double kappa = 0.0;
  double eta = 0.0;
  double eps = 0.0;
  double eps_tilde = 0.0;  // eps / (4 kappa sqrt(log2 kappa + 1))
  double K = 0.0;          // 2 max_j max |P_j|
  std::vector<double> delta;                       // per stage, 1-based packed at [0..m)
  std::vector<poly::WindowPolynomial> windows;     // windows[m-1] is the constant 1
  std::vector<poly::InverseApproximant> inverses;
  std::vector<long long> stop_times;               // t_j = sum_{i<=j} (deg P_i + deg W_i)

  long long window_degree(int j) const;  // 0 for the final constant window
  long long stage_degree(int j) const;   // deg P_j + deg W_j
};

VttSchedule build_schedule(double kappa, double eta, double eps);

struct StageTrace {
  double delta = 0.0;
  long long deg_p = 0;
  long long deg_w = 0;
  double theta = 0.0;
  long long k = 0;
  double p_stop = 0.0;  // unamplified stopping probability
  long long t = 0;
  bool degenerate = false;  // theta below threshold, stage skipped
};

struct VtaaReport {
  double p_succ_prime = 0.0;      // amplified success probability (flag 1, clock 0)
  double p_succ_unamplified = 0.0;
  double trace_error = 0.0;
  double t_avg = 0.0;             // sqrt(sum p_j t_j^2)
  double uncompute_residual = 0.0;  // flag-1 mass stuck outside clock zero
  std::vector<StageTrace> stages;
  QueryLedger queries;            // recursive VTAA accounting
  double gamma = 0.0;             // Gamma_{A,b}
  double kappa = 0.0;
  double eta = 0.0;
  double eps = 0.0;
  Index dim = 0;
  // Final branch amplitudes over the eigenbasis of B (rows = stages), for
  // term-by-term checks against the closed-form stage recursion.
  Matrix branch_flag1;
  Matrix branch_flag0;
  Vector unstopped;
};

// Runs the staged evolution spectrally (branch amplitudes per eigenvalue of
// B), amplifying each stage in closed form on the maybe-good/bad split.
// `amplification` empty means "auto": least k_j with
// pi/(8 theta_j) - 1/2 <= k_j. Passing all zeros reproduces the plain
// variable-stopping-time run.
std::pair<StateVector, VtaaReport> simulate_vst(
    const HermitianOperator& a, const StateVector& b, const VttSchedule& schedule,
    const std::optional<std::vector<long long>>& amplification = std::nullopt);

// Gamma_{A,b} = sqrt(kappa) ||A^{-1/2} b|| / ||A^{-1} b||, in [1, sqrt(kappa)].
double gamma_factor(const HermitianOperator& a, const StateVector& b);

struct CostReport {
  long long measured_q_ub = 0;
  long long measured_q_ubvec = 0;
  double bound = 0.0;            // t_max sqrt(m) + (t_avg/sqrt(p)) sqrt(m log(t_max/t_min))
  double ratio = 0.0;            // measured / bound
  double preprocessing_cost = 0.0;  // sum_j theta_j^{-1} * log(1/p_fail)
};

CostReport vtaa_cost_report(const VttSchedule& schedule, const VtaaReport& report,
                            double p_fail = 0.01);

}  // namespace pdqls::vtaa
