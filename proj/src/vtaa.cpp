#include "pdqls/vtaa.hpp"

#include <cmath>
#include <sstream>

namespace pdqls::vtaa {

long long VttSchedule::window_degree(int j) const {
  return (j == m - 1) ? 0 : windows[j].degree;
}

long long VttSchedule::stage_degree(int j) const {
  return inverses[j].degree() + window_degree(j);
}

VttSchedule build_schedule(double kappa, double eta, double eps) {
  if (kappa <= 1.0) throw validation_error("schedule needs kappa > 1");
  if (eta <= 0.0 || eta > 1.0) throw validation_error("schedule needs eta in (0, 1]");
  if (eps <= 0.0 || eps >= 1.0) throw validation_error("schedule needs eps in (0, 1)");

  VttSchedule s;
  s.kappa = kappa;
  s.eta = eta;
  s.eps = eps;
  s.m = static_cast<int>(std::ceil(std::log2(kappa))) + 1;
  s.eps_tilde = eps / (4.0 * kappa * std::sqrt(std::log2(kappa) + 1.0));
  const double eps_w = std::min(s.eps_tilde, 0.5);

  long long t = 0;
  for (int j = 1; j <= s.m; ++j) {
    const double delta_j = eta * std::pow(2.0, -j);
    s.delta.push_back(delta_j);
    if (j < s.m) {
      s.windows.push_back(poly::build_window(eps_w, delta_j));
    } else {
      // W_m == 1: the final stage accepts every remaining branch.
      poly::WindowPolynomial one;
      one.eps = eps_w;
      one.delta = delta_j;
      one.sigma = 0.0;
      one.degree = 0;
      one.cheb_coeffs = {1.0};
      s.windows.push_back(std::move(one));
    }
    // Stage approximant certified on [-1, 1 - delta_j], i.e. at effective
    // condition number 1/delta_j.
    const double kappa_j = 1.0 / delta_j;
    const int ell = poly::least_ell_absolute(kappa_j, s.eps_tilde);
    s.inverses.push_back(poly::build_inverse_approximant(ell, kappa_j));
    t += s.stage_degree(j - 1);
    s.stop_times.push_back(t);
  }
  double kmax = 0.0;
  for (const auto& p : s.inverses) kmax = std::max(kmax, p.K);
  s.K = kmax;
  return s;
}

namespace {

struct StageScalars {
  // Per eigenvalue: window value (clamped to [-1,1]) and normalized inverse.
  std::vector<double> w;
  std::vector<double> p;
};

}  // namespace

std::pair<StateVector, VtaaReport> simulate_vst(
    const HermitianOperator& a, const StateVector& b, const VttSchedule& schedule,
    const std::optional<std::vector<long long>>& amplification) {
  if (!a.is_positive_definite()) throw validation_error("simulate_vst needs a PD operator");
  if (b.dim() != a.dim()) throw validation_error("dimension mismatch between A and b");
  if (amplification && static_cast<int>(amplification->size()) != schedule.m)
    throw validation_error("amplification list must have one k per stage");
  const StateVector bn = b.normalized();
  const int m = schedule.m;
  const Index n = a.dim();

  const auto& es = a.spectrum();
  Vector beta = es.vectors.adjoint() * bn.amps;

  // Scalar tables: mu_i = 1 - eta*lambda_i are the eigenvalues of B.
  std::vector<StageScalars> stage(m);
  for (int j = 0; j < m; ++j) {
    stage[j].w.resize(n);
    stage[j].p.resize(n);
    for (Index i = 0; i < n; ++i) {
      const double mu = std::clamp(1.0 - schedule.eta * es.values(i), -1.0, 1.0);
      stage[j].w[i] = std::clamp(schedule.windows[j].eval(mu), -1.0, 1.0);
      stage[j].p[i] = schedule.inverses[j].eval(mu) / schedule.K;
    }
  }

  VtaaReport rep;
  rep.kappa = schedule.kappa;
  rep.eta = schedule.eta;
  rep.eps = schedule.eps;
  rep.dim = n;
  rep.stages.resize(m);

  // Unamplified stopping statistics, in closed form.
  {
    std::vector<double> m_prod(n, 1.0);  // M_{j-1}(mu_i)
    double psucc0 = 0.0;
    double tavg2 = 0.0;
    for (int j = 0; j < m; ++j) {
      double pj = 0.0, pj_flag1 = 0.0;
      for (Index i = 0; i < n; ++i) {
        const double amp = std::norm(beta(i)) * m_prod[i] * m_prod[i] * stage[j].w[i] *
                           stage[j].w[i];
        pj += amp;
        pj_flag1 += amp * stage[j].p[i] * stage[j].p[i];
      }
      psucc0 += pj_flag1;
      tavg2 += pj * static_cast<double>(schedule.stop_times[j]) *
               static_cast<double>(schedule.stop_times[j]);
      rep.stages[j].p_stop = pj;
      for (Index i = 0; i < n; ++i) {
        const double w = stage[j].w[i];
        m_prod[i] *= std::sqrt(std::max(0.0, 1.0 - w * w));
      }
    }
    rep.p_succ_unamplified = psucc0;
    rep.t_avg = std::sqrt(tavg2);
  }

  // Branch amplitudes: unstopped u_i plus stopped (stage, flag, eigenvalue).
  Vector u = beta;
  std::vector<Vector> s0(m, Vector::Zero(n)), s1(m, Vector::Zero(n));
  for (int j = 0; j < m; ++j) {
    auto& tr = rep.stages[j];
    tr.delta = schedule.delta[j];
    tr.deg_p = schedule.inverses[j].degree();
    tr.deg_w = schedule.window_degree(j);
    tr.t = schedule.stop_times[j];

    // A_j: split the unstopped branch through W_j, then the flag through P_j.
    for (Index i = 0; i < n; ++i) {
      const double w = stage[j].w[i];
      const double p = stage[j].p[i];
      const Complex stopped = u(i) * w;
      s1[j](i) = stopped * p;
      s0[j](i) = stopped * std::sqrt(std::max(0.0, 1.0 - p * p));
      u(i) *= std::sqrt(std::max(0.0, 1.0 - w * w));
    }

    // Amplitude amplification on the maybe-good (flag-1 or unstopped) span.
    double p_mg = u.squaredNorm();
    for (int i = 0; i <= j; ++i) p_mg += s1[i].squaredNorm();
    p_mg = std::clamp(p_mg, 0.0, 1.0);
    const double theta = std::asin(std::sqrt(p_mg));
    tr.theta = theta;
    if (theta < 1e-12) {
      tr.k = 0;
      tr.degenerate = true;  // no maybe-good mass to rotate
      continue;
    }
    long long k;
    if (amplification) {
      k = (*amplification)[j];
      if (k < 0) throw validation_error("amplification steps must be nonnegative");
    } else {
      // Least k with pi/(8 theta) - 1/2 <= k <= pi/(4 theta) - 1/2. The
      // window contains no integer exactly when theta is in (pi/6, pi/4);
      // there the upper limit governs (never rotate past pi/2) and the stage
      // runs unamplified. Amplifying those stages anyway compounds a 3x
      // repetition cost per stage and destroys the t_avg-governed scaling.
      const double lower = M_PI / (8.0 * theta) - 0.5;
      const double upper = M_PI / (4.0 * theta) - 0.5;
      k = std::max<long long>(0, static_cast<long long>(std::ceil(lower)));
      if (static_cast<double>(k) > upper)
        k = std::max<long long>(0, static_cast<long long>(std::floor(upper)));
    }
    tr.k = k;
    if (k == 0) continue;
    const double c = std::cos(theta);
    const double f_mg = std::sin((2 * k + 1) * theta) / std::sin(theta);
    const double f_bad = (c < 1e-15) ? 0.0 : std::cos((2 * k + 1) * theta) / c;
    u *= f_mg;
    for (int i = 0; i <= j; ++i) {
      s1[i] *= f_mg;
      s0[i] *= f_bad;
    }
  }

  // Uncompute: project the flag-1 branch onto the image of the B-algorithm,
  // sum_j M_{j-1} W_j |1_j>, which lands on clock zero.
  Vector c1 = Vector::Zero(n);
  double flag1_mass = 0.0;
  {
    std::vector<double> m_prod(n, 1.0);
    for (int j = 0; j < m; ++j) {
      for (Index i = 0; i < n; ++i) {
        c1(i) += m_prod[i] * stage[j].w[i] * s1[j](i);
        const double w = stage[j].w[i];
        m_prod[i] *= std::sqrt(std::max(0.0, 1.0 - w * w));
      }
      flag1_mass += s1[j].squaredNorm();
    }
  }
  rep.p_succ_prime = c1.squaredNorm();
  rep.uncompute_residual = std::max(0.0, flag1_mass - rep.p_succ_prime);
  if (rep.p_succ_prime < 1e-15)
    throw numerical_error("variable-time solve retained no success amplitude");

  rep.branch_flag1 = Matrix::Zero(m, n);
  rep.branch_flag0 = Matrix::Zero(m, n);
  for (int j = 0; j < m; ++j) {
    rep.branch_flag1.row(j) = s1[j].transpose();
    rep.branch_flag0.row(j) = s0[j].transpose();
  }
  rep.unstopped = u;

  StateVector x(Vector(es.vectors * (c1 / c1.norm())));
  rep.trace_error = trace_distance(x, StateVector(a.solve(bn.amps)).normalized());
  rep.gamma = gamma_factor(a, bn);

  // Recursive query accounting: A'_j uses A_j A'_{j-1} a total of 2k_j + 1
  // times; the uncompute pass replays the window chain once.
  long long q_ub = 0, q_ubvec = 1;
  for (int j = 0; j < m; ++j) {
    const long long reps = 2 * rep.stages[j].k + 1;
    q_ub = reps * (schedule.stage_degree(j) + q_ub);
    q_ubvec = reps * q_ubvec;
  }
  long long w_total = 0;
  for (int j = 0; j < m; ++j) w_total += schedule.window_degree(j);
  rep.queries.add("U_B", q_ub + w_total);
  rep.queries.add("U_b", q_ubvec);

  return {std::move(x), std::move(rep)};
}

double gamma_factor(const HermitianOperator& a, const StateVector& b) {
  if (!a.is_positive_definite()) throw validation_error("gamma_factor needs a PD operator");
  const StateVector bn = b.normalized();
  const auto& es = a.spectrum();
  const Vector beta = es.vectors.adjoint() * bn.amps;
  double half = 0.0, full = 0.0;
  for (Index i = 0; i < a.dim(); ++i) {
    const double w = std::norm(beta(i));
    half += w / es.values(i);
    full += w / (es.values(i) * es.values(i));
  }
  const double kappa = a.kappa_bound() > 1.0 ? a.kappa_bound() : a.condition_number();
  return std::sqrt(kappa) * std::sqrt(half) / std::sqrt(full);
}

CostReport vtaa_cost_report(const VttSchedule& schedule, const VtaaReport& report,
                            double p_fail) {
  CostReport out;
  out.measured_q_ub = report.queries.get("U_B");
  out.measured_q_ubvec = report.queries.get("U_b");
  const double t_max = static_cast<double>(schedule.stop_times.back());
  const double t_min = static_cast<double>(schedule.stop_times.front());
  const double m = schedule.m;
  const double p = std::max(report.p_succ_unamplified, 1e-300);
  out.bound = t_max * std::sqrt(m) +
              report.t_avg / std::sqrt(p) * std::sqrt(m * std::log(t_max / t_min));
  out.ratio = static_cast<double>(out.measured_q_ub) / out.bound;
  double pre = 0.0;
  for (const auto& st : report.stages)
    if (!st.degenerate) pre += 1.0 / st.theta;
  out.preprocessing_cost = pre * std::log(1.0 / p_fail);
  return out;
}

}  // namespace pdqls::vtaa
