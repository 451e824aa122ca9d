#include "pdqls/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace pdqls::inst {

namespace {

Vector uniform_vector(Index n) {
  return Vector::Constant(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
}

}  // namespace

QlsInstance grover_diagonal(Index n, Index m, const std::vector<Index>& s) {
  if (m < 1 || 2 * m > n) throw validation_error("grover_diagonal needs 1 <= M <= N/2");
  if (static_cast<Index>(s.size()) != m)
    throw validation_error("marked set size must equal M");
  const double alpha = std::sqrt(static_cast<double>(n - m) / n);
  const double beta = std::sqrt(static_cast<double>(m) / n);
  Vector diag = Vector::Constant(n, Complex(alpha, 0.0));
  std::set<Index> mark(s.begin(), s.end());
  if (static_cast<Index>(mark.size()) != m) throw validation_error("marked set has repeats");
  for (Index j : mark) {
    if (j < 0 || j >= n) throw validation_error("marked index out of range");
    diag(j) = beta;
  }

  QlsInstance inst;
  inst.family = "grover_diagonal";
  inst.params = {{"N", double(n)}, {"M", double(m)}};
  inst.matrix = HermitianOperator(Matrix(diag.asDiagonal()));
  inst.b = StateVector(uniform_vector(n));
  inst.kappa = alpha / beta;
  inst.matrix->set_kappa_bound(std::max(inst.kappa, 1.0 + 1e-12));
  inst.marked.assign(mark.begin(), mark.end());
  // Direct solve puts amplitude 1/sqrt(2(N-M)) off S and 1/sqrt(2M) on S.
  inst.observables["p_marked"] = 0.5;
  inst.observables["amp_on"] = 1.0 / std::sqrt(2.0 * static_cast<double>(m));
  inst.observables["amp_off"] = 1.0 / std::sqrt(2.0 * static_cast<double>(n - m));
  return inst;
}

QlsInstance grover_diagonal(Index n, Index m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Index> all(n);
  std::iota(all.begin(), all.end(), Index(0));
  for (Index i = n - 1; i > 0; --i)
    std::swap(all[i], all[static_cast<Index>(rng.below(static_cast<std::uint64_t>(i + 1)))]);
  std::vector<Index> s(all.begin(), all.begin() + m);
  std::sort(s.begin(), s.end());
  QlsInstance inst = grover_diagonal(n, m, s);
  inst.seed = seed;
  return inst;
}

std::vector<int> majority_vector(Index n, Index m, int f, std::uint64_t seed) {
  if ((n + m) % 2 != 0) throw validation_error("majority instance needs N + M even");
  if (m < 1 || m > n) throw validation_error("margin M must satisfy 1 <= M <= N");
  const Index count_f = (n + m) / 2;
  std::vector<int> y(n, 1 - f);
  std::vector<Index> all(n);
  std::iota(all.begin(), all.end(), Index(0));
  Rng rng(seed);
  for (Index i = n - 1; i > 0; --i)
    std::swap(all[i], all[static_cast<Index>(rng.below(static_cast<std::uint64_t>(i + 1)))]);
  for (Index i = 0; i < count_f; ++i) y[all[i]] = f;
  return y;
}

QlsInstance promise_majority_instance(Index n, Index m, int f, std::uint64_t seed) {
  if (f != 0 && f != 1) throw validation_error("majority bit must be 0 or 1");
  const std::vector<int> y = majority_vector(n, m, f, seed);

  // Coefficient matrix I - (1-eps) K' with eps solving (1-eps)/eps * M/N = 1.
  const double eps = static_cast<double>(m) / static_cast<double>(n + m);
  Matrix a = Matrix::Identity(n + 1, n + 1);
  const double w = (1.0 - eps) / static_cast<double>(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) -= w;

  Vector b(n + 1);
  for (Index i = 0; i < n; ++i) b(i) = (y[i] == 0) ? 1.0 : -1.0;
  b(n) = std::sqrt(static_cast<double>(n + m));

  QlsInstance inst;
  inst.family = "promise_majority";
  inst.seed = seed;
  inst.params = {{"N", double(n)}, {"M", double(m)}, {"f", double(f)}};
  inst.matrix = HermitianOperator(std::move(a));
  inst.kappa = 1.0 / eps;
  inst.matrix->set_kappa_bound(inst.kappa);
  inst.b = StateVector(std::move(b)).normalized();
  const double ratio = std::sqrt(1.0 + static_cast<double>(m) / static_cast<double>(n));
  inst.observables["plus_overlap"] =
      (1.0 + (f == 0 ? ratio : -ratio)) / std::sqrt(6.0);
  return inst;
}

namespace {

// Pairing-model d-regular simple graph; whole-matching rejection on loops or
// repeats. The simple-graph probability is ~exp(-(d^2-1)/4), so the attempt
// budget must absorb a few thousand rejections at d = 6.
Matrix regular_graph_adjacency(Index n, Index d, Rng& rng) {
  if (n * d % 2 != 0) throw validation_error("expander needs N*d even");
  if (d < 3 || d >= n) throw validation_error("expander needs 3 <= d < N");
  std::vector<Index> stubs;
  stubs.reserve(n * d);
  for (int attempt = 0; attempt < 400000; ++attempt) {
    stubs.clear();
    for (Index v = 0; v < n; ++v)
      for (Index k = 0; k < d; ++k) stubs.push_back(v);
    for (size_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.below(i + 1)]);
    Matrix adj = Matrix::Zero(n, n);
    bool simple = true;
    for (size_t i = 0; i + 1 < stubs.size() && simple; i += 2) {
      const Index u = stubs[i], v = stubs[i + 1];
      if (u == v || adj(u, v).real() > 0.0) simple = false;
      adj(u, v) = adj(v, u) = 1.0;
    }
    if (simple) return adj;
  }
  throw numerical_error("pairing model failed to produce a simple graph");
}

}  // namespace

QlsInstance expander_instance(Index n, Index d, Index m, int f, std::uint64_t seed,
                              double c0_factor) {
  Rng rng(seed);
  Matrix bmat;
  double gap = 0.0;
  if (d == n) {
    // Complete graph with self-loops: B = (1/N) ones, rank one, gap exactly 1.
    bmat = Matrix::Constant(n, n, Complex(1.0 / static_cast<double>(n), 0.0));
    gap = 1.0;
  } else {
    bool found = false;
    for (int attempt = 0; attempt < 100 && !found; ++attempt) {
      Matrix adj = regular_graph_adjacency(n, d, rng);
      Matrix cand = adj / static_cast<double>(d);
      HermitianOperator bop(cand);
      const auto& ev = bop.spectrum().values;
      double second = 0.0;
      for (Index i = 0; i < n - 1; ++i) second = std::max(second, std::abs(ev(i)));
      gap = 1.0 - second;
      if (gap >= 0.2) {
        bmat = std::move(cand);
        found = true;
      }
    }
    if (!found)
      throw numerical_error("spectral gap threshold 0.2 unreachable in 100 resamples");
  }

  const double c1 = 1.0 / gap;
  const double c0 = c0_factor * c1;
  // (1-eps)/eps * M/N = c0
  const double eps = static_cast<double>(m) / (static_cast<double>(m) +
                                               c0 * static_cast<double>(n));
  const std::vector<int> y = majority_vector(n, m, f, rng.bits());

  Matrix a = Matrix::Identity(n + 1, n + 1);
  a.topLeftCorner(n, n) -= (1.0 - eps) * bmat;

  Vector b(n + 1);
  for (Index i = 0; i < n; ++i) b(i) = (y[i] == 0) ? 1.0 : -1.0;
  b(n) = std::sqrt(static_cast<double>(n)) * c0;

  QlsInstance inst;
  inst.family = "expander";
  inst.seed = seed;
  inst.params = {{"N", double(n)}, {"d", double(d)}, {"M", double(m)},
                 {"f", double(f)}, {"c0_factor", c0_factor}};
  inst.matrix = HermitianOperator(std::move(a));
  // The walk matrix carries negative eigenvalues, so ||A|| = 1 + (1-eps)
  // |lambda_min(B)| exceeds 1 and the condition number exceeds 1/eps; declare
  // the measured value.
  inst.kappa = inst.matrix->condition_number() * (1.0 + 1e-12);
  inst.matrix->set_kappa_bound(inst.kappa);
  inst.observables["inv_eps"] = 1.0 / eps;
  inst.b = StateVector(std::move(b)).normalized();
  inst.observables["gap"] = gap;
  inst.observables["c0"] = c0;
  inst.observables["band_high"] = 0.92;
  inst.observables["band_low"] = 0.06;
  return inst;
}

QlsInstance feynman_kitaev_sumqls(const std::vector<Gate>& circuit) {
  const Index t_gates = static_cast<Index>(circuit.size());
  if (t_gates < 1) throw validation_error("circuit needs at least one gate");
  int n_qubits = 0;
  for (const auto& g : circuit) {
    const size_t q = g.qubits.size();
    if (q != 1 && q != 2) throw validation_error("gates must act on one or two qubits");
    if (g.u.rows() != (q == 1 ? 2 : 4) || g.u.cols() != g.u.rows())
      throw validation_error("gate matrix size does not match its qubit count");
    if ((g.u * g.u.adjoint() - Matrix::Identity(g.u.rows(), g.u.rows()))
            .cwiseAbs()
            .maxCoeff() > 1e-10)
      throw validation_error("gate matrix is not unitary");
    for (int t : g.qubits) n_qubits = std::max(n_qubits, t + 1);
  }
  if (n_qubits > 6) throw validation_error("circuit exceeds the 6-qubit desk cap");

  const Index clock = 3 * t_gates;
  const double decay = std::exp(-1.0 / static_cast<double>(t_gates));
  const double delta =
      (1.0 + decay * decay - 2.0 * decay) / (3.0 * static_cast<double>(t_gates));

  // Gate at clock step t: U_t for t < T, identity for T <= t < 2T, reversed
  // adjoints for 2T <= t < 3T.
  auto step_gate = [&](Index t) -> Gate {
    if (t < t_gates) return circuit[t];
    if (t < 2 * t_gates) return Gate{Matrix::Identity(2, 2), {0}};
    Gate g = circuit[3 * t_gates - t - 1];
    g.u = g.u.adjoint().eval();
    return g;
  };

  SumHamiltonianSpec spec;
  spec.site_dims.push_back(clock);
  for (int q = 0; q < n_qubits; ++q) spec.site_dims.push_back(2);

  for (Index t = 0; t < clock; ++t) {
    const Gate g = step_gate(t);
    const Index gd = g.u.rows();
    Matrix h = Matrix::Identity(clock * gd, clock * gd) * delta;
    const Index tn = (t + 1) % clock;
    for (Index r = 0; r < gd; ++r) {
      h(t * gd + r, t * gd + r) += decay;
      h(tn * gd + r, tn * gd + r) += decay;
      for (Index c = 0; c < gd; ++c) {
        h(tn * gd + r, t * gd + c) -= decay * g.u(r, c);
        h(t * gd + c, tn * gd + r) -= decay * std::conj(g.u(r, c));
      }
    }
    SumHamiltonianSpec::Term term;
    term.h = std::move(h);
    term.sites.push_back(0);
    for (int q : g.qubits) term.sites.push_back(q + 1);
    spec.terms.push_back(std::move(term));
  }

  // b = M^dag e_1 = |0>_c |0...0> - e^{-1/T} |3T-1>_c ⊗ U_0 |0...0>.
  const Index dim = spec.dim();
  const Index nq_dim = dim / clock;
  sumqls::SparseVector b;
  b.dim = dim;
  b.positions.push_back(0);
  b.values.push_back(1.0);
  {
    const Gate& g0 = circuit[0];
    // U_{3T-1} = U_0^dag, so M^dag e_1 carries -e^{-1/T} U_0 |0> on the last
    // clock value.
    Vector col = embed_operator(g0.u, g0.qubits,
                                std::vector<Index>(spec.site_dims.begin() + 1,
                                                   spec.site_dims.end()))
                     .col(0);
    for (Index i = 0; i < nq_dim; ++i)
      if (col(i) != Complex(0.0, 0.0)) {
        b.positions.push_back((clock - 1) * nq_dim + i);
        b.values.push_back(-decay * col(i));
      }
  }

  // Reference circuit output U_{T-1} ... U_0 |0...0>.
  const std::vector<Index> qubit_dims(n_qubits, 2);
  Vector out = Vector::Zero(nq_dim);
  out(0) = 1.0;
  for (const Gate& g : circuit) out = (embed_operator(g.u, g.qubits, qubit_dims) * out).eval();

  QlsInstance inst;
  inst.family = "feynman_kitaev";
  inst.params = {{"T", double(t_gates)}, {"n", double(n_qubits)}};
  inst.spec = std::move(spec);
  inst.b_sparse = b;
  inst.b = StateVector(b.to_dense()).normalized();
  const double e1 = 1.0 - std::exp(-1.0);
  inst.kappa = 4.0 / (e1 * e1) * static_cast<double>(t_gates * t_gates);
  inst.observables["delta"] = delta;
  inst.observables["gamma_inv_bound"] = 5.01 * static_cast<double>(t_gates * t_gates);
  const double e2 = std::exp(-2.0);
  inst.observables["clock_window_prob"] = e2 / (1.0 + e2 + e2 * e2);
  inst.reference_state = std::move(out);
  return inst;
}

QlsInstance random_pd_instance(Index n, double kappa, std::uint64_t seed, BModel b_model,
                               double fixed_lambda) {
  if (kappa <= 1.0) throw validation_error("random_pd_instance needs kappa > 1");
  if (n < 2) throw validation_error("random_pd_instance needs N >= 2");
  Rng rng(seed);
  RealVector evals(n);
  for (Index i = 0; i < n; ++i) evals(i) = rng.uniform(1.0 / kappa, 1.0);
  std::sort(evals.data(), evals.data() + n);
  evals(0) = 1.0 / kappa;  // pin the endpoints
  evals(n - 1) = 1.0;
  // Porter-Thomas coefficients are drawn in the eigenbasis before the Haar
  // factor so the spectral samplers replay the exact instance statistic.
  Vector beta(n);
  for (Index i = 0; i < n; ++i) beta(i) = rng.gaussian();
  beta /= beta.norm();
  Matrix basis = haar_unitary(n, rng);

  QlsInstance inst;
  inst.family = "random_pd";
  inst.seed = seed;
  inst.params = {{"N", double(n)}, {"kappa", kappa}};
  inst.matrix = HermitianOperator::from_spectrum(evals, basis, kappa);
  inst.kappa = kappa;

  if (b_model == BModel::porter_thomas) {
    inst.b = StateVector(Vector(basis * beta));
  } else {
    Index pick = 0;
    for (Index i = 1; i < n; ++i)
      if (std::abs(evals(i) - fixed_lambda) < std::abs(evals(pick) - fixed_lambda)) pick = i;
    inst.b = StateVector(Vector(basis.col(pick)));
    inst.params["fixed_lambda"] = fixed_lambda;
  }
  inst.observables["solution_norm"] = inst.matrix->solve(inst.b.amps).norm();
  return inst;
}

namespace {

void draw_spectral_model(Index n, double kappa, std::uint64_t seed, RealVector& evals,
                         Vector& beta) {
  Rng rng(seed);
  evals.resize(n);
  for (Index i = 0; i < n; ++i) evals(i) = rng.uniform(1.0 / kappa, 1.0);
  std::sort(evals.data(), evals.data() + n);
  evals(0) = 1.0 / kappa;
  evals(n - 1) = 1.0;
  beta.resize(n);
  for (Index i = 0; i < n; ++i) beta(i) = rng.gaussian();
  beta /= beta.norm();
}

}  // namespace

QlsInstance random_pd_diag_instance(Index n, double kappa, std::uint64_t seed) {
  if (kappa <= 1.0) throw validation_error("random_pd_diag_instance needs kappa > 1");
  if (n < 2) throw validation_error("random_pd_diag_instance needs N >= 2");
  RealVector evals;
  Vector beta;
  draw_spectral_model(n, kappa, seed, evals, beta);
  QlsInstance inst;
  inst.family = "random_pd_diag";
  inst.seed = seed;
  inst.params = {{"N", double(n)}, {"kappa", kappa}};
  inst.matrix = HermitianOperator::from_spectrum(evals, Matrix::Identity(n, n), kappa);
  inst.kappa = kappa;
  inst.b = StateVector(std::move(beta));
  double acc = 0.0;
  for (Index i = 0; i < n; ++i)
    acc += std::norm(inst.b.amps(i)) / (evals(i) * evals(i));
  inst.observables["solution_norm"] = std::sqrt(acc);
  return inst;
}

double sample_solution_norm(Index n, double kappa, std::uint64_t seed) {
  RealVector evals;
  Vector beta;
  draw_spectral_model(n, kappa, seed, evals, beta);
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) acc += std::norm(beta(i)) / (evals(i) * evals(i));
  return std::sqrt(acc);
}

std::vector<Gate> random_circuit(int n_qubits, int t_gates, std::uint64_t seed) {
  if (n_qubits < 1) throw validation_error("random_circuit needs at least one qubit");
  Rng rng(seed);
  std::vector<Gate> gates;
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  for (int t = 0; t < t_gates; ++t) {
    const bool two = n_qubits >= 2 && rng.uniform() < 0.4;
    if (two) {
      int a = static_cast<int>(rng.below(n_qubits));
      int b = static_cast<int>(rng.below(n_qubits - 1));
      if (b >= a) ++b;
      gates.push_back({cnot, {a, b}});
    } else {
      // Random single-qubit rotation e^{-i theta (nx X + ny Y + nz Z)}.
      const double theta = rng.uniform(0.0, M_PI);
      double nx = rng.normal(), ny = rng.normal(), nz = rng.normal();
      const double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
      nx /= nn; ny /= nn; nz /= nn;
      const double c = std::cos(theta), s = std::sin(theta);
      Matrix u(2, 2);
      u(0, 0) = Complex(c, -s * nz);
      u(0, 1) = Complex(-s * ny, -s * nx);
      u(1, 0) = Complex(s * ny, -s * nx);
      u(1, 1) = Complex(c, s * nz);
      gates.push_back({u, {static_cast<int>(rng.below(n_qubits))}});
    }
  }
  return gates;
}

}  // namespace pdqls::inst
