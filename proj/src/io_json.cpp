#include "pdqls/io_json.hpp"

#include <fstream>
#include <json.hpp>

namespace pdqls::io {

namespace {

json complex_split(const auto& data, Eigen::Index count) {
  std::vector<double> re(count), im(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    re[i] = data[i].real();
    im[i] = data[i].imag();
  }
  return json{{"re", re}, {"im", im}};
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  if (m.rows() != m.cols()) throw validation_error("only square matrices serialize");
  const Index n = m.rows();
  std::vector<double> re, im;
  re.reserve(n * n);
  im.reserve(n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  return json{{"dim", n}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const json& j) {
  const Index n = j.at("dim").get<Index>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (static_cast<Index>(re.size()) != n * n || im.size() != re.size())
    throw validation_error("matrix JSON arrays have the wrong length");
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index jx = 0; jx < n; ++jx) m(i, jx) = Complex(re[i * n + jx], im[i * n + jx]);
  return m;
}

json vector_to_json(const Vector& v) {
  json j = complex_split(v, v.size());
  j["dim"] = v.size();
  return j;
}

Vector vector_from_json(const json& j) {
  const Index n = j.at("dim").get<Index>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (static_cast<Index>(re.size()) != n || im.size() != re.size())
    throw validation_error("vector JSON arrays have the wrong length");
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = Complex(re[i], im[i]);
  return v;
}

json poly_to_json(const poly::InverseApproximant& p) {
  return json{{"basis", "chebyshev-T"},
              {"coeffs", p.cheb_coeffs},
              {"meta", {{"ell", p.ell}, {"kappa", p.kappa}, {"K", p.K}}}};
}

json poly_to_json(const poly::WindowPolynomial& w) {
  return json{{"basis", "chebyshev-T"},
              {"coeffs", w.cheb_coeffs},
              {"meta",
               {{"eps", w.eps}, {"delta", w.delta}, {"sigma", w.sigma}, {"degree", w.degree}}}};
}

json spec_to_json(const SumHamiltonianSpec& spec) {
  json terms = json::array();
  for (const auto& t : spec.terms) {
    json jt = matrix_to_json(t.h);
    jt.erase("dim");
    jt["qubits"] = t.sites;
    terms.push_back(std::move(jt));
  }
  json out{{"terms", std::move(terms)}};
  bool all_qubits = true;
  for (Index d : spec.site_dims) all_qubits = all_qubits && d == 2;
  if (all_qubits) {
    out["n"] = spec.num_sites();
  } else {
    out["dims"] = spec.site_dims;
  }
  return out;
}

SumHamiltonianSpec spec_from_json(const json& j) {
  SumHamiltonianSpec spec;
  if (j.contains("dims")) {
    spec.site_dims = j.at("dims").get<std::vector<Index>>();
  } else {
    spec.site_dims.assign(j.at("n").get<int>(), 2);
  }
  for (const auto& jt : j.at("terms")) {
    SumHamiltonianSpec::Term t;
    t.sites = jt.at("qubits").get<std::vector<int>>();
    Index dim = 1;
    for (int s : t.sites) dim *= spec.site_dims.at(s);
    json jm = jt;
    jm["dim"] = dim;
    t.h = matrix_from_json(jm);
    spec.terms.push_back(std::move(t));
  }
  return spec;
}

json sparse_vector_to_json(const sumqls::SparseVector& v) {
  std::vector<double> re, im;
  for (const Complex& c : v.values) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return json{{"dim", v.dim}, {"positions", v.positions}, {"re", re}, {"im", im}};
}

sumqls::SparseVector sparse_vector_from_json(const json& j) {
  sumqls::SparseVector v;
  v.dim = j.at("dim").get<Index>();
  v.positions = j.at("positions").get<std::vector<Index>>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != v.positions.size() || im.size() != re.size())
    throw validation_error("sparse vector JSON arrays have the wrong length");
  for (size_t k = 0; k < re.size(); ++k) v.values.emplace_back(re[k], im[k]);
  return v;
}

json instance_to_json(const inst::QlsInstance& inst) {
  json j{{"family", inst.family}, {"seed", inst.seed}, {"params", inst.params}};
  if (inst.matrix) j["matrix"] = matrix_to_json(inst.matrix->entries());
  if (inst.spec) j["spec"] = spec_to_json(*inst.spec);
  if (inst.spec) {
    j["b"] = sparse_vector_to_json(inst.b_sparse);
  } else {
    j["b"] = vector_to_json(inst.b.amps);
  }
  json meta{{"kappa", inst.kappa}, {"observables", inst.observables}};
  if (!inst.marked.empty()) meta["marked"] = inst.marked;
  if (inst.reference_state.size() > 0)
    meta["reference_state"] = vector_to_json(inst.reference_state);
  j["meta"] = std::move(meta);
  return j;
}

inst::QlsInstance instance_from_json(const json& j) {
  inst::QlsInstance out;
  out.family = j.at("family").get<std::string>();
  out.seed = j.value("seed", std::uint64_t(0));
  if (j.contains("params"))
    out.params = j.at("params").get<std::map<std::string, double>>();
  if (j.contains("matrix")) out.matrix = HermitianOperator(matrix_from_json(j.at("matrix")));
  if (j.contains("spec")) {
    out.spec = spec_from_json(j.at("spec"));
    out.b_sparse = sparse_vector_from_json(j.at("b"));
    out.b = StateVector(out.b_sparse.to_dense()).normalized();
  } else {
    out.b = StateVector(vector_from_json(j.at("b"))).normalized();
  }
  const json& meta = j.at("meta");
  out.kappa = meta.at("kappa").get<double>();
  if (out.matrix) out.matrix->set_kappa_bound(out.kappa);
  if (meta.contains("observables"))
    out.observables = meta.at("observables").get<std::map<std::string, double>>();
  if (meta.contains("marked")) out.marked = meta.at("marked").get<std::vector<Index>>();
  if (meta.contains("reference_state"))
    out.reference_state = vector_from_json(meta.at("reference_state"));
  return out;
}

json solve_report_to_json(const solve::SolveReport& r) {
  json q;
  for (const auto& [k, v] : r.queries.counts()) q[k] = v;
  return json{{"p_succ", r.p_succ},
              {"p_succ_formula", r.p_succ_formula},
              {"aa_rounds", r.aa_rounds},
              {"amplified_p", r.amplified_p},
              {"expected_repetitions", r.expected_repetitions},
              {"trace_error", r.trace_error},
              {"queries", std::move(q)},
              {"regime", solve::to_string(r.regime)},
              {"statistic", r.statistic},
              {"kappa", r.kappa},
              {"eta", r.eta},
              {"eps", r.eps},
              {"K", r.K},
              {"ell", r.ell},
              {"degree", r.degree},
              {"N", r.dim}};
}

json vtaa_report_to_json(const vtaa::VtaaReport& r) {
  json stages = json::array();
  for (const auto& st : r.stages)
    stages.push_back(json{{"delta", st.delta},
                          {"deg_P", st.deg_p},
                          {"deg_W", st.deg_w},
                          {"theta", st.theta},
                          {"k", st.k},
                          {"p_stop", st.p_stop},
                          {"t", st.t},
                          {"degenerate", st.degenerate}});
  json q;
  for (const auto& [k, v] : r.queries.counts()) q[k] = v;
  return json{{"p_succ_prime", r.p_succ_prime},
              {"p_succ_unamplified", r.p_succ_unamplified},
              {"trace_error", r.trace_error},
              {"t_avg", r.t_avg},
              {"uncompute_residual", r.uncompute_residual},
              {"stages", std::move(stages)},
              {"queries", std::move(q)},
              {"gamma_factor", r.gamma},
              {"kappa", r.kappa},
              {"eta", r.eta},
              {"eps", r.eps},
              {"N", r.dim}};
}

json sumqls_report_to_json(const sumqls::SumQlsReport& r) {
  return json{{"gamma", r.gamma},
              {"gamma_formula", r.gamma_formula},
              {"kappa_A", r.kappa_a},
              {"d_bprime", r.d_b_prime},
              {"QUL", r.cost.q_ul},
              {"QUv", r.cost.q_uv},
              {"alpha", r.cost.alpha},
              {"kappa_tilde", r.cost.kappa_tilde},
              {"gate_estimate", r.gate_estimate},
              {"trace_error", r.trace_error},
              {"N", r.dim},
              {"J", r.j_terms}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace pdqls::io
