#include "pdqls/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <atomic>
#include <mutex>
#include <thread>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pdqls/blockenc.hpp"
#include "pdqls/csv.hpp"
#include "pdqls/io_json.hpp"

namespace pdqls::cli {

namespace {

using bench::CsvRow;
using nlohmann::json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PDQLS_SEED")) return std::strtoull(env, nullptr, 10);
  return 1;
}

// Matrix instances are rescaled by 1/lambda_max before solving so the
// [1/kappa, 1] promise holds with the declared bound; the normalized solution
// is unchanged by the rescaling.
HermitianOperator promise_rescaled(const inst::QlsInstance& in) {
  if (!in.matrix) throw validation_error("instance carries no dense matrix");
  const double lmax = in.matrix->max_eigenvalue();
  Matrix a = in.matrix->entries() / lmax;
  const double kappa = std::max(in.kappa, 1.0 + 1e-9);
  return HermitianOperator(std::move(a), kappa);
}

std::vector<std::string> solver_header() {
  return {"N",   "kappa", "eta", "eps",         "ell",    "K",        "p_succ",
          "k",   "QUb",   "QUB", "trace_error", "regime", "statistic"};
}

CsvRow solver_row(const solve::SolveReport& r) {
  return {static_cast<long long>(r.dim),
          r.kappa,
          r.eta,
          r.eps,
          static_cast<long long>(r.ell),
          r.K,
          r.p_succ,
          r.aa_rounds,
          r.queries.get("U_b"),
          r.queries.get("U_B"),
          r.trace_error,
          solve::to_string(r.regime),
          r.statistic};
}

std::vector<std::string> vtaa_header() {
  return {"N",     "kappa", "eta", "eps",         "m",           "t_max", "p_succ_prime",
          "t_avg", "QUb",   "QUB", "trace_error", "gamma_factor"};
}

CsvRow vtaa_row(const vtaa::VtaaReport& r, const vtaa::VttSchedule& s) {
  return {static_cast<long long>(r.dim),
          r.kappa,
          r.eta,
          r.eps,
          static_cast<long long>(s.m),
          s.stop_times.back(),
          r.p_succ_prime,
          r.t_avg,
          r.queries.get("U_b"),
          r.queries.get("U_B"),
          r.trace_error,
          r.gamma};
}

void emit(const std::string& out_path, const std::vector<std::string>& header,
          const std::vector<CsvRow>& rows) {
  if (out_path.empty()) {
    std::cout << bench::emit_csv(header, rows);
  } else {
    bench::write_csv_file(out_path, header, rows);
  }
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  if (out.empty()) throw validation_error("empty grid list: " + csv);
  return out;
}

int find_column(const std::vector<std::string>& header, const std::string& name) {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

double cell_number(const bench::CsvCell& c, const std::string& name) {
  if (std::holds_alternative<double>(c)) return std::get<double>(c);
  if (std::holds_alternative<long long>(c))
    return static_cast<double>(std::get<long long>(c));
  throw validation_error("fit column " + name + " is not numeric");
}

double fit_value(const std::vector<std::string>& header, const CsvRow& row,
                 const std::string& name) {
  const int idx = find_column(header, name);
  if (idx >= 0) return cell_number(row[idx], name);
  // Derived columns for fits the schemas do not carry directly.
  if (name == "degree") {
    const int ell_idx = find_column(header, "ell");
    if (ell_idx >= 0) return 2.0 * cell_number(row[ell_idx], "ell") - 1.0;
  }
  if (name == "inv_delta") {
    const int d_idx = find_column(header, "delta");
    if (d_idx >= 0) return 1.0 / cell_number(row[d_idx], "delta");
  }
  throw validation_error("fit references unknown column " + name);
}

double fit_column(const std::vector<std::string>& header, const std::vector<CsvRow>& rows,
                  const std::string& y_name, const std::string& x_name) {
  std::vector<double> xs, ys;
  for (const auto& row : rows) {
    xs.push_back(fit_value(header, row, x_name));
    ys.push_back(fit_value(header, row, y_name));
  }
  return loglog_slope(xs, ys);
}

int cmd_approx(int ell, double kappa, int grid, const std::string& out_path) {
  const poly::InverseApproximant p = poly::build_inverse_approximant(ell, kappa);
  std::vector<CsvRow> rows;
  for (int i = 0; i < grid; ++i) {
    const double x = -1.0 + 2.0 * i / grid;  // endpoint 1 excluded (pole of the target)
    rows.push_back({x, p.eval(x), 1.0 / (1.0 - x)});
  }
  emit(out_path, {"x", "P", "inv_one_minus_x"}, rows);
  return 0;
}

int cmd_window(double eps, double delta, int grid, const std::string& out_path) {
  const poly::WindowPolynomial w = poly::build_window(eps, delta);
  std::vector<CsvRow> rows;
  for (int i = 0; i <= grid; ++i) {
    const double x = -1.0 + 2.0 * i / grid;
    rows.push_back({x, w.eval(x)});
  }
  emit(out_path, {"x", "W"}, rows);
  if (!out_path.empty()) {
    std::cout << json{{"degree", w.degree},
                      {"sigma", w.sigma},
                      {"bands_hold", poly::window_bands_hold(w)}}
                     .dump()
              << "\n";
  }
  return 0;
}

// Sparse input is a COO triple list {"dim","d","rows","cols","re","im"};
// a plain matrix document {"dim","re","im"} is densified on the fly.
SparseMatrixOracle oracle_from_input(const json& j, Index sparsity) {
  if (j.contains("rows")) {
    const Index dim = j.at("dim").get<Index>();
    const auto rows = j.at("rows").get<std::vector<Index>>();
    const auto cols = j.at("cols").get<std::vector<Index>>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (cols.size() != rows.size() || re.size() != rows.size() || im.size() != rows.size())
      throw validation_error("COO arrays must have equal length");
    std::vector<SparseMatrixOracle::Triple> coo;
    for (size_t k = 0; k < rows.size(); ++k)
      coo.push_back({rows[k], cols[k], Complex(re[k], im[k])});
    const Index d = sparsity > 0 ? sparsity : j.value("d", Index(0));
    if (d <= 0) throw validation_error("COO input needs a sparsity bound (\"d\" or --sparsity)");
    return SparseMatrixOracle(dim, d, coo);
  }
  const Matrix a = io::matrix_from_json(j);
  Index d = sparsity;
  if (d <= 0) {
    for (Index i = 0; i < a.rows(); ++i) {
      Index nz = 0;
      for (Index c = 0; c < a.cols(); ++c)
        if (a(i, c) != Complex(0.0, 0.0)) ++nz;
      d = std::max(d, nz);
    }
  }
  return oracle_from_dense(a, d);
}

int cmd_encode(const std::string& type, const std::string& input, Index sparsity) {
  const json j = io::load_json_file(input);
  double residual = 0.0, unitarity = 0.0;
  json summary;
  if (type == "gram") {
    const SparseMatrixOracle oracle = oracle_from_input(j, sparsity);
    const Matrix a = oracle.to_dense();
    const auto g = enc::gram_encoding(oracle);
    const Matrix expected = Matrix::Identity(a.rows(), a.cols()) - a;
    residual = (extract_block(g.encoding) - expected).cwiseAbs().maxCoeff();
    unitarity = std::max(unitarity_residual(g.u_left), unitarity_residual(g.u_right));
    summary = {{"type", "gram"},
               {"dim", a.rows()},
               {"sparsity", oracle.sparsity()},
               {"block_residual", residual},
               {"unitarity", unitarity},
               {"queries_per_column", g.queries_per_column}};
  } else if (type == "lcu") {
    const SumHamiltonianSpec spec = io::spec_from_json(j);
    const auto l = enc::lcu_encoding(spec);
    const double jn = static_cast<double>(spec.terms.size());
    const Matrix expected =
        Matrix::Identity(spec.dim(), spec.dim()) - spec.assemble() / jn;
    residual = (extract_block(l.encoding) - expected).cwiseAbs().maxCoeff();
    unitarity = unitarity_residual(l.encoding.unitary);
    summary = {{"type", "lcu"},
               {"dim", spec.dim()},
               {"J", spec.terms.size()},
               {"block_residual", residual},
               {"unitarity", unitarity},
               {"gate_cost_model", l.gate_cost_model}};
  } else {
    throw validation_error("encode type must be gram or lcu");
  }
  std::cout << summary.dump(2) << "\n";
  if (residual > 1e-10 || unitarity > 1e-10)
    throw numerical_error("block-encoding verification failed");
  return 0;
}

int cmd_solve(const std::string& instance_path, double eta, double eps,
              const std::string& mode_name, const std::string& report_path) {
  const inst::QlsInstance in = io::instance_from_json(io::load_json_file(instance_path));
  const HermitianOperator a = promise_rescaled(in);
  const solve::Mode mode =
      mode_name == "amplify" ? solve::Mode::amplify : solve::Mode::postselect;
  auto [x, rep] = solve::solve_postselect(a, in.b, eta, eps, mode);
  (void)x;
  const json jr = io::solve_report_to_json(rep);
  if (report_path.empty()) {
    std::cout << jr.dump(2) << "\n";
  } else {
    io::save_json_file(report_path, jr);
  }
  return 0;
}

int cmd_vtaa(const std::string& instance_path, double eta, double eps,
             const std::string& report_path) {
  const inst::QlsInstance in = io::instance_from_json(io::load_json_file(instance_path));
  const HermitianOperator a = promise_rescaled(in);
  const vtaa::VttSchedule sched = vtaa::build_schedule(a.kappa_bound(), eta, eps);
  auto [x, rep] = vtaa::simulate_vst(a, in.b, sched);
  (void)x;
  const json jr = io::vtaa_report_to_json(rep);
  if (report_path.empty()) {
    std::cout << jr.dump(2) << "\n";
  } else {
    io::save_json_file(report_path, jr);
  }
  return 0;
}

int cmd_sumqls(const std::string& spec_path, const std::string& b_path, double eps,
               const std::string& report_path) {
  json sj = io::load_json_file(spec_path);
  SumHamiltonianSpec spec;
  sumqls::SparseVector b;
  if (sj.contains("spec")) {  // instance envelope
    spec = io::spec_from_json(sj.at("spec"));
    b = io::sparse_vector_from_json(sj.at("b"));
  } else {
    spec = io::spec_from_json(sj);
    if (b_path.empty()) throw validation_error("sumqls needs --b with a sparse vector file");
    b = io::sparse_vector_from_json(io::load_json_file(b_path));
  }
  auto [x, rep] = sumqls::sumqls_solve(spec, b, eps);
  (void)x;
  const json jr = io::sumqls_report_to_json(rep);
  if (report_path.empty()) {
    std::cout << jr.dump(2) << "\n";
  } else {
    io::save_json_file(report_path, jr);
  }
  return 0;
}

struct InstanceFlags {
  std::string family;
  Index n = 16;
  Index m = 2;
  int f = 0;
  Index d = 4;
  int t_gates = 2;
  int qubits = 1;
  double kappa = 8.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_instance(const InstanceFlags& fl) {
  inst::QlsInstance out;
  if (fl.family == "grover") {
    out = inst::grover_diagonal(fl.n, fl.m, fl.seed);
  } else if (fl.family == "promise_majority") {
    out = inst::promise_majority_instance(fl.n, fl.m, fl.f, fl.seed);
  } else if (fl.family == "expander") {
    out = inst::expander_instance(fl.n, fl.d, fl.m, fl.f, fl.seed);
  } else if (fl.family == "feynman_kitaev") {
    out = inst::feynman_kitaev_sumqls(inst::random_circuit(fl.qubits, fl.t_gates, fl.seed));
    out.seed = fl.seed;
  } else if (fl.family == "random_pd") {
    out = inst::random_pd_instance(fl.n, fl.kappa, fl.seed);
  } else {
    throw validation_error("unknown instance family " + fl.family);
  }
  const json j = io::instance_to_json(out);
  if (fl.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    io::save_json_file(fl.out, j);
  }
  return 0;
}

struct SweepFlags {
  std::string command = "solve";
  std::string family = "random_pd";
  std::string kappa_list = "4,8,16";
  std::string n_list = "32";
  std::string seed_list;
  std::string delta_list;
  std::string t_list = "2";
  int qubits = 2;
  double eps = 1e-4;
  double eta = 1.0;
  std::string mode = "amplify";
  std::string out;
  std::string fit;
  int jobs = 1;
};

// Config file mirrors the flag set; explicit flags win over file values.
void apply_sweep_config(SweepFlags& fl, const std::string& path) {
  const json j = io::load_json_file(path);
  fl.command = j.value("command", fl.command);
  fl.family = j.value("family", fl.family);
  fl.kappa_list = j.value("kappa", fl.kappa_list);
  fl.n_list = j.value("n", fl.n_list);
  fl.seed_list = j.value("seeds", fl.seed_list);
  fl.delta_list = j.value("delta", fl.delta_list);
  fl.t_list = j.value("t_gates", fl.t_list);
  fl.qubits = j.value("qubits", fl.qubits);
  fl.eps = j.value("eps", fl.eps);
  fl.eta = j.value("eta", fl.eta);
  fl.mode = j.value("mode", fl.mode);
  fl.out = j.value("out", fl.out);
  fl.fit = j.value("fit", fl.fit);
  fl.jobs = j.value("jobs", fl.jobs);
}

int cmd_sweep(const SweepFlags& fl) {
  std::ostringstream canon;
  canon << fl.command << "|" << fl.family << "|" << fl.kappa_list << "|" << fl.n_list << "|"
        << fl.seed_list << "|" << fl.delta_list << "|" << fl.t_list << "|" << fl.qubits
        << "|" << fl.eps << "|" << fl.eta << "|" << fl.mode;
  const std::uint64_t hash = bench::config_hash(canon.str());

  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  struct Point {
    double kappa = 0.0;  // gate count T for sumqls sweeps
    double n = 0.0;
    std::uint64_t seed = 0;
    double delta = 0.0;
  };
  std::vector<Point> grid;
  std::vector<std::uint64_t> seeds;
  if (fl.seed_list.empty()) {
    seeds = {default_seed()};
  } else {
    for (double s : parse_list(fl.seed_list)) seeds.push_back(static_cast<std::uint64_t>(s));
  }

  if (fl.command == "window") {
    header = {"eps", "delta", "sigma", "degree"};
    for (double d : parse_list(fl.delta_list.empty() ? "0.125,0.0625,0.03125" : fl.delta_list))
      grid.push_back({0.0, 0.0, 0, d});
  } else if (fl.command == "degree") {
    header = {"kappa", "eps", "ell", "degree"};
    for (double k : parse_list(fl.kappa_list)) grid.push_back({k, 0.0, 0, 0.0});
  } else if (fl.command == "sumqls") {
    header = {"n",        "J",     "s",        "d_b",           "kappa_A", "gamma",
              "d_bprime", "QUL",   "QUv",      "gate_estimate", "trace_error"};
    for (double t : parse_list(fl.t_list))
      for (std::uint64_t s : seeds) grid.push_back({t, 0.0, s, 0.0});
  } else {
    header = fl.command == "vtaa" ? vtaa_header() : solver_header();
    for (double k : parse_list(fl.kappa_list))
      for (double n : parse_list(fl.n_list))
        for (std::uint64_t s : seeds) grid.push_back({k, n, s, 0.0});
  }

  auto run_point = [&](const Point& pt) -> CsvRow {
    if (fl.command == "window") {
      const poly::WindowPolynomial w = poly::build_window(fl.eps, pt.delta);
      return {fl.eps, pt.delta, w.sigma, static_cast<long long>(w.degree)};
    }
    if (fl.command == "degree") {
      const int ell = poly::least_ell_certified(pt.kappa, fl.eps);
      return {pt.kappa, fl.eps, static_cast<long long>(ell),
              static_cast<long long>(2 * ell - 1)};
    }
    if (fl.command == "sumqls") {
      const auto in = inst::feynman_kitaev_sumqls(
          inst::random_circuit(fl.qubits, static_cast<int>(pt.kappa), pt.seed));
      auto [x, rep] = sumqls::sumqls_solve(*in.spec, in.b_sparse, fl.eps);
      (void)x;
      return {static_cast<long long>(std::ceil(std::log2(double(in.spec->dim())))),
              static_cast<long long>(rep.j_terms),
              static_cast<long long>(in.spec->max_locality()),
              static_cast<long long>(in.b_sparse.positions.size()),
              rep.kappa_a,
              rep.gamma,
              static_cast<long long>(rep.d_b_prime),
              rep.cost.q_ul,
              rep.cost.q_uv,
              rep.gate_estimate,
              rep.trace_error};
    }
    inst::QlsInstance in;
    if (fl.family == "random_pd") {
      in = inst::random_pd_instance(static_cast<Index>(pt.n), pt.kappa, pt.seed);
    } else if (fl.family == "grover") {
      // kappa = sqrt((N-M)/M) fixes M given N.
      const double m_real = pt.n / (pt.kappa * pt.kappa + 1.0);
      in = inst::grover_diagonal(static_cast<Index>(pt.n),
                                 std::max<Index>(1, static_cast<Index>(std::llround(m_real))),
                                 pt.seed);
    } else {
      throw validation_error("sweep family must be random_pd or grover");
    }
    const HermitianOperator a = promise_rescaled(in);
    if (fl.command == "vtaa") {
      const vtaa::VttSchedule sched = vtaa::build_schedule(a.kappa_bound(), fl.eta, fl.eps);
      auto [x, rep] = vtaa::simulate_vst(a, in.b, sched);
      (void)x;
      return vtaa_row(rep, sched);
    }
    const solve::Mode mode =
        fl.mode == "postselect" ? solve::Mode::postselect : solve::Mode::amplify;
    auto [x, rep] = solve::solve_postselect(a, in.b, fl.eta, fl.eps, mode);
    (void)x;
    return solver_row(rep);
  };

  rows.resize(grid.size());
  if (fl.jobs <= 1) {
    for (size_t i = 0; i < grid.size(); ++i) rows[i] = run_point(grid[i]);
  } else {
    // Points run concurrently with isolated state; the ordered merge keeps
    // output byte-identical to a serial run.
    std::atomic<size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= grid.size()) return;
        try {
          rows[i] = run_point(grid[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < fl.jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  // Sweep rows embed the build identifier and the config hash.
  std::vector<std::string> full_header = header;
  full_header.push_back("build");
  full_header.push_back("config_hash");
  std::ostringstream hh;
  hh << std::hex << hash;
  for (auto& row : rows) {
    row.push_back(std::string(bench::kBuildId));
    row.push_back(hh.str());
  }
  emit(fl.out, full_header, rows);

  if (!fl.fit.empty()) {
    const auto tilde = fl.fit.find('~');
    if (tilde == std::string::npos) throw validation_error("--fit expects y~x");
    const double slope =
        fit_column(full_header, rows, fl.fit.substr(0, tilde), fl.fit.substr(tilde + 1));
    std::cout << "fit " << fl.fit << " slope=" << slope << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"positive-definite quantum linear system solver testbed"};
  app.require_subcommand(1);

  // approx
  auto* approx = app.add_subcommand("approx", "build and sample an inverse approximant");
  int ap_ell = 6;
  double ap_kappa = 15.0;
  int ap_grid = 2000;
  std::string ap_out;
  approx->add_option("--ell", ap_ell);
  approx->add_option("--kappa", ap_kappa);
  approx->add_option("--grid", ap_grid);
  approx->add_option("--out", ap_out);

  // window
  auto* window = app.add_subcommand("window", "build and sample a windowing polynomial");
  double w_eps = 0.05, w_delta = 0.1;
  int w_grid = 2000;
  std::string w_out;
  window->add_option("--eps", w_eps);
  window->add_option("--delta", w_delta);
  window->add_option("--grid", w_grid);
  window->add_option("--out", w_out);

  // encode
  auto* encode = app.add_subcommand("encode", "build and verify a block-encoding");
  std::string e_type = "gram", e_input;
  Index e_sparsity = 0;
  encode->add_option("--type", e_type);
  encode->add_option("--input", e_input)->required();
  encode->add_option("--sparsity", e_sparsity);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "post-selection / amplified PD-QLS solve");
  std::string s_instance, s_mode = "postselect", s_report;
  double s_eta = 1.0, s_eps = 1e-6;
  solve_cmd->add_option("--instance", s_instance)->required();
  solve_cmd->add_option("--eta", s_eta);
  solve_cmd->add_option("--eps", s_eps);
  solve_cmd->add_option("--mode", s_mode);
  solve_cmd->add_option("--report", s_report);

  // vtaa
  auto* vtaa_cmd = app.add_subcommand("vtaa", "variable-time amplified solve");
  std::string v_instance, v_report;
  double v_eta = 1.0, v_eps = 0.05;
  vtaa_cmd->add_option("--instance", v_instance)->required();
  vtaa_cmd->add_option("--eta", v_eta);
  vtaa_cmd->add_option("--eps", v_eps);
  vtaa_cmd->add_option("--report", v_report);

  // sumqls
  auto* sq = app.add_subcommand("sumqls", "Cholesky-preconditioned Sum-QLS pipeline");
  std::string q_spec, q_b, q_report;
  double q_eps = 1e-6;
  sq->add_option("--spec", q_spec)->required();
  sq->add_option("--b", q_b);
  sq->add_option("--eps", q_eps);
  sq->add_option("--report", q_report);

  // instance
  auto* gen = app.add_subcommand("instance", "generate a benchmark instance file");
  InstanceFlags g;
  g.seed = default_seed();
  gen->add_option("--family", g.family)->required();
  gen->add_option("--n", g.n);
  gen->add_option("--m", g.m);
  gen->add_option("--f", g.f);
  gen->add_option("--d", g.d);
  gen->add_option("--t-gates", g.t_gates);
  gen->add_option("--qubits", g.qubits);
  gen->add_option("--kappa", g.kappa);
  gen->add_option("--seed", g.seed);
  gen->add_option("--out", g.out);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "grid runs emitting CSV");
  SweepFlags sw;
  std::string sweep_config;
  sweep->add_option("--config", sweep_config);
  sweep->add_option("--command", sw.command);
  sweep->add_option("--family", sw.family);
  sweep->add_option("--kappa", sw.kappa_list);
  sweep->add_option("--n", sw.n_list);
  sweep->add_option("--seeds", sw.seed_list);
  sweep->add_option("--delta", sw.delta_list);
  sweep->add_option("--t-gates", sw.t_list);
  sweep->add_option("--qubits", sw.qubits);
  sweep->add_option("--eps", sw.eps);
  sweep->add_option("--eta", sw.eta);
  sweep->add_option("--mode", sw.mode);
  sweep->add_option("--out", sw.out);
  sweep->add_option("--fit", sw.fit);
  sweep->add_option("--jobs", sw.jobs);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help();
      return 0;
    }
    std::cerr << e.what() << "\n" << app.help();
    return 64;
  }

  try {
    if (*approx) return cmd_approx(ap_ell, ap_kappa, ap_grid, ap_out);
    if (*window) return cmd_window(w_eps, w_delta, w_grid, w_out);
    if (*encode) return cmd_encode(e_type, e_input, e_sparsity);
    if (*solve_cmd) return cmd_solve(s_instance, s_eta, s_eps, s_mode, s_report);
    if (*vtaa_cmd) return cmd_vtaa(v_instance, v_eta, v_eps, v_report);
    if (*sq) return cmd_sumqls(q_spec, q_b, q_eps, q_report);
    if (*gen) return cmd_instance(g);
    if (*sweep) {
      if (!sweep_config.empty()) {
        // File values fill in whatever the command line left at defaults.
        SweepFlags from_file = sw;
        apply_sweep_config(from_file, sweep_config);
        auto keep = [&](const char* name) { return sweep->count(name) > 0; };
        if (!keep("--command")) sw.command = from_file.command;
        if (!keep("--family")) sw.family = from_file.family;
        if (!keep("--kappa")) sw.kappa_list = from_file.kappa_list;
        if (!keep("--n")) sw.n_list = from_file.n_list;
        if (!keep("--seeds")) sw.seed_list = from_file.seed_list;
        if (!keep("--delta")) sw.delta_list = from_file.delta_list;
        if (!keep("--t-gates")) sw.t_list = from_file.t_list;
        if (!keep("--qubits")) sw.qubits = from_file.qubits;
        if (!keep("--eps")) sw.eps = from_file.eps;
        if (!keep("--eta")) sw.eta = from_file.eta;
        if (!keep("--mode")) sw.mode = from_file.mode;
        if (!keep("--out")) sw.out = from_file.out;
        if (!keep("--fit")) sw.fit = from_file.fit;
        if (!keep("--jobs")) sw.jobs = from_file.jobs;
      }
      return cmd_sweep(sw);
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return err.kind() == Error::Kind::validation ? 2 : 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
  return 64;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace pdqls::cli
