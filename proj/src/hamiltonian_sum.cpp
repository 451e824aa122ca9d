#include "pdqls/hamiltonian_sum.hpp"

#include <numeric>
#include <set>
#include <sstream>

#include "pdqls/hermitian.hpp"

namespace pdqls {

Matrix embed_operator(const Matrix& op, const std::vector<int>& sites,
                      const std::vector<Index>& site_dims) {
  const int n = static_cast<int>(site_dims.size());
  std::set<int> seen;
  Index op_dim = 1;
  for (int s : sites) {
    if (s < 0 || s >= n) throw validation_error("term site index out of range");
    if (!seen.insert(s).second) throw validation_error("term site list has repeated indices");
    op_dim *= site_dims[s];
  }
  if (op.rows() != op_dim || op.cols() != op_dim)
    throw validation_error("term matrix dimension does not match its site list");

  Index full_dim = 1;
  for (Index d : site_dims) full_dim *= d;
  if (full_dim > kMaxDim) throw validation_error("assembled dimension exceeds the dense cap");

  // Digit strides, site 0 most significant.
  std::vector<Index> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * site_dims[k + 1];
  std::vector<Index> op_stride(sites.size(), 1);
  for (int t = static_cast<int>(sites.size()) - 2; t >= 0; --t)
    op_stride[t] = op_stride[t + 1] * site_dims[sites[t + 1]];
  std::vector<bool> in_op(n, false);
  for (int s : sites) in_op[s] = true;

  std::vector<Index> op_part(full_dim), rest_part(full_dim);
  std::vector<Index> slot(full_dim);  // (rest, op) -> full index
  for (Index idx = 0; idx < full_dim; ++idx) {
    Index o = 0, r = 0;
    for (int t = 0; t < static_cast<int>(sites.size()); ++t)
      o += ((idx / stride[sites[t]]) % site_dims[sites[t]]) * op_stride[t];
    for (int k = 0; k < n; ++k)
      if (!in_op[k]) r = r * site_dims[k] + (idx / stride[k]) % site_dims[k];
    op_part[idx] = o;
    rest_part[idx] = r;
    slot[r * op_dim + o] = idx;
  }

  Matrix out = Matrix::Zero(full_dim, full_dim);
  for (Index idx = 0; idx < full_dim; ++idx) {
    const Index r = rest_part[idx];
    const Index oi = op_part[idx];
    for (Index oj = 0; oj < op_dim; ++oj) {
      const Complex v = op(oi, oj);
      if (v != Complex(0.0, 0.0)) out(idx, slot[r * op_dim + oj]) = v;
    }
  }
  return out;
}

Index SumHamiltonianSpec::dim() const {
  Index d = 1;
  for (Index s : site_dims) d *= s;
  return d;
}

int SumHamiltonianSpec::max_locality() const {
  int s = 0;
  for (const auto& t : terms) s = std::max<int>(s, static_cast<int>(t.sites.size()));
  return s;
}

Index SumHamiltonianSpec::max_term_dim() const {
  Index d = 1;
  for (const auto& t : terms) d = std::max(d, t.h.rows());
  return d;
}

void SumHamiltonianSpec::validate() const {
  if (site_dims.empty() || terms.empty())
    throw validation_error("spec needs at least one site and one term");
  for (Index d : site_dims)
    if (d < 2) throw validation_error("site dimensions must be >= 2");
  for (size_t j = 0; j < terms.size(); ++j) {
    const auto& t = terms[j];
    Index want = 1;
    std::set<int> seen;
    for (int s : t.sites) {
      if (s < 0 || s >= num_sites()) throw validation_error("term site index out of range");
      if (!seen.insert(s).second)
        throw validation_error("term site list has repeated indices");
      want *= site_dims[s];
    }
    if (t.h.rows() != want || t.h.cols() != want) {
      std::ostringstream os;
      os << "term " << j << ": matrix is " << t.h.rows() << "x" << t.h.cols()
         << " but its sites span dimension " << want;
      throw validation_error(os.str());
    }
    HermitianOperator h(t.h);  // rejects non-Hermitian
    const double lmin = h.min_eigenvalue();
    const double lmax = h.max_eigenvalue();
    if (lmin < -1e-12 * std::max(1.0, std::abs(lmax))) {
      std::ostringstream os;
      os << "term " << j << " is not positive semi-definite (lambda_min = " << lmin << ")";
      throw validation_error(os.str());
    }
  }
}

void SumHamiltonianSpec::validate_norm_bound() const {
  for (size_t j = 0; j < terms.size(); ++j) {
    const double lmax = HermitianOperator(terms[j].h).max_eigenvalue();
    if (lmax > 2.0 + 1e-12) {
      std::ostringstream os;
      os << "term " << j << " violates ||h|| <= 2 (lambda_max = " << lmax << ")";
      throw validation_error(os.str());
    }
  }
}

Matrix SumHamiltonianSpec::assemble() const {
  Matrix a = Matrix::Zero(dim(), dim());
  for (int j = 0; j < static_cast<int>(terms.size()); ++j) a += embed_term(j);
  return a;
}

Matrix SumHamiltonianSpec::embed_term(int j) const {
  return embed_operator(terms[j].h, terms[j].sites, site_dims);
}

SumHamiltonianSpec qubit_spec(int n_qubits, std::vector<SumHamiltonianSpec::Term> terms) {
  SumHamiltonianSpec spec;
  spec.site_dims.assign(n_qubits, 2);
  spec.terms = std::move(terms);
  return spec;
}

}  // namespace pdqls
