#pragma once

#include <json.hpp>
#include <string>

#include "pdqls/instances.hpp"
#include "pdqls/solver.hpp"
#include "pdqls/sumqls.hpp"
#include "pdqls/vtaa.hpp"
#include "pdqls/window.hpp"

// Serialization uses the shortest lossless double representation; every value
// round-trips to the identical IEEE-754 bits.
namespace pdqls::io {

using nlohmann::json;

json matrix_to_json(const Matrix& m);                   // {"dim", "re", "im"} row-major
Matrix matrix_from_json(const json& j);
json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

json poly_to_json(const poly::InverseApproximant& p);   // {"basis","coeffs","meta"}
json poly_to_json(const poly::WindowPolynomial& w);

json spec_to_json(const SumHamiltonianSpec& spec);      // {"n"|"dims","terms":[...]}
SumHamiltonianSpec spec_from_json(const json& j);

json sparse_vector_to_json(const sumqls::SparseVector& v);
sumqls::SparseVector sparse_vector_from_json(const json& j);

json instance_to_json(const inst::QlsInstance& inst);
inst::QlsInstance instance_from_json(const json& j);

json solve_report_to_json(const solve::SolveReport& r);
json vtaa_report_to_json(const vtaa::VtaaReport& r);
json sumqls_report_to_json(const sumqls::SumQlsReport& r);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace pdqls::io
