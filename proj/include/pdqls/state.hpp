#pragma once

#include "pdqls/common.hpp"

namespace pdqls {

// Amplitude vector with its norm cached at construction.
struct StateVector {
  Vector amps;
  double norm = 0.0;

  StateVector() = default;
  explicit StateVector(Vector v) : amps(std::move(v)), norm(amps.norm()) {}

  Index dim() const { return amps.size(); }
  bool is_normalized(double tol = kHermTol) const { return std::abs(norm - 1.0) <= tol; }

  StateVector normalized() const {
    if (norm == 0.0) throw validation_error("cannot normalize the zero vector");
    return StateVector(Vector(amps / norm));
  }
};

inline StateVector basis_state(Index dim, Index k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return StateVector(std::move(v));
}

// d_Tr(psi, phi) = sqrt(1 - |<psi|phi>|^2) for normalized pure states.
double trace_distance(const StateVector& psi, const StateVector& phi);

}  // namespace pdqls
