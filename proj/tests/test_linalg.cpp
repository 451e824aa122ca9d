#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdqls/encoding.hpp"

using namespace pdqls;

namespace {

Matrix random_hermitian(Index n, Rng& rng) {
  Matrix g = random_gaussian_matrix(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

// Hermitian matrix with a prescribed spectrum in [lo, hi].
HermitianOperator random_with_spectrum(Index n, double lo, double hi, Rng& rng) {
  RealVector ev(n);
  for (Index i = 0; i < n; ++i) ev(i) = rng.uniform(lo, hi);
  Matrix v = haar_unitary(n, rng);
  return HermitianOperator(v * ev.asDiagonal() * v.adjoint());
}

}  // namespace

TEST_CASE("eigendecompose: identity and diagonal cases") {
  HermitianOperator id(Matrix::Identity(4, 4));
  const auto& es = eigendecompose(id);
  for (Index i = 0; i < 4; ++i) CHECK(es.values(i) == doctest::Approx(1.0).epsilon(1e-14));

  const double kappa = 15.0;
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0 / kappa;
  d(1, 1) = 1.0;
  HermitianOperator dop(d);
  CHECK(dop.min_eigenvalue() == doctest::Approx(1.0 / 15.0).epsilon(1e-14));
  CHECK(dop.max_eigenvalue() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigendecompose: seeded 8x8 reconstruction") {
  Rng rng(42);
  HermitianOperator h(random_hermitian(8, rng));
  const auto& es = h.spectrum();
  for (Index i = 1; i < 8; ++i) CHECK(es.values(i) >= es.values(i - 1));
  CHECK((es.vectors.adjoint() * es.vectors - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() <
        1e-10);
  CHECK((reconstruct(es) - h.entries()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("eigendecompose rejects non-Hermitian input") {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_WITH_AS(HermitianOperator{bad}, doctest::Contains("asymmetry"),
                       Error);
}

TEST_CASE("dilate_unitary: zero and identity blocks") {
  BlockEncoding z = dilate_unitary(HermitianOperator(Matrix::Zero(2, 2)));
  Matrix expect = Matrix::Zero(4, 4);
  expect.topRightCorner(2, 2) = -Matrix::Identity(2, 2);
  expect.bottomLeftCorner(2, 2) = Matrix::Identity(2, 2);
  CHECK((z.unitary - expect).cwiseAbs().maxCoeff() < 1e-14);

  BlockEncoding one = dilate_unitary(HermitianOperator(Matrix::Identity(3, 3)));
  CHECK((one.unitary - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("dilate_unitary: random block round-trips and stays unitary") {
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    HermitianOperator m = random_with_spectrum(6, -1.0, 1.0, rng);
    BlockEncoding e = dilate_unitary(m);
    validate_encoding(e);
    CHECK((extract_block(e) - m.entries()).cwiseAbs().maxCoeff() < 1e-10);
    const Matrix target = m.entries();
    validate_encoding(e, &target);
  }
}

TEST_CASE("dilate_unitary rejects oversized spectra") {
  Matrix big = 1.5 * Matrix::Identity(2, 2);
  CHECK_THROWS_WITH_AS(dilate_unitary(HermitianOperator{big}),
                       doctest::Contains("spectral radius"), Error);
}

TEST_CASE("apply_postselected: identity dilation returns b with certainty") {
  Rng rng(3);
  BlockEncoding e = dilate_unitary(HermitianOperator(Matrix::Identity(5, 5)));
  Vector raw(5);
  for (Index i = 0; i < 5; ++i) raw(i) = rng.gaussian();
  StateVector b = StateVector(raw).normalized();
  QueryLedger ledger;
  auto [out, p] = apply_postselected(e, b, ledger);
  CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trace_distance(out, b) < 1e-9);
}

TEST_CASE("apply_postselected matches the direct block application") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 4 + static_cast<Index>(rng.below(5));
    HermitianOperator m = random_with_spectrum(n, -0.9, 0.9, rng);
    BlockEncoding e = dilate_unitary(m);
    Vector raw(n);
    for (Index i = 0; i < n; ++i) raw(i) = rng.gaussian();
    StateVector b = StateVector(raw).normalized();
    QueryLedger ledger;
    auto [out, p] = apply_postselected(e, b, ledger);
    Vector direct = extract_block(e) * b.amps;
    CHECK(p == doctest::Approx(direct.squaredNorm()).epsilon(1e-9));
    CHECK(trace_distance(out, StateVector(direct).normalized()) < 1e-9);
  }
}

TEST_CASE("apply_postselected signals null post-selection") {
  // Dilation of the zero matrix maps every b outside the |0> ancilla branch.
  BlockEncoding z = dilate_unitary(HermitianOperator(Matrix::Zero(2, 2)));
  QueryLedger ledger;
  CHECK_THROWS_WITH_AS(apply_postselected(z, basis_state(2, 0), ledger),
                       doctest::Contains("null post-selection"), Error);
}

TEST_CASE("trace_distance: endpoints and the 0.6 overlap identity") {
  StateVector e0 = basis_state(4, 0);
  StateVector e1 = basis_state(4, 1);
  CHECK(trace_distance(e0, e0) == doctest::Approx(0.0));
  CHECK(trace_distance(e0, e1) == doctest::Approx(1.0));

  // |<psi|phi>| = 0.6 gives sqrt(1 - 0.36) = 0.8 exactly.
  Vector psi = Vector::Zero(2), phi = Vector::Zero(2);
  psi(0) = 1.0;
  phi(0) = 0.6;
  phi(1) = 0.8;
  CHECK(trace_distance(StateVector(psi), StateVector(phi)) ==
        doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("trace distance is bounded by the l2 distance") {
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(6));
    Vector a(n), b(n);
    for (Index i = 0; i < n; ++i) {
      a(i) = rng.gaussian();
      b(i) = rng.gaussian();
    }
    StateVector psi = StateVector(a).normalized();
    StateVector phi = StateVector(b).normalized();
    CHECK(trace_distance(psi, phi) <= (psi.amps - phi.amps).norm() + 1e-12);
  }
}

TEST_CASE("ledger counts are cumulative and non-negative") {
  QueryLedger ledger;
  ledger.add("U_B", 3);
  ledger.add("U_B", 4);
  CHECK(ledger.get("U_B") == 7);
  CHECK(ledger.get("U_b") == 0);
  CHECK_THROWS_AS(ledger.add("U_B", -1), Error);

  QueryLedger other;
  other.add("U_B", 2);
  other.add("P_A", 5);
  ledger.merge(other, 3);
  CHECK(ledger.get("U_B") == 13);
  CHECK(ledger.get("P_A") == 15);
}

TEST_CASE("state vector norm cache and normalization flag") {
  Vector v(3);
  v << Complex(3.0, 0.0), Complex(0.0, 4.0), Complex(0.0, 0.0);
  StateVector s(v);
  CHECK(s.norm == doctest::Approx(5.0).epsilon(1e-15));
  CHECK_FALSE(s.is_normalized());
  CHECK(s.normalized().is_normalized());
  CHECK_THROWS_AS(StateVector(Vector::Zero(2)).normalized(), Error);
}
