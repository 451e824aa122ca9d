#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace pdqls {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermTol = 1e-12;     // relative Frobenius
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr Index kMaxDim = 4096;        // dense desk-scale cap

// All rejected inputs and failed numerical certificates surface as Error.
// `kind` separates caller mistakes from checks that did not converge, so the
// CLI can map them to distinct exit codes.
class Error : public std::runtime_error {
 public:
  enum class Kind { validation, numerical };
  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline Error validation_error(const std::string& what) {
  return Error(Error::Kind::validation, what);
}
inline Error numerical_error(const std::string& what) {
  return Error(Error::Kind::numerical, what);
}

// Deterministic RNG. mt19937_64 output is fully specified by the standard;
// the distributions below are hand-rolled because std::*_distribution is
// implementation-defined and would break byte-identical sweep outputs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller, pair cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  Complex gaussian() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im);
  }

  // Uniform integer in [0, n), rejection sampled to avoid modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return v % n;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline Matrix random_gaussian_matrix(Index rows, Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.gaussian();
  return m;
}

// Haar-distributed unitary from the QR of a Gaussian matrix with the phase
// convention fix (R diagonal made positive).
Matrix haar_unitary(Index dim, Rng& rng);

// Least-squares slope of log2(y) against log2(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace pdqls
