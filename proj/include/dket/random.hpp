// Deterministic pseudo-random test objects: Haar unitaries, densities,
// Ginibre matrices and state vectors.
//
// The generator is a seeded mt19937_64 with an explicit Box-Muller
// transform on top, so that a given seed reproduces the same stream on
// every platform (std::normal_distribution is not pinned by the standard).

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "dket/types.hpp"

namespace dket {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1), 53-bit mantissa from the raw engine output.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = 1.0 - uniform();  // (0, 1], keeps log finite
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double t = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  Complex complex_gaussian() {
    return Complex(gaussian(), gaussian()) / std::sqrt(2.0);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline ComplexMatrix random_ginibre(Eigen::Index rows, Eigen::Index cols,
                                    Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
  return g;
}

// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
// phases folded into Q, which makes the distribution basis-invariant and
// the output deterministic per seed.
inline ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  require(dim >= 1, "random_unitary: dim must be >= 1");
  ComplexMatrix g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0);
  }
  return q;
}

inline ComplexMatrix random_unitary(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

// Hilbert-Schmidt-distributed density matrix, G G^dag normalized to unit
// trace.
inline ComplexMatrix random_density(Eigen::Index dim, Rng& rng) {
  require(dim >= 1, "random_density: dim must be >= 1");
  ComplexMatrix g = random_ginibre(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline ComplexMatrix random_density(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rng);
}

inline ComplexVector random_state(Eigen::Index dim, Rng& rng) {
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
  v.normalize();
  return v;
}

}  // namespace dket
