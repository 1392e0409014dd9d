// Core dense types and numeric conventions shared by the whole library.
//
// Composite-system indexing convention, fixed globally: subsystem 1 is the
// slow (most significant) index, so the product basis vector |i>_1 |j>_2 of
// an N x M system sits at row i*M + j of the composite coefficient vector.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace dket {

template <typename Scalar>
using ComplexMatrixT =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVectorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using ComplexMatrix = ComplexMatrixT<double>;
using ComplexVector = ComplexVectorT<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

// Default absolute tolerance, Frobenius norm, for double precision at the
// dimensions this library targets (<= ~100).
inline constexpr double kDefaultTol = 1e-10;

enum class Subsystem { one, two };

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw DimensionError(msg);
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

template <typename Derived>
bool is_square(const Eigen::MatrixBase<Derived>& m) {
  return m.rows() == m.cols();
}

template <typename DerivedA, typename DerivedB>
double frobenius_distance(const Eigen::MatrixBase<DerivedA>& a,
                          const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).norm();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  double tol = kDefaultTol) {
  if (!is_square(m)) return false;
  return (m - m.adjoint()).norm() <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = kDefaultTol) {
  if (!is_square(m)) return false;
  using Mat = ComplexMatrixT<typename Derived::RealScalar>;
  Mat id = Mat::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).norm() <= tol;
}

// Positive semidefinite with unit trace, up to tol.
template <typename Derived>
bool is_density(const Eigen::MatrixBase<Derived>& m, double tol = 1e-8) {
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(m.trace() - std::complex<typename Derived::RealScalar>(1)) >
      tol)
    return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrixT<typename Derived::RealScalar>>
      es(m.derived());
  return es.eigenvalues().minCoeff() >= -tol;
}

}  // namespace dket
