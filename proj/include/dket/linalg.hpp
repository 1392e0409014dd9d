// Dense complex linear algebra substrate: Kronecker products, partial
// traces, SVD/polar decompositions, matrix exponential and Hermitian
// square root. Free functions over Eigen expressions; Eigen carries all
// the numerics.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "dket/types.hpp"

namespace dket {

// Kronecker product with subsystem 1 as the slow index: block (i, j) of the
// result is a(i, j) * b.
template <typename DerivedA, typename DerivedB>
ComplexMatrix tensor(const Eigen::MatrixBase<DerivedA>& a,
                     const Eigen::MatrixBase<DerivedB>& b) {
  return Eigen::kroneckerProduct(a.derived(), b.derived());
}

// Reduced operator of a (dim1*dim2) x (dim1*dim2) matrix on the kept
// subsystem; preserves the trace.
template <typename Derived>
ComplexMatrix partial_trace(const Eigen::MatrixBase<Derived>& m_expr,
                            Eigen::Index dim1, Eigen::Index dim2,
                            Subsystem keep) {
  // materialize once: the index loops below would re-evaluate a lazy
  // product expression on every coefficient access
  const ComplexMatrix& m = m_expr.derived();
  require(dim1 >= 1 && dim2 >= 1, "partial_trace: dimensions must be >= 1");
  require(m.rows() == dim1 * dim2 && m.cols() == dim1 * dim2,
          "partial_trace: matrix must be (dim1*dim2) x (dim1*dim2)");
  if (keep == Subsystem::one) {
    ComplexMatrix out = ComplexMatrix::Zero(dim1, dim1);
    for (Eigen::Index i = 0; i < dim1; ++i)
      for (Eigen::Index k = 0; k < dim1; ++k)
        for (Eigen::Index j = 0; j < dim2; ++j)
          out(i, k) += m(i * dim2 + j, k * dim2 + j);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim2, dim2);
  for (Eigen::Index j = 0; j < dim2; ++j)
    for (Eigen::Index l = 0; l < dim2; ++l)
      for (Eigen::Index i = 0; i < dim1; ++i)
        out(j, l) += m(i * dim2 + j, i * dim2 + l);
  return out;
}

struct SvdDecomposition {
  ComplexMatrix left;        // unitary U
  RealVector singular;       // descending, >= 0
  ComplexMatrix right;       // unitary W, with a = U * diag(s) * W^dag

  ComplexMatrix reconstruct() const {
    ComplexMatrix s = ComplexMatrix::Zero(left.cols(), right.cols());
    const Eigen::Index r = singular.size();
    s.topLeftCorner(r, r) =
        singular.cast<Complex>().asDiagonal().toDenseMatrix();
    return left * s * right.adjoint();
  }
};

template <typename Derived>
SvdDecomposition svd(const Eigen::MatrixBase<Derived>& a) {
  Eigen::JacobiSVD<ComplexMatrix> solver(
      a.derived(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  return SvdDecomposition{solver.matrixU(), solver.singularValues(),
                          solver.matrixV()};
}

struct PolarDecomposition {
  ComplexMatrix unitary;    // V
  ComplexMatrix positive;   // sqrt(a^dag a), with a = V * positive
};

// Polar factors from the SVD, a = (U W^dag)(W S W^dag). Rank-deficient
// input gets its unitary factor completed from the same SVD, which keeps
// the output deterministic.
template <typename Derived>
PolarDecomposition polar(const Eigen::MatrixBase<Derived>& a) {
  require(is_square(a), "polar: matrix must be square");
  const SvdDecomposition d = svd(a);
  ComplexMatrix v = d.left * d.right.adjoint();
  ComplexMatrix p = d.right * d.singular.cast<Complex>().asDiagonal() *
                    d.right.adjoint();
  return PolarDecomposition{std::move(v), std::move(p)};
}

// Matrix exponential (Pade with scaling and squaring, via Eigen).
template <typename Derived>
ComplexMatrix expm(const Eigen::MatrixBase<Derived>& a) {
  require(is_square(a), "expm: matrix must be square");
  ComplexMatrix m = a.derived();
  return m.exp();
}

// Square root of a Hermitian positive semidefinite matrix through its
// spectral decomposition; eigenvalues pushed below zero by roundoff are
// clamped.
template <typename Derived>
ComplexMatrix hermitian_sqrt(const Eigen::MatrixBase<Derived>& a) {
  require(is_square(a), "hermitian_sqrt: matrix must be square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.derived());
  RealVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace dket
