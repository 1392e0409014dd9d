// Double-ket correspondence between N x M matrices and bipartite vectors:
// |C>> = sum_ij c_ij |i>_1 |j>_2, together with the identities it induces
// (local action, inner products, dyad partial traces, Schmidt form,
// maximal-entanglement tests, hat-map).
//
// Transposition and conjugation are always taken in the fixed computational
// basis; the correspondence is basis-dependent and no basis parameter is
// exposed.

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "dket/linalg.hpp"
#include "dket/types.hpp"

namespace dket {

struct DoubleKet {
  ComplexMatrix mat;  // coefficient matrix C; rows -> subsystem 1

  Eigen::Index dim1() const { return mat.rows(); }
  Eigen::Index dim2() const { return mat.cols(); }
};

inline DoubleKet doubleket_identity(Eigen::Index n) {
  return DoubleKet{ComplexMatrix::Identity(n, n)};
}

// Row-major flatten of the coefficient matrix: entry c_ij lands at row
// i*M + j, matching the composite basis |i>_1 |j>_2.
inline ComplexVector as_vector(const DoubleKet& k) {
  return k.mat.transpose().reshaped();
}

inline DoubleKet from_vector(const ComplexVector& v, Eigen::Index n,
                             Eigen::Index m) {
  require(v.size() == n * m, "from_vector: vector must have n*m entries");
  ComplexMatrix c = v.reshaped(m, n).transpose();
  return DoubleKet{std::move(c)};
}

// (A (x) B)|C>> = |A C B^T>>.
template <typename DerivedA, typename DerivedB>
DoubleKet apply_local(const Eigen::MatrixBase<DerivedA>& a,
                      const Eigen::MatrixBase<DerivedB>& b,
                      const DoubleKet& k) {
  require(a.cols() == k.dim1(), "apply_local: a does not match subsystem 1");
  require(b.cols() == k.dim2(), "apply_local: b does not match subsystem 2");
  return DoubleKet{a.derived() * k.mat * b.derived().transpose()};
}

// <<A|B>> = Tr[A^dag B].
inline Complex dk_inner(const DoubleKet& a, const DoubleKet& b) {
  require(a.dim1() == b.dim1() && a.dim2() == b.dim2(),
          "dk_inner: dimension mismatch");
  return (a.mat.adjoint() * b.mat).trace();
}

// Partial trace of the dyad |A>><<B|:
//   keep 1 -> A B^dag,   keep 2 -> A^T B^*.
inline ComplexMatrix dyad_ptrace(const DoubleKet& a, const DoubleKet& b,
                                 Subsystem keep) {
  require(a.dim1() == b.dim1() && a.dim2() == b.dim2(),
          "dyad_ptrace: dimension mismatch");
  if (keep == Subsystem::one) return a.mat * b.mat.adjoint();
  return a.mat.transpose() * b.mat.conjugate();
}

struct SchmidtForm {
  RealVector coefficients;           // sqrt(lambda_i), descending
  std::vector<ComplexVector> left;   // orthonormal vectors on subsystem 1
  std::vector<ComplexVector> right;  // orthonormal vectors on subsystem 2

  DoubleKet reconstruct() const {
    const Eigen::Index n = left.empty() ? 0 : left.front().size();
    const Eigen::Index m = right.empty() ? 0 : right.front().size();
    ComplexMatrix c = ComplexMatrix::Zero(n, m);
    for (Eigen::Index i = 0; i < coefficients.size(); ++i)
      c += coefficients(i) * left[i] * right[i].transpose();
    return DoubleKet{std::move(c)};
  }
};

// Schmidt decomposition through the SVD of the coefficient matrix,
// |C>> = sum_i s_i |u_i>|conj(v_i)>. Each left vector gets its first
// nonzero component rotated to the positive real axis, with the opposite
// phase pushed onto the right partner, so the output is deterministic.
inline SchmidtForm schmidt(const DoubleKet& k) {
  const SvdDecomposition d = svd(k.mat);
  const Eigen::Index r = std::min(k.dim1(), k.dim2());
  SchmidtForm out;
  out.coefficients = d.singular.head(r);
  out.left.reserve(r);
  out.right.reserve(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    ComplexVector l = d.left.col(i);
    ComplexVector rv = d.right.col(i).conjugate();
    for (Eigen::Index c = 0; c < l.size(); ++c) {
      if (std::abs(l(c)) > 1e-14) {
        const Complex phase = l(c) / std::abs(l(c));
        l *= std::conj(phase);
        rv *= phase;
        break;
      }
    }
    out.left.push_back(std::move(l));
    out.right.push_back(std::move(rv));
  }
  return out;
}

// True iff the state is of the form |U>>/sqrt(N) with U unitary,
// equivalently C C^dag = 1/N. Input states may come from user files, hence
// the looser default tolerance.
inline bool is_max_entangled(const DoubleKet& k, double tol = 1e-8) {
  require(k.dim1() == k.dim2(), "is_max_entangled: state must be square");
  const Eigen::Index n = k.dim1();
  ComplexMatrix target = ComplexMatrix::Identity(n, n) / double(n);
  return (k.mat * k.mat.adjoint() - target).norm() <= tol;
}

// The local unitary connecting two maximally entangled states:
// |U>> = (U V^dag (x) 1)|V>>.
template <typename DerivedU, typename DerivedV>
ComplexMatrix local_connector(const Eigen::MatrixBase<DerivedU>& u,
                              const Eigen::MatrixBase<DerivedV>& v,
                              double tol = kDefaultTol) {
  require(is_unitary(u, tol), "local_connector: u is not unitary");
  require(is_unitary(v, tol), "local_connector: v is not unitary");
  return u.derived() * v.adjoint();
}

// Contraction of an operator on H (x) H to an operator on H such that
// A|1>> = |hat(A)^T>> = (1 (x) hat(A))|1>>. Note the index-sum
// hat(A)_{ij} = sum_l <i|<j|A|l>|l> produces the transpose of this object;
// the identity on |1>> is what the library treats as defining.
template <typename Derived>
ComplexMatrix hat_map(const Eigen::MatrixBase<Derived>& a) {
  require(is_square(a), "hat_map: operator must be square");
  const auto n = static_cast<Eigen::Index>(std::llround(
      std::sqrt(static_cast<double>(a.rows()))));
  require(n * n == a.rows(), "hat_map: dimension must be a perfect square");
  const ComplexVector image = a.derived() * as_vector(doubleket_identity(n));
  return from_vector(image, n, n).mat.transpose();
}

}  // namespace dket
