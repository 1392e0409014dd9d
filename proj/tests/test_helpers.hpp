// Shared helpers for the test suites: Pauli constants and independent
// index-level oracles for the tensor product and partial trace. The
// oracles deliberately avoid the library's own implementations.

#pragma once

#include "dket/types.hpp"

namespace dket::testing {

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// Index-wise Kronecker product straight from the block definition:
// out[(i p + k), (j q + l)] = a(i, j) b(k, l).
inline ComplexMatrix oracle_kron(const ComplexMatrix& a,
                                 const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Explicit index summation sum_j <i j|M|i' j> (keep subsystem 1) or
// sum_i <i j|M|i j'> (keep subsystem 2).
inline ComplexMatrix oracle_ptrace(const ComplexMatrix& m, Eigen::Index d1,
                                   Eigen::Index d2, Subsystem keep) {
  if (keep == Subsystem::one) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (Eigen::Index i = 0; i < d1; ++i)
      for (Eigen::Index ip = 0; ip < d1; ++ip)
        for (Eigen::Index j = 0; j < d2; ++j)
          out(i, ip) += m(i * d2 + j, ip * d2 + j);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Eigen::Index j = 0; j < d2; ++j)
    for (Eigen::Index jp = 0; jp < d2; ++jp)
      for (Eigen::Index i = 0; i < d1; ++i)
        out(j, jp) += m(i * d2 + j, i * d2 + jp);
  return out;
}

}  // namespace dket::testing
