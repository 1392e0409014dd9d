// Spanning sets of operators and the four equivalent completeness
// statements, as executable checks:
//   1. kernel-reproducing property plus frame-operator rank,
//   2. reconstruction of arbitrary operators,
//   3. matrixelement orthogonality over all index quadruples,
//   4. depolarizing property sum_k w_k B_k^dag A B_k = Tr[A] 1.
// Also the Z_N x Z_N shift-multiply unitary basis, its commutation phase,
// and the Fourier transform over the group.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "dket/doubleket.hpp"
#include "dket/linalg.hpp"
#include "dket/random.hpp"
#include "dket/types.hpp"

namespace dket {

// Finite weighted family {(w_k, B_k)} on a dim-dimensional space. The
// weights discretize the measure, so completeness is claimed as
// sum_k w_k Tr[B_k^dag A] B_k = A. Elements are stored unnormalized (for
// Z_N x Z_N they are honest unitaries with weight 1/N): the POVM and
// observable constructions need the unitaries themselves.
struct SpanningSet {
  Eigen::Index dim = 0;
  std::vector<ComplexMatrix> elements;
  std::vector<double> weights;
  std::vector<std::string> labels;

  std::size_t size() const { return elements.size(); }

  void validate() const {
    require(dim >= 1, "SpanningSet: dim must be >= 1");
    require(elements.size() == weights.size() &&
                elements.size() == labels.size(),
            "SpanningSet: elements, weights, labels must have equal length");
    require(!elements.empty(), "SpanningSet: set must be non-empty");
    for (const auto& e : elements)
      require(e.rows() == dim && e.cols() == dim,
              "SpanningSet: all elements must be dim x dim");
    for (double w : weights)
      require(w > 0.0, "SpanningSet: weights must be positive");
  }
};

struct CheckReport {
  std::string statement;
  double max_residual = 0.0;
  // Minimum eigenvalue of the operator-space frame matrix; only statement 1
  // fills it (NaN elsewhere). It stands in for the "only A = 0 has vanishing
  // coefficients" clause, which is not machine-checkable over all A.
  double frame_min_eig = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
  double tol = kDefaultTol;
};

// Minimum eigenvalue above which a frame operator counts as full-rank.
inline constexpr double kFrameEigThreshold = 1e-8;

// Frame matrix F = sum_k w_k vec(B_k) vec(B_k)^dag on operator space.
inline ComplexMatrix frame_operator(const SpanningSet& s) {
  const Eigen::Index n2 = s.dim * s.dim;
  ComplexMatrix f = ComplexMatrix::Zero(n2, n2);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const ComplexVector v = as_vector(DoubleKet{s.elements[k]});
    f += s.weights[k] * (v * v.adjoint());
  }
  return f;
}

// Statement 1: Delta(l, l') = Tr[B_l^dag B_l'] must reproduce the set,
// sum_k w_k Delta(k, j) B_k = B_j, and the frame operator must have no
// kernel.
inline CheckReport check_statement1(const SpanningSet& s, int /*trials*/ = 0,
                                    std::uint64_t /*seed*/ = 0,
                                    double tol = kDefaultTol) {
  s.validate();
  double max_res = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    ComplexMatrix acc = ComplexMatrix::Zero(s.dim, s.dim);
    for (std::size_t k = 0; k < s.size(); ++k) {
      const Complex delta = (s.elements[k].adjoint() * s.elements[j]).trace();
      acc += s.weights[k] * delta * s.elements[k];
    }
    max_res = std::max(max_res, (acc - s.elements[j]).norm());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(frame_operator(s));
  const double min_eig = es.eigenvalues().minCoeff();
  CheckReport r;
  r.statement = "statement1";
  r.max_residual = max_res;
  r.frame_min_eig = min_eig;
  r.tol = tol;
  r.pass = max_res <= tol && min_eig > kFrameEigThreshold;
  return r;
}

// Statement 2: sum_k w_k Tr[B_k^dag A] B_k = A for random A.
inline CheckReport check_statement2(const SpanningSet& s, int trials,
                                    std::uint64_t seed,
                                    double tol = kDefaultTol) {
  s.validate();
  Rng rng(seed);
  double max_res = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix a = random_ginibre(s.dim, s.dim, rng);
    ComplexMatrix acc = ComplexMatrix::Zero(s.dim, s.dim);
    for (std::size_t k = 0; k < s.size(); ++k)
      acc += s.weights[k] * (s.elements[k].adjoint() * a).trace() *
             s.elements[k];
    max_res = std::max(max_res, (acc - a).norm());
  }
  CheckReport r;
  r.statement = "statement2";
  r.max_residual = max_res;
  r.tol = tol;
  r.pass = max_res <= tol;
  return r;
}

// Statement 3: sum_k w_k <n|B_k^dag|m><l|B_k|k'> = delta_{n k'} delta_{m l},
// evaluated exactly over all dim^4 index combinations.
inline CheckReport check_statement3(const SpanningSet& s,
                                    double tol = kDefaultTol) {
  s.validate();
  const Eigen::Index d = s.dim;
  double max_res = 0.0;
  for (Eigen::Index n = 0; n < d; ++n)
    for (Eigen::Index m = 0; m < d; ++m)
      for (Eigen::Index l = 0; l < d; ++l)
        for (Eigen::Index k2 = 0; k2 < d; ++k2) {
          Complex acc = 0.0;
          for (std::size_t k = 0; k < s.size(); ++k)
            acc += s.weights[k] * std::conj(s.elements[k](m, n)) *
                   s.elements[k](l, k2);
          const double target = (n == k2 && m == l) ? 1.0 : 0.0;
          max_res = std::max(max_res, std::abs(acc - target));
        }
  CheckReport r;
  r.statement = "statement3";
  r.max_residual = max_res;
  r.tol = tol;
  r.pass = max_res <= tol;
  return r;
}

// Statement 4: sum_k w_k B_k^dag A B_k = Tr[A] 1 for random A.
inline CheckReport check_statement4(const SpanningSet& s, int trials,
                                    std::uint64_t seed,
                                    double tol = kDefaultTol) {
  s.validate();
  Rng rng(seed);
  double max_res = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix a = random_ginibre(s.dim, s.dim, rng);
    ComplexMatrix acc = ComplexMatrix::Zero(s.dim, s.dim);
    for (std::size_t k = 0; k < s.size(); ++k)
      acc += s.weights[k] * s.elements[k].adjoint() * a * s.elements[k];
    const ComplexMatrix target =
        a.trace() * ComplexMatrix::Identity(s.dim, s.dim);
    max_res = std::max(max_res, (acc - target).norm());
  }
  CheckReport r;
  r.statement = "statement4";
  r.max_residual = max_res;
  r.tol = tol;
  r.pass = max_res <= tol;
  return r;
}

// sum_k w_k B_k (x) B_k^* = |1>><<1|.
inline CheckReport std_ent_check(const SpanningSet& s,
                                 double tol = kDefaultTol) {
  s.validate();
  const ComplexVector id_vec = as_vector(doubleket_identity(s.dim));
  const ComplexMatrix target = id_vec * id_vec.adjoint();
  ComplexMatrix acc = ComplexMatrix::Zero(target.rows(), target.cols());
  for (std::size_t k = 0; k < s.size(); ++k)
    acc += s.weights[k] * tensor(s.elements[k], s.elements[k].conjugate());
  CheckReport r;
  r.statement = "std_ent";
  r.max_residual = (acc - target).norm();
  r.tol = tol;
  r.pass = r.max_residual <= tol;
  return r;
}

// sum_k w_k (B_k (x) B_k^dag)|A>> = |A^T>> for random A.
inline CheckReport transposer_check(const SpanningSet& s, int trials,
                                    std::uint64_t seed,
                                    double tol = kDefaultTol) {
  s.validate();
  Rng rng(seed);
  double max_res = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix a = random_ginibre(s.dim, s.dim, rng);
    const ComplexVector in = as_vector(DoubleKet{a});
    ComplexVector acc = ComplexVector::Zero(in.size());
    for (std::size_t k = 0; k < s.size(); ++k)
      acc += s.weights[k] *
             (tensor(s.elements[k], s.elements[k].adjoint()) * in);
    const ComplexVector target = as_vector(DoubleKet{a.transpose()});
    max_res = std::max(max_res, (acc - target).norm());
  }
  CheckReport r;
  r.statement = "transposer";
  r.max_residual = max_res;
  r.tol = tol;
  r.pass = max_res <= tol;
  return r;
}

inline std::vector<CheckReport> run_all_checks(const SpanningSet& s,
                                               int trials, std::uint64_t seed,
                                               double tol = kDefaultTol) {
  return {check_statement1(s, trials, seed, tol),
          check_statement2(s, trials, seed, tol), check_statement3(s, tol),
          check_statement4(s, trials, seed, tol)};
}

// The N-dimensional shift-multiply unitaries
//   U(m, n) = sum_k w^{km} |k><k (+) n|,  w = exp(+2 pi i / N),
// indexed row-major in (m, n), each carrying weight 1/N.
class ZnZnBasis {
 public:
  explicit ZnZnBasis(Eigen::Index n) : dim_(n) {
    require(n >= 1, "ZnZnBasis: N must be >= 1");
    elements_.reserve(static_cast<std::size_t>(n) * n);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (Eigen::Index m = 0; m < n; ++m)
      for (Eigen::Index s = 0; s < n; ++s) {
        ComplexMatrix u = ComplexMatrix::Zero(n, n);
        for (Eigen::Index k = 0; k < n; ++k)
          u(k, (k + s) % n) = std::polar(1.0, step * double(k) * double(m));
        elements_.push_back(std::move(u));
      }
  }

  Eigen::Index dim() const { return dim_; }
  double weight() const { return 1.0 / static_cast<double>(dim_); }
  std::size_t size() const { return elements_.size(); }

  const ComplexMatrix& element(Eigen::Index m, Eigen::Index n) const {
    require(m >= 0 && m < dim_ && n >= 0 && n < dim_,
            "ZnZnBasis: index out of range");
    return elements_[static_cast<std::size_t>(m * dim_ + n)];
  }
  const ComplexMatrix& element(std::size_t flat) const {
    return elements_.at(flat);
  }

  SpanningSet to_spanning_set() const {
    SpanningSet s;
    s.dim = dim_;
    s.elements = elements_;
    s.weights.assign(size(), weight());
    for (Eigen::Index m = 0; m < dim_; ++m)
      for (Eigen::Index n = 0; n < dim_; ++n)
        s.labels.push_back(std::to_string(m) + "," + std::to_string(n));
    return s;
  }

 private:
  Eigen::Index dim_;
  std::vector<ComplexMatrix> elements_;
};

inline ZnZnBasis znzn_basis(Eigen::Index n) { return ZnZnBasis(n); }

// Phase in U(m,n) U(m',n') U(m,n)^dag = phase * U(m',n').
inline Complex commutation_phase(Eigen::Index n, Eigen::Index m1,
                                 Eigen::Index n1, Eigen::Index m2,
                                 Eigen::Index n2) {
  require(n >= 1, "commutation_phase: N must be >= 1");
  auto in_range = [n](Eigen::Index i) { return i >= 0 && i < n; };
  require(in_range(m1) && in_range(n1) && in_range(m2) && in_range(n2),
          "commutation_phase: index out of range");
  const double arg = 2.0 * std::numbers::pi / static_cast<double>(n) *
                     static_cast<double>(n1 * m2 - m1 * n2);
  return std::polar(1.0, arg);
}

// Fourier transform over Z_N x Z_N with the symplectic kernel:
//   ft(m, n) = sum_{m', n'} exp((2 pi i / N)(n m' - m n')) f(m', n').
// Tables are row-major in (m, n) with N^2 entries. The kernel is Hermitian,
// so applying the transform twice returns N^2 * f.
inline std::vector<Complex> group_fourier(Eigen::Index n,
                                          const std::vector<Complex>& f) {
  require(n >= 1, "group_fourier: N must be >= 1");
  require(static_cast<Eigen::Index>(f.size()) == n * n,
          "group_fourier: table must have N^2 entries");
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  std::vector<Complex> out(f.size(), Complex(0.0));
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index nn = 0; nn < n; ++nn) {
      Complex acc = 0.0;
      for (Eigen::Index mp = 0; mp < n; ++mp)
        for (Eigen::Index np = 0; np < n; ++np)
          acc += std::polar(1.0, step * double(nn * mp - m * np)) *
                 f[static_cast<std::size_t>(mp * n + np)];
      out[static_cast<std::size_t>(m * n + nn)] = acc;
    }
  return out;
}

}  // namespace dket
