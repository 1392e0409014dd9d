// Bell POVMs built from unitary spanning sets, Born-rule measurement,
// Bell observables with injective eigenvalue labelings, and the tensor
// form of the observable through the group Fourier transform.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "dket/doubleket.hpp"
#include "dket/spanning.hpp"
#include "dket/types.hpp"

namespace dket {

// POVM whose effects are w_k |U_k>><<U_k| with U_k unitary; every effect
// projects (up to weight) onto a maximally entangled state and the effects
// resolve the identity on H (x) H.
struct BellPovm {
  Eigen::Index dim = 0;
  std::vector<ComplexMatrix> effects;    // N^2 x N^2 rank-1 positives
  std::vector<ComplexMatrix> unitaries;  // the U_k
  std::vector<double> weights;
  std::vector<std::string> labels;

  std::size_t size() const { return effects.size(); }
};

inline BellPovm bell_povm(const std::vector<ComplexMatrix>& unitaries,
                          const std::vector<double>& weights,
                          std::vector<std::string> labels = {},
                          double tol = kDefaultTol) {
  require(!unitaries.empty(), "bell_povm: need at least one unitary");
  require(unitaries.size() == weights.size(),
          "bell_povm: unitaries and weights must have equal length");
  const Eigen::Index n = unitaries.front().rows();
  if (labels.empty())
    for (std::size_t k = 0; k < unitaries.size(); ++k)
      labels.push_back(std::to_string(k));
  require(labels.size() == unitaries.size(),
          "bell_povm: labels length mismatch");

  BellPovm p;
  p.dim = n;
  ComplexMatrix sum = ComplexMatrix::Zero(n * n, n * n);
  for (std::size_t k = 0; k < unitaries.size(); ++k) {
    const ComplexMatrix& u = unitaries[k];
    require(u.rows() == n && u.cols() == n, "bell_povm: dimension mismatch");
    if (!is_unitary(u, 1e-8))
      throw std::invalid_argument("bell_povm: element " + labels[k] +
                                  " is not unitary");
    const DoubleKet ket{u / std::sqrt(double(n))};
    require(is_max_entangled(ket),
            "bell_povm: |U>>/sqrt(N) is not maximally entangled");
    const ComplexVector v = as_vector(DoubleKet{u});
    p.effects.push_back(weights[k] * (v * v.adjoint()));
    sum += p.effects.back();
  }
  const double resolution_residual =
      (sum - ComplexMatrix::Identity(n * n, n * n)).norm();
  if (resolution_residual > tol)
    throw std::invalid_argument(
        "bell_povm: effects do not resolve the identity (residual " +
        std::to_string(resolution_residual) + ")");
  p.unitaries = unitaries;
  p.weights = weights;
  p.labels = std::move(labels);
  return p;
}

inline BellPovm bell_povm(const ZnZnBasis& basis, double tol = kDefaultTol) {
  const SpanningSet s = basis.to_spanning_set();
  return bell_povm(s.elements, s.weights, s.labels, tol);
}

// Born rule over the effects; probabilities sum to one for a valid state.
inline std::vector<double> measure(const BellPovm& p, const ComplexMatrix& state,
                                   double tol = 1e-8) {
  require(state.rows() == p.dim * p.dim && state.cols() == p.dim * p.dim,
          "measure: state must live on H (x) H");
  if (!is_density(state, tol))
    throw std::invalid_argument("measure: state is not a density matrix");
  std::vector<double> probs;
  probs.reserve(p.size());
  for (const auto& effect : p.effects)
    probs.push_back(std::max(0.0, (state * effect).trace().real()));
  return probs;
}

struct BellObservable {
  std::vector<double> eigenvalues;  // f_k, aligned with the POVM labels
  ComplexMatrix op;                 // sum_k f_k Pi_k, self-adjoint
};

// O = sum_k f_k Pi_k. f must be injective on the labels (minimum pairwise
// gap below rejects), otherwise the read eigenvalue would not identify the
// unitary that completes the teleportation.
inline BellObservable bell_observable(const BellPovm& p,
                                      const std::vector<double>& f,
                                      double min_gap = 1e-9) {
  require(f.size() == p.size(),
          "bell_observable: f must assign a value per effect");
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (std::abs(f[i] - f[j]) < min_gap)
        throw std::invalid_argument(
            "bell_observable: f is not injective, labels " + p.labels[i] +
            " and " + p.labels[j] + " collide");
  ComplexMatrix op = ComplexMatrix::Zero(p.dim * p.dim, p.dim * p.dim);
  for (std::size_t k = 0; k < p.size(); ++k) op += f[k] * p.effects[k];
  return BellObservable{f, std::move(op)};
}

// Tensor form of the Z_N x Z_N Bell observable,
//   O = (1/N^2) sum_g ft(-g) U_g (x) U_g^*,
// which equals the direct form sum_g f(g) (1/N)|U_g>><<U_g|. Both the
// constant and the group inversion are pinned by that defining equality:
// the 1/N^2 comes from the discrete 1/N weights entering twice through
// the resolution of |1>><<1|, and expanding the direct form with the
// commutation phase leaves each U_g (x) U_g^* carrying the transform of f
// at the inverse element (at N = 2 every element is its own inverse, which
// hides the distinction).
inline ComplexMatrix observable_tensor_form(Eigen::Index n,
                                            const std::vector<double>& f) {
  require(static_cast<Eigen::Index>(f.size()) == n * n,
          "observable_tensor_form: f must have N^2 entries");
  std::vector<Complex> fc(f.begin(), f.end());
  const std::vector<Complex> ft = group_fourier(n, fc);
  const ZnZnBasis basis(n);
  ComplexMatrix op = ComplexMatrix::Zero(n * n, n * n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index nn = 0; nn < n; ++nn) {
      const Complex coeff =
          ft[static_cast<std::size_t>(((n - m) % n) * n + (n - nn) % n)];
      op += coeff * tensor(basis.element(m, nn),
                           basis.element(m, nn).conjugate());
    }
  return op / static_cast<double>(n * n);
}

}  // namespace dket
