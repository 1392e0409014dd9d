// Weyl-Heisenberg constructions on a truncated Fock space: displacement
// operators, the two-mode Z_12 = a_1 - a_2^dag operator, its eigen-relation
// on displacement double-kets, and grid-quadrature group averages.
//
// Truncation corrupts the top of the spectrum, so every assertion here is
// stated on an interior projection (photon numbers below interior_cut) and
// reported together with its decay as n_max grows. Tolerances are
// calibrated by convergence measurement, not taken from any exact
// infinite-dimensional statement.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dket/doubleket.hpp"
#include "dket/linalg.hpp"
#include "dket/types.hpp"

namespace dket {

// Annihilation operator with a|n> = sqrt(n)|n-1> on states |0>..|n_max-1>.
// Real in the Fock basis. [a, a^dag] = 1 holds only below the top level.
inline RealMatrix annihilation(Eigen::Index n_max) {
  require(n_max >= 2, "annihilation: n_max must be >= 2");
  RealMatrix a = RealMatrix::Zero(n_max, n_max);
  for (Eigen::Index n = 1; n < n_max; ++n)
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// D(z) = exp(z a^dag - z^* a) on the truncated space. The generator is
// anti-Hermitian, so the exponential goes through the spectral
// decomposition of i-times-it and the result is unitary to solver
// accuracy.
inline ComplexMatrix displacement(Complex z, Eigen::Index n_max) {
  const RealMatrix a = annihilation(n_max);
  const ComplexMatrix gen =
      z * a.transpose().cast<Complex>() - std::conj(z) * a.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(Complex(0, -1) * gen);
  ComplexVector phases(n_max);
  for (Eigen::Index i = 0; i < n_max; ++i)
    phases(i) = std::polar(1.0, es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

// Z_12 = a (x) 1 - 1 (x) a^dag on Fock (x) Fock.
inline ComplexMatrix z12_operator(Eigen::Index n_max) {
  const ComplexMatrix a = annihilation(n_max).cast<Complex>();
  const ComplexMatrix id = ComplexMatrix::Identity(n_max, n_max);
  return tensor(a, id) - tensor(id, a.adjoint());
}

struct ResidualReport {
  Eigen::Index n_max = 0;
  Eigen::Index interior_cut = 0;
  double residual = 0.0;
};

// Relative interior residual of Z_12 |D(z)>> = z |D(z)>>:
//   || P (Z_12|D>> - z|D>>) || / || P |D>> ||
// with P projecting both modes below interior_cut. Since a is real in the
// Fock basis the double-ket identity collapses to matrices:
// Z_12|D>> = |aD - Da>>, so the check runs at n_max x n_max cost.
inline ResidualReport eigen_relation_check(Complex z, Eigen::Index n_max,
                                           Eigen::Index interior_cut) {
  require(interior_cut >= 1 && interior_cut < n_max,
          "eigen_relation_check: need 1 <= interior_cut < n_max");
  const RealMatrix a = annihilation(n_max);
  const ComplexMatrix d = displacement(z, n_max);
  const ComplexMatrix r = a * d - d * a - z * d;
  const double num = r.topLeftCorner(interior_cut, interior_cut).norm();
  const double den = d.topLeftCorner(interior_cut, interior_cut).norm();
  return ResidualReport{n_max, interior_cut, num / den};
}

// Relative interior residual of the Weyl composition rule
//   D(z) D(w) = exp(i Im(z conj(w))) D(z + w).
inline ResidualReport weyl_composition_check(Complex z, Complex w,
                                             Eigen::Index n_max,
                                             Eigen::Index interior_cut) {
  require(interior_cut >= 1 && interior_cut < n_max,
          "weyl_composition_check: need 1 <= interior_cut < n_max");
  const ComplexMatrix dz = displacement(z, n_max);
  const ComplexMatrix dw = displacement(w, n_max);
  const ComplexMatrix dzw = displacement(z + w, n_max);
  const Complex phase = std::polar(1.0, std::imag(z * std::conj(w)));
  const ComplexMatrix r = dz * dw - phase * dzw;
  const double num = r.topLeftCorner(interior_cut, interior_cut).norm();
  const double den = dzw.topLeftCorner(interior_cut, interior_cut).norm();
  return ResidualReport{n_max, interior_cut, num / den};
}

// Square grid of displacement points covering |z| <= radius with the
// quadrature weight spacing^2 / pi per point (the d^2z / pi measure).
struct DisplacementGrid {
  std::vector<Complex> points;
  double weight = 0.0;  // shared cell weight, spacing^2 / pi
  double radius = 0.0;
  double spacing = 0.0;
};

inline DisplacementGrid make_displacement_grid(double radius, double spacing) {
  require(radius > 0.0 && spacing > 0.0,
          "make_displacement_grid: radius and spacing must be positive");
  DisplacementGrid g;
  g.radius = radius;
  g.spacing = spacing;
  g.weight = spacing * spacing / std::numbers::pi;
  const auto steps = static_cast<Eigen::Index>(std::floor(radius / spacing));
  for (Eigen::Index i = -steps; i <= steps; ++i)
    for (Eigen::Index j = -steps; j <= steps; ++j) {
      const Complex z(static_cast<double>(i) * spacing,
                      static_cast<double>(j) * spacing);
      if (std::abs(z) <= radius) g.points.push_back(z);
    }
  require(!g.points.empty(), "make_displacement_grid: empty grid");
  return g;
}

// Interior residual of the group-average identity
//   integral d^2z/pi D(z)^dag A D(z) = Tr[A] 1,
// approximated by the grid quadrature. Summation runs in the fixed grid
// order so repeated runs reduce identically.
inline ResidualReport wh_depolarizing_check(const ComplexMatrix& a_op,
                                            const DisplacementGrid& grid,
                                            Eigen::Index n_max,
                                            Eigen::Index interior_cut) {
  require(a_op.rows() == n_max && a_op.cols() == n_max,
          "wh_depolarizing_check: operator must be n_max x n_max");
  require(interior_cut >= 1 && interior_cut < n_max,
          "wh_depolarizing_check: need 1 <= interior_cut < n_max");
  ComplexMatrix acc = ComplexMatrix::Zero(n_max, n_max);
  for (const Complex& z : grid.points) {
    const ComplexMatrix d = displacement(z, n_max);
    acc += grid.weight * (d.adjoint() * a_op * d);
  }
  const ComplexMatrix target =
      a_op.trace() * ComplexMatrix::Identity(n_max, n_max);
  const double num =
      (acc - target).topLeftCorner(interior_cut, interior_cut).norm();
  return ResidualReport{n_max, interior_cut, num};
}

}  // namespace dket
