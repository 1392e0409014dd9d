#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dket/linalg.hpp"
#include "dket/random.hpp"
#include "test_helpers.hpp"

using namespace dket;
using namespace dket::testing;

TEST_CASE("tensor product") {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);

  SUBCASE("identity factors give the larger identity") {
    CHECK((tensor(id2, id2) - ComplexMatrix::Identity(4, 4)).norm() == 0.0);
  }

  SUBCASE("diagonal times identity interleaves") {
    ComplexMatrix d(2, 2);
    d << 1, 0, 0, 2;
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected.diagonal() << 1, 1, 2, 2;
    CHECK((tensor(d, id2) - expected).norm() == 0.0);
  }

  SUBCASE("X tensor X matches the index-wise oracle") {
    const ComplexMatrix x = pauli_x();
    const ComplexMatrix expected = oracle_kron(x, x);
    CHECK((tensor(x, x) - expected).norm() == 0.0);
    // anti-diagonal of ones
    for (Eigen::Index i = 0; i < 4; ++i)
      CHECK(std::abs(expected(i, 3 - i) - Complex(1.0)) == 0.0);
  }

  SUBCASE("mixed-product identity on random rectangular factors") {
    Rng rng(71);
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix a = random_ginibre(3, 2, rng);
      const ComplexMatrix b = random_ginibre(2, 4, rng);
      const ComplexMatrix c = random_ginibre(2, 3, rng);
      const ComplexMatrix d = random_ginibre(4, 2, rng);
      const ComplexMatrix lhs = tensor(a, b) * tensor(c, d);
      const ComplexMatrix rhs = tensor((a * c).eval(), (b * d).eval());
      CHECK((lhs - rhs).norm() < 1e-12);
    }
  }
}

TEST_CASE("partial trace") {
  Rng rng(72);

  SUBCASE("maximally entangled dyad reduces to 1/N") {
    const Eigen::Index n = 3;
    ComplexVector v = ComplexVector::Zero(n * n);
    for (Eigen::Index i = 0; i < n; ++i) v(i * n + i) = 1.0 / std::sqrt(3.0);
    const ComplexMatrix dyad = v * v.adjoint();
    const ComplexMatrix reduced = partial_trace(dyad, n, n, Subsystem::two);
    CHECK((reduced - ComplexMatrix::Identity(n, n) / 3.0).norm() < 1e-14);
  }

  SUBCASE("product state reduces to its factor") {
    const ComplexMatrix rho = random_density(2, rng);
    const ComplexMatrix sigma = random_density(3, rng);
    CHECK((partial_trace(tensor(rho, sigma), 2, 3, Subsystem::one) - rho)
              .norm() < 1e-13);
    CHECK((partial_trace(tensor(rho, sigma), 2, 3, Subsystem::two) - sigma)
              .norm() < 1e-13);
  }

  SUBCASE("random Hermitian matches the index-sum oracle") {
    ComplexMatrix g = random_ginibre(4, 4, rng);
    const ComplexMatrix h = g + g.adjoint();
    for (auto keep : {Subsystem::one, Subsystem::two}) {
      CHECK((partial_trace(h, 2, 2, keep) - oracle_ptrace(h, 2, 2, keep))
                .norm() == 0.0);
    }
  }

  SUBCASE("trace is preserved") {
    const ComplexMatrix g = random_ginibre(12, 12, rng);
    const Complex t1 = partial_trace(g, 3, 4, Subsystem::one).trace();
    const Complex t2 = partial_trace(g, 3, 4, Subsystem::two).trace();
    CHECK(std::abs(t1 - g.trace()) < 1e-13);
    CHECK(std::abs(t2 - g.trace()) < 1e-13);
  }

  SUBCASE("dimension mismatch throws") {
    const ComplexMatrix m = ComplexMatrix::Identity(5, 5);
    CHECK_THROWS_AS(partial_trace(m, 2, 3, Subsystem::one), DimensionError);
  }
}

TEST_CASE("polar decomposition") {
  SUBCASE("identity") {
    const auto d = dket::polar(ComplexMatrix::Identity(3, 3));
    CHECK((d.unitary - ComplexMatrix::Identity(3, 3)).norm() < 1e-14);
    CHECK((d.positive - ComplexMatrix::Identity(3, 3)).norm() < 1e-14);
  }

  SUBCASE("unitary input has trivial positive part") {
    const ComplexMatrix u = random_unitary(4, 5);
    const auto d = dket::polar(u);
    CHECK((d.positive - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);
    CHECK((d.unitary - u).norm() < 1e-12);
  }

  SUBCASE("diag(2, -3) splits into sign and modulus") {
    ComplexMatrix a(2, 2);
    a << 2, 0, 0, -3;
    const auto d = dket::polar(a);
    ComplexMatrix v(2, 2), p(2, 2);
    v << 1, 0, 0, -1;
    p << 2, 0, 0, 3;
    CHECK((d.unitary - v).norm() < 1e-14);
    CHECK((d.positive - p).norm() < 1e-14);
    CHECK((d.unitary * d.positive - a).norm() < 1e-14);
  }

  SUBCASE("reconstruction and factor properties on random input") {
    Rng rng(73);
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix a = 3.0 * random_ginibre(5, 5, rng);
      const auto d = dket::polar(a);
      CHECK(is_unitary(d.unitary, 1e-12));
      CHECK(is_hermitian(d.positive, 1e-12));
      CHECK((d.unitary * d.positive - a).norm() < 1e-12);
      // positive part is sqrt(a^dag a)
      CHECK((d.positive * d.positive - a.adjoint() * a).norm() < 1e-10);
    }
  }

  SUBCASE("rank-deficient input still yields a unitary factor") {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 0) = 2.0;
    const auto d = dket::polar(a);
    CHECK(is_unitary(d.unitary, 1e-12));
    CHECK((d.unitary * d.positive - a).norm() < 1e-12);
  }
}

TEST_CASE("svd") {
  SUBCASE("identity has unit singular values") {
    const auto d = svd(ComplexMatrix::Identity(4, 4));
    CHECK((d.singular - RealVector::Ones(4)).norm() == 0.0);
  }

  SUBCASE("diag(3, 0)") {
    ComplexMatrix a(2, 2);
    a << 3, 0, 0, 0;
    const auto d = svd(a);
    CHECK(d.singular(0) == doctest::Approx(3.0));
    CHECK(d.singular(1) == doctest::Approx(0.0));
  }

  SUBCASE("random reconstruction") {
    Rng rng(74);
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix a = random_ginibre(3, 3, rng);
      const auto d = svd(a);
      CHECK((d.reconstruct() - a).norm() < 1e-12);
      CHECK(is_unitary(d.left, 1e-12));
      CHECK(is_unitary(d.right, 1e-12));
      for (Eigen::Index i = 0; i + 1 < d.singular.size(); ++i)
        CHECK(d.singular(i) >= d.singular(i + 1));
      CHECK(d.singular.minCoeff() >= 0.0);
    }
  }

  SUBCASE("rectangular reconstruction") {
    Rng rng(75);
    const ComplexMatrix a = 5.0 * random_ginibre(4, 7, rng);
    CHECK((svd(a).reconstruct() - a).norm() < 1e-12);
  }
}

TEST_CASE("matrix exponential") {
  SUBCASE("exp(0) = 1") {
    CHECK((expm(ComplexMatrix::Zero(3, 3)) - ComplexMatrix::Identity(3, 3))
              .norm() == 0.0);
  }

  SUBCASE("exp(i pi X / 2) = i X") {
    const ComplexMatrix x = pauli_x();
    const ComplexMatrix got = expm((Complex(0, 1) * std::numbers::pi / 2.0 * x)
                                       .eval());
    CHECK((got - Complex(0, 1) * x).norm() < 1e-13);
  }

  SUBCASE("diagonal case") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d.diagonal() << 1, 2;
    const ComplexMatrix e = expm(d);
    CHECK(std::abs(e(0, 0) - std::exp(1.0)) < 1e-13);
    CHECK(std::abs(e(1, 1) - std::exp(2.0)) < 1e-13);
  }

  SUBCASE("inverse and adjoint properties") {
    Rng rng(76);
    const ComplexMatrix a = random_ginibre(4, 4, rng);
    CHECK((expm(a) * expm((-a).eval()) - ComplexMatrix::Identity(4, 4)).norm() <
          1e-12);
    CHECK((expm(a).adjoint() - expm(a.adjoint().eval())).norm() < 1e-12);
  }

  SUBCASE("anti-Hermitian generators give unitaries") {
    Rng rng(77);
    const ComplexMatrix g = random_ginibre(6, 6, rng);
    const ComplexMatrix anti = g - g.adjoint();
    CHECK(is_unitary(expm(anti), 1e-10));
  }
}

TEST_CASE("random test objects") {
  SUBCASE("dimension-1 unitary is a phase") {
    const ComplexMatrix u = random_unitary(1, 42);
    CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-14);
  }

  SUBCASE("densities are positive with unit trace") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const ComplexMatrix rho = random_density(2, seed);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
      CHECK(es.eigenvalues().minCoeff() >= -1e-14);
      CHECK(std::abs(rho.trace().real() - 1.0) < 1e-14);
    }
  }

  SUBCASE("unitarity to 1e-12") {
    const ComplexMatrix u = random_unitary(4, 7);
    CHECK((u * u.adjoint() - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);
  }

  SUBCASE("same seed reproduces, different seed varies") {
    CHECK((random_unitary(3, 11) - random_unitary(3, 11)).norm() == 0.0);
    CHECK((random_unitary(3, 11) - random_unitary(3, 12)).norm() > 1e-3);
  }
}

TEST_CASE("hermitian square root") {
  Rng rng(78);
  const ComplexMatrix g = random_ginibre(4, 4, rng);
  const ComplexMatrix pos = g * g.adjoint();
  const ComplexMatrix root = hermitian_sqrt(pos);
  CHECK((root * root - pos).norm() < 1e-11);
  CHECK(is_hermitian(root, 1e-12));
}
