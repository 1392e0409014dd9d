#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dket/bell.hpp"
#include "dket/random.hpp"
#include "test_helpers.hpp"

using namespace dket;
using namespace dket::testing;

namespace {

// Spectral projector of a self-adjoint op onto eigenvalues within gap of t.
ComplexMatrix eigenprojector(const ComplexMatrix& op, double t,
                             double gap = 1e-6) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(op);
  ComplexMatrix p = ComplexMatrix::Zero(op.rows(), op.cols());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i) - t) < gap)
      p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  return p;
}

}  // namespace

TEST_CASE("bell povm construction") {
  SUBCASE("znzn(2) gives the four qubit Bell projectors") {
    const BellPovm p = bell_povm(znzn_basis(2));
    REQUIRE(p.size() == 4);
    ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
    for (const auto& effect : p.effects) {
      sum += effect;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(effect);
      // rank one with the single eigenvalue w * N = 1
      CHECK(es.eigenvalues()(3) == doctest::Approx(1.0));
      CHECK(std::abs(es.eigenvalues()(2)) < 1e-13);
    }
    CHECK((sum - ComplexMatrix::Identity(4, 4)).norm() < 1e-13);

    // the |U(0,0)>>/sqrt(2) effect is the Phi+ projector
    ComplexVector phi_plus(4);
    phi_plus << 1, 0, 0, 1;
    phi_plus /= std::sqrt(2.0);
    CHECK((p.effects[0] - phi_plus * phi_plus.adjoint()).norm() < 1e-14);
  }

  SUBCASE("every effect projects onto a maximally entangled state") {
    const BellPovm p = bell_povm(znzn_basis(3));
    REQUIRE(p.size() == 9);
    ComplexMatrix sum = ComplexMatrix::Zero(9, 9);
    for (const auto& effect : p.effects) sum += effect;
    CHECK((sum - ComplexMatrix::Identity(9, 9)).norm() < 1e-12);
    for (const auto& u : p.unitaries)
      CHECK(is_max_entangled(DoubleKet{u / std::sqrt(3.0)}));
  }

  SUBCASE("a single unitary cannot resolve the identity") {
    const std::vector<ComplexMatrix> us = {ComplexMatrix::Identity(2, 2)};
    CHECK_THROWS_AS(bell_povm(us, {2.0}), std::invalid_argument);
  }

  SUBCASE("non-unitary elements are rejected") {
    const std::vector<ComplexMatrix> us = {2.0 *
                                           ComplexMatrix::Identity(2, 2)};
    CHECK_THROWS_AS(bell_povm(us, {0.5}), std::invalid_argument);
  }
}

TEST_CASE("measurement statistics") {
  const BellPovm p = bell_povm(znzn_basis(2));

  SUBCASE("a Bell eigenstate is detected with certainty") {
    for (std::size_t j = 0; j < p.size(); ++j) {
      const ComplexVector v = as_vector(DoubleKet{p.unitaries[j]});
      const ComplexMatrix state = (v * v.adjoint()) / 2.0;
      const auto probs = measure(p, state);
      for (std::size_t k = 0; k < probs.size(); ++k)
        CHECK(probs[k] == doctest::Approx(k == j ? 1.0 : 0.0).epsilon(1e-10));
    }
  }

  SUBCASE("the maximally mixed state is uniform") {
    const ComplexMatrix state = ComplexMatrix::Identity(4, 4) / 4.0;
    for (double prob : measure(p, state))
      CHECK(prob == doctest::Approx(0.25));
  }

  SUBCASE("probabilities sum to one on random states") {
    Rng rng(95);
    for (int t = 0; t < 10; ++t) {
      const auto probs = measure(p, random_density(4, rng));
      double total = 0.0;
      for (double prob : probs) total += prob;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  SUBCASE("invalid states are rejected") {
    CHECK_THROWS_AS(measure(p, ComplexMatrix::Identity(4, 4)),
                    std::invalid_argument);
  }
}

TEST_CASE("bell observable") {
  SUBCASE("enumeration labels give spectrum {0,1,2,3}") {
    const BellPovm p = bell_povm(znzn_basis(2));
    const BellObservable o = bell_observable(p, {0.0, 1.0, 2.0, 3.0});
    CHECK(is_hermitian(o.op, 1e-13));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(o.op);
    for (Eigen::Index i = 0; i < 4; ++i)
      CHECK(es.eigenvalues()(i) == doctest::Approx(double(i)));
  }

  SUBCASE("non-injective labelings are rejected with the colliding pair") {
    const BellPovm p = bell_povm(znzn_basis(2));
    try {
      bell_observable(p, {0.0, 0.0, 0.0, 0.0});
      FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      CHECK(msg.find("0,0") != std::string::npos);
      CHECK(msg.find("0,1") != std::string::npos);
    }
  }

  SUBCASE("eigenprojectors recover the effects for injective f") {
    const BellPovm p = bell_povm(znzn_basis(3));
    Rng rng(96);
    std::vector<double> f(p.size());
    for (std::size_t k = 0; k < f.size(); ++k)
      f[k] = double(k) + 0.2 * rng.uniform();
    const BellObservable o = bell_observable(p, f);
    double max_mismatch = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const ComplexMatrix proj = eigenprojector(o.op, f[k]);
      max_mismatch = std::max(max_mismatch, (proj - p.effects[k]).norm());
      // the match is unique: overlap with its own effect is full
      CHECK((proj * p.effects[k]).trace().real() ==
            doctest::Approx(1.0).epsilon(1e-8));
    }
    CHECK(max_mismatch < 1e-10);
  }

  SUBCASE("spectral measurement reproduces the POVM statistics") {
    const BellPovm p = bell_povm(znzn_basis(2));
    const std::vector<double> f = {1.5, -0.5, 3.25, 7.0};
    const BellObservable o = bell_observable(p, f);
    Rng rng(97);
    for (int t = 0; t < 10; ++t) {
      const ComplexMatrix state = random_density(4, rng);
      const auto probs = measure(p, state);
      for (std::size_t k = 0; k < p.size(); ++k) {
        const ComplexMatrix proj = eigenprojector(o.op, f[k]);
        CHECK((state * proj).trace().real() ==
              doctest::Approx(probs[k]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("observable tensor form") {
  SUBCASE("delta at the unit gives the |1>><<1| projector piece") {
    const Eigen::Index n = 3;
    std::vector<double> f(n * n, 0.0);
    f[0] = 1.0;
    const ComplexMatrix o = observable_tensor_form(n, f);
    const ComplexVector id_vec = as_vector(doubleket_identity(n));
    const ComplexMatrix expected =
        (id_vec * id_vec.adjoint()) / static_cast<double>(n);
    CHECK((o - expected).norm() < 1e-12);
  }

  SUBCASE("constant f gives a multiple of the identity") {
    const Eigen::Index n = 2;
    const std::vector<double> f(n * n, 2.5);
    const ComplexMatrix o = observable_tensor_form(n, f);
    CHECK((o - 2.5 * ComplexMatrix::Identity(n * n, n * n)).norm() < 1e-12);
  }

  SUBCASE("agrees with the direct form for random injective f") {
    Rng rng(98);
    for (Eigen::Index n : {2, 3}) {
      const BellPovm p = bell_povm(znzn_basis(n));
      for (int t = 0; t < 20; ++t) {
        std::vector<double> f(p.size());
        for (std::size_t k = 0; k < f.size(); ++k)
          f[k] = double(k) + rng.uniform();
        const BellObservable direct = bell_observable(p, f);
        const ComplexMatrix tensor_form = observable_tensor_form(n, f);
        CAPTURE(n);
        CHECK((direct.op - tensor_form).norm() < 1e-10);
      }
    }
  }
}
