#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "povmlab/linalg.hpp"

using namespace povmlab;
using namespace povmlab::testing;

TEST_CASE("hermitian_eig on the identity") {
  const auto eig = hermitian_eig(ComplexMatrix::Identity(2, 2));
  CHECK(eig.values[0] == doctest::Approx(1.0));
  CHECK(eig.values[1] == doctest::Approx(1.0));
  CHECK(max_abs(ComplexMatrix(eig.vectors.adjoint() * eig.vectors -
                              ComplexMatrix::Identity(2, 2))) < 1e-12);
}

TEST_CASE("hermitian_eig on sigma_z is a column swap of the identity") {
  const auto eig = hermitian_eig(sigma_z());
  CHECK(eig.values[0] == doctest::Approx(-1.0));
  CHECK(eig.values[1] == doctest::Approx(1.0));
  CHECK(std::abs(eig.vectors(1, 0) - 1.0) < 1e-12);
  CHECK(std::abs(eig.vectors(0, 1) - 1.0) < 1e-12);
  CHECK(std::abs(eig.vectors(0, 0)) < 1e-12);
  CHECK(std::abs(eig.vectors(1, 1)) < 1e-12);
}

TEST_CASE("hermitian_eig on sigma_x satisfies A v = lambda v") {
  const ComplexMatrix a = sigma_x();
  const auto eig = hermitian_eig(a);
  CHECK(eig.values[0] == doctest::Approx(-1.0));
  CHECK(eig.values[1] == doctest::Approx(1.0));
  for (Eigen::Index k = 0; k < 2; ++k) {
    const ComplexVector residual = a * eig.vectors.col(k) - eig.values[k] * eig.vectors.col(k);
    CHECK(residual.cwiseAbs().maxCoeff() < 1e-12);
  }
  // Phase convention: first nonzero coordinate real positive.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(eig.vectors(0, 0) - inv_sqrt2) < 1e-12);
  CHECK(std::abs(eig.vectors(1, 0) + inv_sqrt2) < 1e-12);
  CHECK(std::abs(eig.vectors(0, 1) - inv_sqrt2) < 1e-12);
  CHECK(std::abs(eig.vectors(1, 1) - inv_sqrt2) < 1e-12);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix a(2, 2);
  a << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_eig(a), NotHermitian);
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index d = static_cast<Eigen::Index>(rng.uniform_index(2, 12));
    ComplexMatrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    const ComplexMatrix a = hermitian_part(g);
    const auto eig = hermitian_eig(a);
    const ComplexMatrix back =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
    CHECK(max_abs(ComplexMatrix(back - a)) < 10 * Tolerance{}.eps_eq);
  }
}

TEST_CASE("simultaneous_diagonalization of {I}") {
  const auto sim = simultaneous_diagonalization({ComplexMatrix::Identity(2, 2)});
  for (const auto& values : sim.joint_values) {
    REQUIRE(values.size() == 1);
    CHECK(values[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("simultaneous_diagonalization keeps diagonal families diagonal") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1;
  a(1, 1) = -1;
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = 2;
  b(1, 1) = 3;
  const auto sim = simultaneous_diagonalization({a, b});

  // Already-diagonal input: the basis is a permutation matrix.
  for (Eigen::Index c = 0; c < 2; ++c) {
    int ones = 0;
    for (Eigen::Index r = 0; r < 2; ++r) {
      const double mag = std::abs(sim.basis(r, c));
      CHECK((mag < 1e-12 || std::abs(mag - 1.0) < 1e-12));
      if (std::abs(mag - 1.0) < 1e-12) ++ones;
    }
    CHECK(ones == 1);
  }
  // Joint values {(1,2), (-1,3)} in eigenvalue-sorted order: (-1,3) first.
  CHECK(sim.joint_values[0][0] == doctest::Approx(-1.0));
  CHECK(sim.joint_values[0][1] == doctest::Approx(3.0));
  CHECK(sim.joint_values[1][0] == doctest::Approx(1.0));
  CHECK(sim.joint_values[1][1] == doctest::Approx(2.0));
}

TEST_CASE("simultaneous_diagonalization of {sigma_x, I - sigma_x}") {
  const ComplexMatrix a = sigma_x();
  const ComplexMatrix b = ComplexMatrix::Identity(2, 2) - a;
  const auto sim = simultaneous_diagonalization({a, b});
  for (const ComplexMatrix& m : {a, b}) {
    const ComplexMatrix conj = sim.basis.adjoint() * m * sim.basis;
    CHECK(std::abs(conj(0, 1)) < 1e-12);
    CHECK(std::abs(conj(1, 0)) < 1e-12);
  }
  CHECK(sim.joint_values[0][0] == doctest::Approx(-1.0));
  CHECK(sim.joint_values[0][1] == doctest::Approx(2.0));
  CHECK(sim.joint_values[1][0] == doctest::Approx(1.0));
  CHECK(sim.joint_values[1][1] == doctest::Approx(0.0));
}

TEST_CASE("simultaneous_diagonalization rejects noncommuting input") {
  CHECK_THROWS_AS(simultaneous_diagonalization({sigma_z(), sigma_x()}), NotCommutingFamily);
  try {
    simultaneous_diagonalization({sigma_z(), sigma_x()});
  } catch (const NotCommutingFamily& e) {
    CHECK(e.first_index == 0);
    CHECK(e.second_index == 1);
    CHECK(e.norm == doctest::Approx(2.0));
  }
}

TEST_CASE("simultaneous_diagonalization refines degenerate eigenspaces") {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a.diagonal() << 1, 1, 2;
  ComplexMatrix b = ComplexMatrix::Zero(3, 3);
  b.diagonal() << 3, 4, 5;
  const auto sim = simultaneous_diagonalization({a, b});
  CHECK(sim.joint_values[0] == std::vector<double>{1, 3});
  CHECK(sim.joint_values[1] == std::vector<double>{1, 4});
  CHECK(sim.joint_values[2] == std::vector<double>{2, 5});
}

TEST_CASE("random commuting families are jointly diagonalized") {
  Rng rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    const Eigen::Index d = static_cast<Eigen::Index>(rng.uniform_index(2, 10));
    const ComplexMatrix u = random_unitary(d, rng);
    std::vector<ComplexMatrix> family;
    for (int k = 0; k < 3; ++k) {
      RealVector vals(d);
      for (Eigen::Index i = 0; i < d; ++i) vals[i] = rng.uniform() * 4.0 - 2.0;
      family.push_back(hermitian_part(u * vals.asDiagonal() * u.adjoint()));
    }
    const auto sim = simultaneous_diagonalization(family);
    CHECK(max_abs(ComplexMatrix(sim.basis.adjoint() * sim.basis -
                                ComplexMatrix::Identity(d, d))) < 1e-10);
    for (const ComplexMatrix& m : family) {
      ComplexMatrix conj = sim.basis.adjoint() * m * sim.basis;
      conj.diagonal().setZero();
      CHECK(max_abs(conj) < 10 * Tolerance{}.eps_eq);
    }
  }
}

TEST_CASE("nullspace basics") {
  CHECK(nullspace(ComplexMatrix::Zero(2, 2)).size() == 2);
  CHECK(nullspace(ComplexMatrix::Identity(2, 2)).empty());

  ComplexMatrix wide(1, 2);
  wide << 1, 1;
  const auto basis = nullspace(wide);
  REQUIRE(basis.size() == 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(basis[0][0] - inv_sqrt2) < 1e-12);
  CHECK(std::abs(basis[0][1] + inv_sqrt2) < 1e-12);
  CHECK((wide * basis[0]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("nullspace rank decision sits at eps_eig_cluster") {
  ComplexMatrix tiny(1, 1);
  tiny(0, 0) = 1e-9;  // below the 1e-8 clustering threshold: rank 0
  CHECK(nullspace(tiny).size() == 1);
  tiny(0, 0) = 1e-7;  // above: full rank
  CHECK(nullspace(tiny).empty());
}

TEST_CASE("nullspace vectors are orthonormal and annihilate the matrix") {
  Rng rng(23);
  ComplexMatrix m(3, 5);
  for (Eigen::Index j = 0; j < 5; ++j)
    for (Eigen::Index i = 0; i < 3; ++i) m(i, j) = Complex(rng.gaussian(), rng.gaussian());
  const auto basis = nullspace(m);
  REQUIRE(basis.size() == 2);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    CHECK((m * basis[k]).cwiseAbs().maxCoeff() < 1e-12);
    for (std::size_t l = 0; l < basis.size(); ++l) {
      const Complex dot = basis[k].dot(basis[l]);
      CHECK(std::abs(dot - (k == l ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("commutant dimensions of reference families") {
  CHECK(commutant_basis({ComplexMatrix::Identity(2, 2)}).dimension == 4);
  CHECK(commutant_basis({sigma_z()}).dimension == 2);
  CHECK(commutant_basis({sigma_z(), sigma_x()}).dimension == 1);
}

TEST_CASE("commutant of {sigma_z} consists of diagonal matrices") {
  const Commutant commutant = commutant_basis({sigma_z()});
  for (const ComplexMatrix& x : commutant.basis) {
    CHECK(std::abs(x(0, 1)) < 1e-10);
    CHECK(std::abs(x(1, 0)) < 1e-10);
    CHECK(max_abs(ComplexMatrix(x * sigma_z() - sigma_z() * x)) < 1e-10);
  }
}

TEST_CASE("commutant of the irreducible pair is the scalars") {
  const Commutant commutant = commutant_basis({sigma_z(), sigma_x()});
  REQUIRE(commutant.dimension == 1);
  const ComplexMatrix& x = commutant.basis.front();
  CHECK(max_abs(ComplexMatrix(x - x(0, 0) * ComplexMatrix::Identity(2, 2))) < 1e-10);
}

TEST_CASE("commutant basis is Hilbert-Schmidt orthonormal") {
  const Commutant commutant = commutant_basis({sigma_z()});
  for (std::size_t i = 0; i < commutant.basis.size(); ++i)
    for (std::size_t j = 0; j < commutant.basis.size(); ++j) {
      const Complex hs = (commutant.basis[i].adjoint() * commutant.basis[j]).trace();
      CHECK(std::abs(hs - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("double commutant of an abelian nondegenerate family is itself") {
  const Commutant first = commutant_basis({sigma_z()});
  const Commutant second = commutant_basis(first.basis);
  CHECK(second.dimension == 2);
}
