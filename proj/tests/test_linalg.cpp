#include "effham/linalg.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace effham;
using namespace effham::testing;

TEST_CASE("hermitian_eig on Pauli matrices") {
  const HermitianEigen z = hermitian_eig(pauli_z());
  CHECK(z.values[0] == doctest::Approx(-1.0));
  CHECK(z.values[1] == doctest::Approx(1.0));
  // Diagonal input: eigenvectors are identity columns after gauge fixing.
  CHECK(std::abs(z.vectors(1, 0) - 1.0) < 1e-12);
  CHECK(std::abs(z.vectors(0, 1) - 1.0) < 1e-12);

  const HermitianEigen x = hermitian_eig(pauli_x());
  CHECK(x.values[0] == doctest::Approx(-1.0));
  CHECK(x.values[1] == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig closed-form 2x2") {
  const double g = 0.1;
  const double delta = 1.0;
  ComplexMatrix h(2, 2);
  h << 0.0, g, g, delta;
  const HermitianEigen eig = hermitian_eig(h);
  const double root = std::sqrt(delta * delta + 4.0 * g * g);
  CHECK(eig.values[0] == doctest::Approx(0.5 * (delta - root)).epsilon(1e-12));
  CHECK(eig.values[1] == doctest::Approx(0.5 * (delta + root)).epsilon(1e-12));
}

TEST_CASE("hermitian_eig rejects non-hermitian input") {
  ComplexMatrix bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(hermitian_eig(bad), NonHermitianInput);
}

TEST_CASE("hermitian_eig reconstruction for random matrices") {
  Philox rng(42);
  for (Index dim : {4, 16, 64}) {
    const ComplexMatrix h = random_hermitian(rng, dim);
    const HermitianEigen eig = hermitian_eig(h);
    const ComplexMatrix rebuilt =
        eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    CHECK((rebuilt - h).norm() <= 1e-9 * h.norm());
    CHECK((eig.vectors.adjoint() * eig.vectors - ComplexMatrix::Identity(dim, dim)).norm() <
          1e-10 * static_cast<double>(dim));
  }
}

TEST_CASE("inv_sqrt_psd basics") {
  CHECK((inv_sqrt_psd(ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3)).norm() <
        1e-12);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  const ComplexMatrix r = inv_sqrt_psd(d);
  CHECK(r(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r(1, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("inv_sqrt_psd on a unitary block gram matrix") {
  // S_BD S_BD^dag for the 2+1 block restriction of a random 3x3 unitary.
  Philox rng(7);
  const ComplexMatrix g = random_hermitian(rng, 3);
  const ComplexMatrix u = hermitian_eig(g).vectors;  // unitary
  ComplexMatrix s_bd = ComplexMatrix::Zero(3, 3);
  s_bd.block(0, 0, 2, 2) = u.block(0, 0, 2, 2);
  s_bd(2, 2) = u(2, 2);
  const ComplexMatrix gram = s_bd * s_bd.adjoint();
  const ComplexMatrix r = inv_sqrt_psd(gram);
  CHECK((r * gram * r - ComplexMatrix::Identity(3, 3)).norm() < 1e-8);
}

TEST_CASE("inv_sqrt_psd flags singular input") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-14;
  CHECK_THROWS_AS(inv_sqrt_psd(d, 1e-10), SingularBlock);
}

TEST_CASE("inv_sqrt_psd square property for random PSD") {
  Philox rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Index dim = 6;
    const ComplexMatrix a = random_hermitian(rng, dim);
    const ComplexMatrix psd = a * a.adjoint() + 1e-3 * ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix r = inv_sqrt_psd(psd);
    CHECK((r * r * psd - ComplexMatrix::Identity(dim, dim)).norm() < 1e-8);
    CHECK(hermiticity_defect(r) < 1e-10);
  }
}

TEST_CASE("evolve_operator basics") {
  Philox rng(5);
  const ComplexMatrix h = random_hermitian(rng, 4);
  CHECK((evolve_operator(h, 0.0) - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);

  // Diagonal Hamiltonian: phases exp(-i 2 pi f t).
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.5;
  d(1, 1) = -0.25;
  const double t = 0.3;
  const ComplexMatrix u = evolve_operator(d, t);
  CHECK(std::abs(u(0, 0) - std::exp(Complex(0.0, -2.0 * M_PI * 1.5 * t))) < 1e-12);
  CHECK(std::abs(u(1, 1) - std::exp(Complex(0.0, 2.0 * M_PI * 0.25 * t))) < 1e-12);
}

TEST_CASE("evolve_operator Rabi half step") {
  const double g = 0.05;
  ComplexMatrix h(2, 2);
  h << 0.0, g, g, 0.0;
  const ComplexMatrix u = evolve_operator(h, 1.0 / (8.0 * g));
  CHECK(std::norm(u(1, 0)) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("evolve_operator group property and unitarity") {
  Philox rng(9);
  const ComplexMatrix h = random_hermitian(rng, 6);
  const double t1 = 0.7;
  const double t2 = 1.9;
  const ComplexMatrix lhs = evolve_operator(h, t1) * evolve_operator(h, t2);
  const ComplexMatrix rhs = evolve_operator(h, t1 + t2);
  CHECK((lhs - rhs).norm() < 1e-8);
  CHECK((lhs * lhs.adjoint() - ComplexMatrix::Identity(6, 6)).norm() < 1e-9);
}

TEST_CASE("frobenius distance, commutator, svd basics") {
  CHECK(frobenius_distance(ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3)) == 0.0);
  CHECK(commutator(pauli_z(), pauli_z()).norm() == 0.0);
  CHECK(commutator(pauli_x(), pauli_y()).norm() > 1.0);

  Philox rng(3);
  const ComplexMatrix u = hermitian_eig(random_hermitian(rng, 5)).vectors;
  const Svd dec = svd(u);
  for (Index i = 0; i < 5; ++i) CHECK(dec.singular_values[i] == doctest::Approx(1.0).epsilon(1e-10));

  const ComplexMatrix a = random_hermitian(rng, 5);
  const Svd dec2 = svd(a);
  const ComplexMatrix rebuilt =
      dec2.u * dec2.singular_values.cast<Complex>().asDiagonal() * dec2.v.adjoint();
  CHECK((rebuilt - a).norm() <= 1e-9 * a.norm());
}
