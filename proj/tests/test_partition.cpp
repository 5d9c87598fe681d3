#include "effham/partition.hpp"

#include "effham/models.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace effham;
using namespace effham::testing;

TEST_CASE("BlockPartition validates its blocks") {
  CHECK_THROWS(BlockPartition({{0, 1}, {1, 2}}, 3));  // overlap
  CHECK_THROWS(BlockPartition({{0, 1}}, 3));          // not covering
  CHECK_THROWS(BlockPartition({{0}, {}}, 1));         // empty block
  const BlockPartition p({{0, 2}, {1}}, 3);
  CHECK(p.block_of(0) == 0);
  CHECK(p.block_of(1) == 1);
  CHECK(p.block_of(2) == 0);
}

TEST_CASE("projectors are 0/1, idempotent and sum to identity") {
  const BlockPartition p({{0, 3}, {1}, {2, 4}}, 5);
  ComplexMatrix sum = ComplexMatrix::Zero(5, 5);
  for (Index k = 0; k < p.block_count(); ++k) {
    const ComplexMatrix proj = projector(p, k);
    CHECK((proj * proj - proj).norm() == 0.0);
    sum += proj;
  }
  CHECK((sum - ComplexMatrix::Identity(5, 5)).norm() == 0.0);
  CHECK_THROWS(projector(p, 3));
}

TEST_CASE("block_diagonal_part masks off-block entries and is idempotent") {
  Philox rng(21);
  const ComplexMatrix s = random_hermitian(rng, 3);
  const BlockPartition p({{0}, {1, 2}}, 3);
  const ComplexMatrix masked = block_diagonal_part(s, p);
  CHECK(masked(0, 1) == Complex(0.0, 0.0));
  CHECK(masked(0, 2) == Complex(0.0, 0.0));
  CHECK(masked(1, 0) == Complex(0.0, 0.0));
  CHECK(masked(2, 0) == Complex(0.0, 0.0));
  CHECK(masked(1, 2) == s(1, 2));
  CHECK((block_diagonal_part(masked, p) - masked).norm() == 0.0);

  // Single block covering everything keeps S unchanged.
  const BlockPartition full({{0, 1, 2}}, 3);
  CHECK((block_diagonal_part(s, full) - s).norm() == 0.0);

  // Identity S stays the identity under any partition.
  CHECK((block_diagonal_part(ComplexMatrix::Identity(3, 3), p) -
         ComplexMatrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("label_eigenvectors on a diagonal Hamiltonian") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 0) = 2.0;
  h(1, 1) = -1.0;
  h(2, 2) = 0.5;
  const LabeledEigenSystem labeled = label_eigenvectors(hermitian_eig(h));
  CHECK(labeled.energies[0] == doctest::Approx(2.0));
  CHECK(labeled.energies[1] == doctest::Approx(-1.0));
  CHECK(labeled.energies[2] == doctest::Approx(0.5));
  for (Index j = 0; j < 3; ++j) CHECK(labeled.assignment_overlaps[j] == doctest::Approx(1.0));
  CHECK_FALSE(labeled.low_overlap_warning);
}

TEST_CASE("label_eigenvectors follows the dominant component when g << Delta") {
  const double g = 0.01;
  const double delta = 1.0;
  ComplexMatrix h(2, 2);
  h << 0.0, g, g, delta;
  const LabeledEigenSystem labeled = label_eigenvectors(hermitian_eig(h));
  CHECK(labeled.energies[0] < labeled.energies[1]);
  CHECK(labeled.assignment_overlaps[0] > 0.99);
  CHECK(labeled.assignment_overlaps[1] > 0.99);
}

TEST_CASE("label_eigenvectors on the one-excitation Q-C-Q block") {
  const ComplexMatrix h = qcq_single_excitation(4.0, 4.0, 4.5, 0.1, 0.1);
  const LabeledEigenSystem labeled = label_eigenvectors(hermitian_eig(h));
  for (Index j = 0; j < 3; ++j) CHECK(labeled.assignment_overlaps[j] > 0.9);
  CHECK(labeled.energies[0] > labeled.energies[1]);  // coupler label sits above the qubits
}

TEST_CASE("labeling is permutation stable") {
  Philox rng(33);
  const ComplexMatrix h = random_hermitian(rng, 6);
  const HermitianEigen eig = hermitian_eig(h);
  HermitianEigen shuffled = eig;
  const std::vector<Index> perm{3, 0, 5, 1, 4, 2};
  for (Index k = 0; k < 6; ++k) {
    shuffled.values[k] = eig.values[perm[static_cast<size_t>(k)]];
    shuffled.vectors.col(k) = eig.vectors.col(perm[static_cast<size_t>(k)]);
  }
  const LabeledEigenSystem a = label_eigenvectors(eig);
  const LabeledEigenSystem b = label_eigenvectors(shuffled);
  CHECK((a.vectors - b.vectors).norm() < 1e-12);
  CHECK((a.energies - b.energies).norm() < 1e-12);
}

TEST_CASE("assignment solver beats greedy near an avoided crossing") {
  // Score matrix where greedy row-by-row assignment is suboptimal.
  RealMatrix score(2, 2);
  score << 0.55, 0.45, 0.54, 0.01;
  const std::vector<Index> sigma = solve_assignment(score);
  // Optimal total is 0.45 + 0.54; greedy would lock (0,0) and get 0.55 + 0.01.
  CHECK(sigma[0] == 1);
  CHECK(sigma[1] == 0);
}
