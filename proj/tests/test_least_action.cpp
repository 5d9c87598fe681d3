#include "effham/least_action.hpp"

#include "effham/models.hpp"
#include "effham/oracles.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace effham;
using namespace effham::testing;

TEST_CASE("fidelity_lower_bound closed form") {
  CHECK(fidelity_lower_bound(0.0, 5) == doctest::Approx(1.0));
  CHECK(fidelity_lower_bound(2.0 * 5.0, 5) == doctest::Approx(0.0));
  CHECK(fidelity_lower_bound(0.5, 3) == doctest::Approx((1.0 - 0.5 / 6.0) * (1.0 - 0.5 / 6.0)));
  CHECK(fidelity_lower_bound(100.0, 3) == 0.0);  // clamped beyond 2D
  CHECK_THROWS(fidelity_lower_bound(-1.0, 3));
}

TEST_CASE("least_action_transform is trivial on block-diagonal input") {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(0, 0) = 1.0;
  h(1, 1) = 2.0;
  h(1, 2) = 0.0;
  h(2, 2) = 3.0;
  h(3, 3) = 4.0;
  h(2, 3) = Complex(0.1, 0.05);
  h(3, 2) = std::conj(h(2, 3));
  const BlockPartition p({{0, 1}, {2, 3}}, 4);
  const EffectiveResult r = least_action_transform(h, p);
  CHECK((r.t - ComplexMatrix::Identity(4, 4)).norm() < 1e-10);
  CHECK(r.distance_sq < 1e-18);
  CHECK(r.fidelity_bound == doctest::Approx(1.0));
  CHECK(r.soundness.value() == doctest::Approx(1.0));
}

TEST_CASE("least_action_transform block-diagonalizes and preserves the spectrum") {
  Philox rng(101);
  const ComplexMatrix h = random_hermitian(rng, 8);
  const BlockPartition p({{0, 1, 2}, {3, 4, 5, 6, 7}}, 8);
  const EffectiveResult r = least_action_transform(h, p);

  CHECK((r.t.adjoint() * r.t - ComplexMatrix::Identity(8, 8)).norm() < 1e-8);
  double off = 0.0;
  for (Index i = 0; i < 8; ++i) {
    for (Index j = 0; j < 8; ++j) {
      if (!p.same_block(i, j)) off += std::norm(r.h_bd(i, j));
    }
  }
  CHECK(std::sqrt(off) <= 1e-8 * h.norm());

  const RealVector ev_h = hermitian_eig(h).values;
  const RealVector ev_bd = hermitian_eig(0.5 * (r.h_bd + r.h_bd.adjoint())).values;
  CHECK((ev_h - ev_bd).norm() <= 1e-9 * h.norm());
}

TEST_CASE("symmetric three-level identity 2 g~ = lambda2 - lambda3") {
  const double g = 0.1;
  const double omega = 4.0;
  const double omega_c = 4.5;
  const ComplexMatrix h = qcq_single_excitation(omega, omega, omega_c, g, g);
  const BlockPartition p({{0}, {1, 2}}, 3);
  const EffectiveResult r = least_action_transform(h, p, 1);
  const double g_tilde = r.h_bd(1, 2).real();

  const auto exact = oracles::fft_symmetric_identity(omega_c - omega, g);
  // Eigenvalues of qcq_single_excitation are shifted by omega relative to
  // the reduced matrix in fft_symmetric_identity.
  const RealVector ev = hermitian_eig(h).values;
  CHECK(std::abs(2.0 * g_tilde - (exact.lambda2 - exact.lambda3)) < 1e-12);
  CHECK(ev[2] == doctest::Approx(omega + exact.lambda1).epsilon(1e-12));
  CHECK(std::abs(g_tilde - exact.g_tilde) < 1e-13);
}

TEST_CASE("T is gauge invariant under eigenvector phases") {
  Philox rng(55);
  const ComplexMatrix h = random_hermitian(rng, 6);
  const BlockPartition p({{0, 1, 2, 3}, {4, 5}}, 6);
  const EffectiveResult r = least_action_transform(h, p);

  const LabeledEigenSystem labeled = label_eigenvectors(hermitian_eig(h));
  ComplexMatrix s = labeled.vectors;
  for (Index k = 0; k < 6; ++k) {
    const double angle = 0.83 * static_cast<double>(k) + 0.21;
    s.col(k) *= Complex(std::cos(angle), std::sin(angle));
  }
  const ComplexMatrix s_bd = block_diagonal_part(s, p);
  const ComplexMatrix t_rebuilt = s * s_bd.adjoint() * inv_sqrt_psd(s_bd * s_bd.adjoint());
  CHECK((t_rebuilt - r.t).norm() < 1e-10);
}

TEST_CASE("long_time_trace_fidelity is one for identical Hamiltonians") {
  Philox rng(77);
  const ComplexMatrix h = random_hermitian(rng, 5);
  CHECK(long_time_trace_fidelity(h, h) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("long_time_trace_fidelity rejects mismatched spectra") {
  Philox rng(78);
  const ComplexMatrix h = random_hermitian(rng, 4);
  const ComplexMatrix other = h + 0.5 * ComplexMatrix::Identity(4, 4);
  CHECK_THROWS_AS(long_time_trace_fidelity(h, other), SpectrumMismatch);
}

TEST_CASE("bound holds on random instances and the analytic average matches a grid") {
  Philox rng(404);
  int tested = 0;
  while (tested < 20) {
    const Index dim = 4 + static_cast<Index>(rng.next_u32() % 5);
    const ComplexMatrix h = random_hermitian(rng, dim);
    // Keep the spectrum comfortably non-degenerate for the grid comparison.
    const RealVector ev = hermitian_eig(h).values;
    double min_gap = 1e9;
    for (Index i = 1; i < dim; ++i) min_gap = std::min(min_gap, ev[i] - ev[i - 1]);
    if (min_gap < 0.02) continue;

    const Index p_dim = 1 + static_cast<Index>(rng.next_u32() % static_cast<std::uint32_t>(dim - 1));
    std::vector<Index> p_block;
    for (Index i = 0; i < p_dim; ++i) p_block.push_back(i);
    const BlockPartition p = BlockPartition::bipartition(p_block, dim);

    EffectiveResult r;
    try {
      r = least_action_transform(h, p);
    } catch (const SingularBlock&) {
      continue;
    }
    const double analytic = long_time_trace_fidelity(h, r.h_bd);
    CHECK(analytic >= r.fidelity_bound - 1e-12);

    if (tested == 0) {
      // Numeric oracle: time-average the complex trace on a 10 us grid.
      const HermitianEigen full = hermitian_eig(h);
      const HermitianEigen eff = hermitian_eig(0.5 * (r.h_bd + r.h_bd.adjoint()));
      const ComplexMatrix w = eff.vectors.adjoint() * full.vectors;
      const int n_steps = 8192;
      const double t_total = 10000.0;
      Complex mean = 0.0;
      for (int s = 0; s < n_steps; ++s) {
        const double t = t_total * static_cast<double>(s) / n_steps;
        Complex tr = 0.0;
        for (Index m = 0; m < dim; ++m) {
          for (Index n = 0; n < dim; ++n) {
            const double angle = 2.0 * M_PI * (full.values[n] - eff.values[m]) * t;
            tr += std::norm(w(m, n)) * Complex(std::cos(angle), std::sin(angle));
          }
        }
        mean += tr;
      }
      mean /= static_cast<double>(n_steps);
      CHECK(std::abs(mean) / static_cast<double>(dim) ==
            doctest::Approx(analytic).epsilon(1e-3));
    }
    ++tested;
  }
}

TEST_CASE("bound gap closes quadratically as the coupling vanishes") {
  ComplexMatrix h0 = ComplexMatrix::Zero(4, 4);
  h0(0, 0) = 0.0;
  h0(1, 1) = 0.3;
  h0(2, 2) = 1.1;
  h0(3, 3) = 1.7;
  ComplexMatrix v = ComplexMatrix::Zero(4, 4);
  v(0, 2) = Complex(0.05, 0.02);
  v(1, 3) = Complex(0.03, -0.04);
  v(0, 3) = 0.02;
  v = (v + ComplexMatrix(v.adjoint())).eval();
  const BlockPartition p({{0, 1}, {2, 3}}, 4);

  double prev_gap = 1e9;
  double prev_d2 = 0.0;
  std::vector<double> gaps;
  std::vector<double> d2s;
  for (double scale : {1.0, 0.5, 0.25, 0.125, 0.0625}) {
    const ComplexMatrix h = h0 + scale * v;
    const EffectiveResult r = least_action_transform(h, p);
    const double gap = long_time_trace_fidelity(h, r.h_bd) - r.fidelity_bound;
    CHECK(gap >= -1e-12);
    CHECK(gap < prev_gap + 1e-15);
    prev_gap = gap;
    gaps.push_back(gap);
    d2s.push_back(r.distance_sq);
    prev_d2 = r.distance_sq;
  }
  (void)prev_d2;
  // Quadratic trend in ||T - I||_F^2: gap ratio tracks (d2 ratio)^2.
  for (size_t i = 1; i < gaps.size(); ++i) {
    const double gap_ratio = gaps[i - 1] / gaps[i];
    const double d2_ratio = d2s[i - 1] / d2s[i];
    CHECK(gap_ratio == doctest::Approx(d2_ratio * d2_ratio).epsilon(0.35));
  }
}

TEST_CASE("soundness metric limits") {
  // Unitary already block-diagonal: perfect retention.
  Philox rng(12);
  const ComplexMatrix g2 = random_hermitian(rng, 2);
  const ComplexMatrix g3 = random_hermitian(rng, 3);
  ComplexMatrix s = ComplexMatrix::Zero(5, 5);
  s.block(0, 0, 2, 2) = hermitian_eig(g2).vectors;
  s.block(2, 2, 3, 3) = hermitian_eig(g3).vectors;
  const BlockPartition p({{0, 1}, {2, 3, 4}}, 5);
  CHECK(soundness_metric(s, p, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(soundness_metric(s, p, 1) == doctest::Approx(1.0).epsilon(1e-9));

  // Vanishing block: zero retention.
  ComplexMatrix dead = s;
  dead.block(0, 0, 2, 2).setZero();
  CHECK(soundness_metric(dead, p, 0) == doctest::Approx(0.0));
}

TEST_CASE("ill-conditioned S_BD trips the per-block singular check") {
  // Fully resonant Q-C-Q: the labeled block restrictions are far from
  // unitary, so a strict rel_tol rejects them while the default succeeds.
  const ComplexMatrix h = qcq_single_excitation(4.0, 4.0, 4.0, 0.1, 0.1);
  const BlockPartition p({{0}, {1, 2}}, 3);
  CHECK_THROWS_AS(least_action_transform(h, p, 1, 0.999), SingularBlock);
  const EffectiveResult r = least_action_transform(h, p, 1);
  CHECK(r.low_overlap_warning);  // overlaps at the resonance drop to 1/2
}
