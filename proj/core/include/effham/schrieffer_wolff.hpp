#pragma once

#include "effham/bloch_brandow.hpp"
#include "effham/least_action.hpp"

namespace effham {

/// Second-order Schrieffer-Wolff effective Hamiltonian,
///   H_eff = P H0 P + P V P + (1/2) P [S1, V_od] P  per block,
/// with generator (S1)_{ab} = (V_od)_{ab} / (eps_a - eps_b) on off-block
/// pairs (anti-Hermitian). Generic SWT stops at order 2; the 3-level
/// fourth-order closed form lives in the analytic oracles.
ComplexMatrix swt_second_order(const PerturbationSplit& split);

enum class GivensStrategy {
  kCyclic,       // row-major pass over off-block pairs
  kLargestFirst  // repeatedly zero the largest off-block element
};

/// Jacobi-style iterative block diagonalization with complex Givens
/// rotations. One sweep performs a full cyclic pass (or an equal count of
/// largest-first eliminations). Off-block norm below tol * ||H|| stops;
/// NoConvergence after max_sweeps. The order of eliminations changes the
/// result, which is why the strategy is exposed.
EffectiveResult givens_block_diagonalize(const ComplexMatrix& h, const BlockPartition& partition,
                                         GivensStrategy strategy = GivensStrategy::kCyclic,
                                         double tol = 1e-10, int max_sweeps = 1000);

}  // namespace effham
