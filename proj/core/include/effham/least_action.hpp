#pragma once

#include "effham/partition.hpp"

#include <optional>

namespace effham {

/// Output of an exact block diagonalization: the transformation, the
/// block-diagonal Hamiltonian, and the static diagnostics derived from it.
struct EffectiveResult {
  ComplexMatrix t;            // unitary, T^dag H T block-diagonal
  ComplexMatrix h_bd;         // T^dag H T
  double distance_sq = 0.0;   // ||T - I||_F^2
  double fidelity_bound = 0.0;
  std::optional<double> soundness;  // absent when labeling is unavailable
  bool low_overlap_warning = false;
};

/// (1 - distance_sq / 2D)^2, clamped to 0 when distance_sq > 2D (the bound
/// is informative only below that point).
double fidelity_lower_bound(double distance_sq, Index dim);

/// Exact block diagonalization selecting the transformation closest to the
/// identity: T = S S_BD^dag (S_BD S_BD^dag)^{-1/2} with S the labeled
/// eigenvector matrix. `computational_block` selects the block scored by the
/// soundness diagnostic.
EffectiveResult least_action_transform(const ComplexMatrix& h, const BlockPartition& partition,
                                       Index computational_block = 0, double rel_tol = 1e-10);

/// Long-time average of Tr[U^dag(t) U_eff(t)]/D, evaluated in closed form as
/// (1/D) sum over degenerate groups of ||W_group||_F^2 with W = F^dag S and
/// columns paired by ascending eigenvalue. Degenerate groups (|dE| below
/// 1e-9 ||H||) contribute their full sub-block, since those terms do not
/// dephase. Throws SpectrumMismatch when paired eigenvalues differ by more
/// than 1e-6 ||H||.
double long_time_trace_fidelity(const ComplexMatrix& h, const ComplexMatrix& h_eff_full);

/// Information-retention metric of the effective model,
///   I = [Tr(P M P) + |Tr(P M^{1/2} P)|^2] / (d (d+1)),  M = S_BD S_BD^dag,
/// with P the projector onto the computational block of dimension d.
double soundness_metric(const ComplexMatrix& s_bd, const BlockPartition& partition,
                        Index computational_block);

}  // namespace effham
