#pragma once

#include "effham/least_action.hpp"

#include <string>
#include <vector>

namespace effham {

struct SymmetryOperator {
  ComplexMatrix matrix;
  std::string label;
};

/// ||[A, B]||_F; zero iff the operators commute.
double residual(const ComplexMatrix& a, const ComplexMatrix& b);

/// Permutation operator swapping tensor factors `mode_a` and `mode_b` of a
/// product space with per-mode dimensions `model_dims` (mode 0 most
/// significant). The two modes must have equal level counts; P^2 = I.
SymmetryOperator exchange_operator(Index mode_a, Index mode_b, const std::vector<Index>& model_dims);

enum class EffectiveMethod { kLA, kBB, kSWT2, kGR };

struct PreservationReport {
  double input_residual = 0.0;               // ||[H, S]||_F
  std::vector<double> projector_residuals;   // ||[P_k, S]||_F per block
  double effective_residual = 0.0;           // ||[H_eff, S]||_F
};

/// Builds the effective Hamiltonian with the chosen method and reports the
/// commutator residuals. When input and projector residuals vanish, LA, BB
/// and SWT2 are guaranteed to preserve the symmetry; GR carries no such
/// guarantee and the report simply records what happened.
PreservationReport verify_preservation(const ComplexMatrix& h, const SymmetryOperator& sym,
                                       const BlockPartition& partition, EffectiveMethod method,
                                       int bb_order = 4);

}  // namespace effham
