#include "effham/least_action.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace effham {

double fidelity_lower_bound(double distance_sq, Index dim) {
  if (distance_sq < 0.0) {
    throw EffhamError("fidelity_lower_bound: negative distance_sq");
  }
  const double x = 1.0 - distance_sq / (2.0 * static_cast<double>(dim));
  return x <= 0.0 ? 0.0 : x * x;
}

EffectiveResult least_action_transform(const ComplexMatrix& h, const BlockPartition& partition,
                                       Index computational_block, double rel_tol) {
  require_hermitian(h, "least_action_transform");
  const HermitianEigen eig = hermitian_eig(h);
  const LabeledEigenSystem labeled = label_eigenvectors(eig);
  const ComplexMatrix s_bd = block_diagonal_part(labeled.vectors, partition);

  // Per-block invertibility check so the error names the failing block.
  for (Index k = 0; k < partition.block_count(); ++k) {
    const auto& idx = partition.block(k);
    const Index m = static_cast<Index>(idx.size());
    ComplexMatrix sub(m, m);
    for (Index a = 0; a < m; ++a) {
      for (Index b = 0; b < m; ++b) sub(a, b) = s_bd(idx[static_cast<size_t>(a)], idx[static_cast<size_t>(b)]);
    }
    const RealVector sv = svd(sub).singular_values;
    if (sv.size() == 0 || sv.minCoeff() <= rel_tol * std::max(1.0, sv.maxCoeff())) {
      throw SingularBlock("least_action_transform: S_BD block " + std::to_string(k) +
                          " is singular (labeling collapsed at a resonance?)");
    }
  }

  const ComplexMatrix gram = s_bd * s_bd.adjoint();
  const ComplexMatrix unitarizer = inv_sqrt_psd(gram, rel_tol * rel_tol);

  EffectiveResult out;
  out.t = labeled.vectors * s_bd.adjoint() * unitarizer;
  out.h_bd = out.t.adjoint() * h * out.t;
  out.distance_sq = (out.t - ComplexMatrix::Identity(h.rows(), h.cols())).squaredNorm();
  out.fidelity_bound = fidelity_lower_bound(out.distance_sq, h.rows());
  out.soundness = soundness_metric(s_bd, partition, computational_block);
  out.low_overlap_warning = labeled.low_overlap_warning;
  return out;
}

double long_time_trace_fidelity(const ComplexMatrix& h, const ComplexMatrix& h_eff_full) {
  require_hermitian(h, "long_time_trace_fidelity");
  require_hermitian(h_eff_full, "long_time_trace_fidelity (effective)");
  if (h.rows() != h_eff_full.rows()) {
    throw SpectrumMismatch("long_time_trace_fidelity: dimension mismatch");
  }
  const HermitianEigen full = hermitian_eig(h);
  const HermitianEigen eff = hermitian_eig(h_eff_full);

  const Index d = h.rows();
  const double scale = std::max(1.0, h.norm());
  for (Index i = 0; i < d; ++i) {
    if (std::abs(full.values[i] - eff.values[i]) > 1e-6 * scale) {
      throw SpectrumMismatch("long_time_trace_fidelity: eigenvalue " + std::to_string(i) +
                             " differs by " + std::to_string(std::abs(full.values[i] - eff.values[i])));
    }
  }

  // W = F^dag S; the time average keeps every (m, n) pair whose energies
  // coincide within the degeneracy tolerance.
  const ComplexMatrix w = eff.vectors.adjoint() * full.vectors;
  const double group_tol = 1e-9 * scale;
  double total = 0.0;
  Index start = 0;
  while (start < d) {
    Index stop = start + 1;
    while (stop < d && full.values[stop] - full.values[stop - 1] < group_tol) ++stop;
    for (Index m = start; m < stop; ++m) {
      for (Index n = start; n < stop; ++n) total += std::norm(w(m, n));
    }
    start = stop;
  }
  return total / static_cast<double>(d);
}

double soundness_metric(const ComplexMatrix& s_bd, const BlockPartition& partition,
                        Index computational_block) {
  const auto& idx = partition.block(computational_block);
  const double d = static_cast<double>(idx.size());
  const ComplexMatrix gram = s_bd * s_bd.adjoint();
  const ComplexMatrix root = sqrt_psd(gram);
  double population = 0.0;
  Complex coherence = 0.0;
  for (Index i : idx) {
    population += gram(i, i).real();
    coherence += root(i, i);
  }
  return (population + std::norm(coherence)) / (d * (d + 1.0));
}

}  // namespace effham
