#include "effham/schrieffer_wolff.hpp"

#include <cmath>
#include <string>

namespace effham {

ComplexMatrix swt_second_order(const PerturbationSplit& split) {
  const Index d = split.h0.size();
  const BlockPartition& partition = split.partition;

  ComplexMatrix v_od = ComplexMatrix::Zero(d, d);
  ComplexMatrix s1 = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (partition.same_block(i, j)) continue;
      const Complex value = split.v(i, j);
      if (value == Complex(0.0, 0.0)) continue;
      const double gap = split.h0[i] - split.h0[j];
      if (std::abs(gap) <= split.denom_tol) {
        throw ResonantDenominator("swt_second_order: |eps_" + std::to_string(i) + " - eps_" +
                                      std::to_string(j) + "| at or below denom_tol",
                                  i, j, gap);
      }
      v_od(i, j) = value;
      s1(i, j) = value / gap;
    }
  }

  const ComplexMatrix correction = 0.5 * commutator(s1, v_od);
  ComplexMatrix h_eff = ComplexMatrix::Zero(d, d);
  h_eff.diagonal() = split.h0.cast<Complex>();
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (!partition.same_block(i, j)) continue;
      h_eff(i, j) += split.v(i, j) + correction(i, j);
    }
  }
  return h_eff;
}

namespace {

struct Rotation {
  Index i;
  Index j;
  double c;
  Complex s_phase;  // sin(theta) * e^{i phi}
};

// Zeroes H_ij exactly with the standard Jacobi angle; the complex phase of
// the target element is absorbed into the rotation.
Rotation make_rotation(const ComplexMatrix& h, Index i, Index j) {
  const Complex hij = h(i, j);
  const double m = std::abs(hij);
  const double a = h(i, i).real();
  const double b = h(j, j).real();
  const double theta = 0.5 * std::atan2(2.0 * m, a - b);
  const Complex phase = hij / m;
  return Rotation{i, j, std::cos(theta), std::sin(theta) * phase};
}

// In-place H <- R^dag H R and U <- U R for a plane rotation
// R_ii = c, R_ij = -s e^{i phi}, R_ji = s e^{-i phi}, R_jj = c.
void apply_rotation(ComplexMatrix& h, ComplexMatrix& u, const Rotation& r) {
  const Index i = r.i;
  const Index j = r.j;
  const double c = r.c;
  const Complex s = r.s_phase;

  // Columns: [col_i, col_j] <- [c*col_i + conj(s)... ] per R's definition.
  const ComplexVector hi = h.col(i);
  const ComplexVector hj = h.col(j);
  h.col(i) = c * hi + std::conj(s) * hj;
  h.col(j) = -s * hi + c * hj;
  const ComplexVector ri = h.row(i).transpose();
  const ComplexVector rj = h.row(j).transpose();
  h.row(i) = (c * ri + s * rj).transpose();
  h.row(j) = (-std::conj(s) * ri + c * rj).transpose();

  const ComplexVector ui = u.col(i);
  const ComplexVector uj = u.col(j);
  u.col(i) = c * ui + std::conj(s) * uj;
  u.col(j) = -s * ui + c * uj;
}

double off_block_norm(const ComplexMatrix& h, const BlockPartition& partition) {
  double sum = 0.0;
  for (Index i = 0; i < h.rows(); ++i) {
    for (Index j = 0; j < h.cols(); ++j) {
      if (!partition.same_block(i, j)) sum += std::norm(h(i, j));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

EffectiveResult givens_block_diagonalize(const ComplexMatrix& h, const BlockPartition& partition,
                                         GivensStrategy strategy, double tol, int max_sweeps) {
  require_hermitian(h, "givens_block_diagonalize");
  const Index d = h.rows();
  const double scale = std::max(1e-300, h.norm());

  std::vector<std::pair<Index, Index>> off_pairs;
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      if (!partition.same_block(i, j)) off_pairs.emplace_back(i, j);
    }
  }

  ComplexMatrix work = h;
  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  int sweeps = 0;
  while (off_block_norm(work, partition) > tol * scale) {
    if (sweeps++ >= max_sweeps) {
      throw NoConvergence("givens_block_diagonalize: off-block norm " +
                          std::to_string(off_block_norm(work, partition)) + " after " +
                          std::to_string(max_sweeps) + " sweeps");
    }
    if (strategy == GivensStrategy::kCyclic) {
      for (const auto& [i, j] : off_pairs) {
        if (std::abs(work(i, j)) > 1e-300) {
          apply_rotation(work, u, make_rotation(work, i, j));
        }
      }
    } else {
      // One sweep = as many eliminations as a cyclic pass would do.
      for (size_t n = 0; n < off_pairs.size(); ++n) {
        Index bi = -1;
        Index bj = -1;
        double best = 0.0;
        for (const auto& [i, j] : off_pairs) {
          const double m = std::abs(work(i, j));
          if (m > best) {
            best = m;
            bi = i;
            bj = j;
          }
        }
        if (best <= tol * scale) break;
        apply_rotation(work, u, make_rotation(work, bi, bj));
      }
    }
  }

  EffectiveResult out;
  out.t = u;
  out.h_bd = work;
  out.distance_sq = (u - ComplexMatrix::Identity(d, d)).squaredNorm();
  out.fidelity_bound = fidelity_lower_bound(out.distance_sq, d);
  // The soundness metric depends only on (H, partition) through S_BD, not on
  // the method, so report it here too when the labeling is resolvable.
  try {
    const LabeledEigenSystem labeled = label_eigenvectors(hermitian_eig(h));
    out.soundness = soundness_metric(block_diagonal_part(labeled.vectors, partition), partition, 0);
    out.low_overlap_warning = labeled.low_overlap_warning;
  } catch (const EffhamError&) {
    out.soundness.reset();
  }
  return out;
}

}  // namespace effham
