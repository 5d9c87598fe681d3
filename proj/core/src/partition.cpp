#include "effham/partition.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace effham {

BlockPartition::BlockPartition(std::vector<std::vector<Index>> blocks, Index dim)
    : blocks_(std::move(blocks)), owner_(static_cast<size_t>(dim), -1), dim_(dim) {
  Index covered = 0;
  for (size_t k = 0; k < blocks_.size(); ++k) {
    if (blocks_[k].empty()) {
      throw EffhamError("BlockPartition: empty block " + std::to_string(k));
    }
    for (Index i : blocks_[k]) {
      if (i < 0 || i >= dim) {
        throw EffhamError("BlockPartition: index " + std::to_string(i) + " out of range");
      }
      if (owner_[static_cast<size_t>(i)] != -1) {
        throw EffhamError("BlockPartition: index " + std::to_string(i) + " in two blocks");
      }
      owner_[static_cast<size_t>(i)] = static_cast<Index>(k);
      ++covered;
    }
  }
  if (covered != dim) {
    throw EffhamError("BlockPartition: blocks do not cover the basis");
  }
}

BlockPartition BlockPartition::bipartition(std::vector<Index> p, Index dim) {
  std::vector<bool> in_p(static_cast<size_t>(dim), false);
  for (Index i : p) in_p.at(static_cast<size_t>(i)) = true;
  std::vector<Index> q;
  for (Index i = 0; i < dim; ++i) {
    if (!in_p[static_cast<size_t>(i)]) q.push_back(i);
  }
  return BlockPartition({std::move(p), std::move(q)}, dim);
}

std::vector<Index> solve_assignment(const RealMatrix& score) {
  // Minimize -score with the Jonker-Volgenant shortest augmenting path
  // scheme. Rows are basis states, columns are eigenvectors.
  const Index n = score.rows();
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<size_t>(n) + 1, 0.0);
  std::vector<Index> match(static_cast<size_t>(n) + 1, 0);  // column -> row (1-based)
  std::vector<Index> way(static_cast<size_t>(n) + 1, 0);

  auto cost = [&](Index i, Index j) { return -score(i - 1, j - 1); };

  for (Index i = 1; i <= n; ++i) {
    match[0] = i;
    Index j0 = 0;
    std::vector<double> minv(static_cast<size_t>(n) + 1, kInf);
    std::vector<bool> used(static_cast<size_t>(n) + 1, false);
    do {
      used[static_cast<size_t>(j0)] = true;
      const Index i0 = match[static_cast<size_t>(j0)];
      double delta = kInf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        const double cur = cost(i0, j) - u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
        if (cur < minv[static_cast<size_t>(j)]) {
          minv[static_cast<size_t>(j)] = cur;
          way[static_cast<size_t>(j)] = j0;
        }
        if (minv[static_cast<size_t>(j)] < delta) {
          delta = minv[static_cast<size_t>(j)];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          u[static_cast<size_t>(match[static_cast<size_t>(j)])] += delta;
          v[static_cast<size_t>(j)] -= delta;
        } else {
          minv[static_cast<size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<size_t>(j0)] != 0);
    do {
      const Index j1 = way[static_cast<size_t>(j0)];
      match[static_cast<size_t>(j0)] = match[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<Index> row_to_col(static_cast<size_t>(n), -1);
  for (Index j = 1; j <= n; ++j) {
    row_to_col[static_cast<size_t>(match[static_cast<size_t>(j)] - 1)] = j - 1;
  }
  return row_to_col;
}

LabeledEigenSystem label_eigenvectors(const HermitianEigen& eig) {
  const Index n = eig.values.size();
  RealMatrix overlap2(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      overlap2(j, k) = std::norm(eig.vectors(j, k));
    }
  }
  const std::vector<Index> sigma = solve_assignment(overlap2);

  LabeledEigenSystem out;
  out.energies.resize(n);
  out.vectors.resize(n, n);
  out.assignment_overlaps.resize(n);
  for (Index j = 0; j < n; ++j) {
    const Index k = sigma[static_cast<size_t>(j)];
    out.energies[j] = eig.values[k];
    out.vectors.col(j) = eig.vectors.col(k);
    out.assignment_overlaps[j] = overlap2(j, k);
    if (out.assignment_overlaps[j] < 0.5) out.low_overlap_warning = true;
  }
  return out;
}

ComplexMatrix block_diagonal_part(const ComplexMatrix& s, const BlockPartition& partition) {
  if (s.rows() != partition.dim() || s.cols() != partition.dim()) {
    throw EffhamError("block_diagonal_part: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(s.rows(), s.cols());
  for (Index i = 0; i < s.rows(); ++i) {
    for (Index j = 0; j < s.cols(); ++j) {
      if (partition.same_block(i, j)) out(i, j) = s(i, j);
    }
  }
  return out;
}

ComplexMatrix projector(const BlockPartition& partition, Index block_index) {
  if (block_index < 0 || block_index >= partition.block_count()) {
    throw EffhamError("projector: block index out of range");
  }
  ComplexMatrix p = ComplexMatrix::Zero(partition.dim(), partition.dim());
  for (Index i : partition.block(block_index)) p(i, i) = 1.0;
  return p;
}

}  // namespace effham
