#pragma once

#include "effham/linalg.hpp"
#include "effham/types.hpp"

#include <vector>

namespace effham {

/// Ordered disjoint index sets covering {0..dim-1}; defines the P/Q
/// structure every block-diagonalization in this library works against.
class BlockPartition {
 public:
  BlockPartition(std::vector<std::vector<Index>> blocks, Index dim);

  /// Two blocks: `p` and its complement, in that order.
  static BlockPartition bipartition(std::vector<Index> p, Index dim);

  Index dim() const { return dim_; }
  Index block_count() const { return static_cast<Index>(blocks_.size()); }
  const std::vector<Index>& block(Index k) const { return blocks_.at(static_cast<size_t>(k)); }
  const std::vector<std::vector<Index>>& blocks() const { return blocks_; }

  /// Block index owning basis state i.
  Index block_of(Index i) const { return owner_.at(static_cast<size_t>(i)); }

  bool same_block(Index i, Index j) const { return block_of(i) == block_of(j); }

 private:
  std::vector<std::vector<Index>> blocks_;
  std::vector<Index> owner_;
  Index dim_;
};

/// Eigensystem with columns assigned one-to-one to bare basis states:
/// column j is the eigenvector labeled as basis state j, energies[j] its
/// eigenvalue, assignment_overlaps[j] = |<j|v_j>|^2.
struct LabeledEigenSystem {
  RealVector energies;
  ComplexMatrix vectors;
  RealVector assignment_overlaps;
  bool low_overlap_warning = false;  // any overlap < 0.5
};

/// Optimal-assignment labeling: the bijection maximizing the total squared
/// overlap sum_j |<j|v_sigma(j)>|^2, solved exactly (no greedy matching;
/// greedy fails near avoided crossings).
LabeledEigenSystem label_eigenvectors(const HermitianEigen& eig);

/// (S_BD)_{ij} = S_{ij} when i and j share a block, else 0.
ComplexMatrix block_diagonal_part(const ComplexMatrix& s, const BlockPartition& partition);

/// Diagonal 0/1 projector onto one block.
ComplexMatrix projector(const BlockPartition& partition, Index block_index);

/// Solves the assignment problem max sum_j score(j, sigma(j)) exactly for a
/// square score matrix; returns sigma as column index per row.
/// (Jonker-Volgenant shortest augmenting path, O(n^3).)
std::vector<Index> solve_assignment(const RealMatrix& score);

}  // namespace effham
