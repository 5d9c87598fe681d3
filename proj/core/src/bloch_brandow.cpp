#include "effham/bloch_brandow.hpp"

#include <cmath>
#include <string>

namespace effham {

PerturbationSplit PerturbationSplit::from_hamiltonian(const ComplexMatrix& h,
                                                      BlockPartition partition,
                                                      double denom_tol) {
  require_hermitian(h, "PerturbationSplit");
  PerturbationSplit split{h.diagonal().real(), h, std::move(partition), denom_tol};
  split.v.diagonal().setZero();
  return split;
}

ComplexMatrix resolvent_apply(const ComplexMatrix& x, const PerturbationSplit& split,
                              Index target_block) {
  const Index d = split.h0.size();
  if (x.rows() != d || x.cols() != d) {
    throw EffhamError("resolvent_apply: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Index col : split.partition.block(target_block)) {
    for (Index row = 0; row < d; ++row) {
      if (split.partition.block_of(row) == target_block) continue;
      const Complex value = x(row, col);
      if (value == Complex(0.0, 0.0)) continue;
      const double gap = split.h0[col] - split.h0[row];
      if (std::abs(gap) <= split.denom_tol) {
        throw ResonantDenominator("resolvent_apply: |eps_" + std::to_string(col) + " - eps_" +
                                      std::to_string(row) + "| = " + std::to_string(std::abs(gap)) +
                                      " GHz at or below denom_tol",
                                  col, row, gap);
      }
      out(row, col) = value / gap;
    }
  }
  return out;
}

namespace {

ComplexMatrix project_rows_cols(const ComplexMatrix& x, const BlockPartition& partition,
                                Index block) {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (Index i : partition.block(block)) {
    for (Index j : partition.block(block)) out(i, j) = x(i, j);
  }
  return out;
}

}  // namespace

ComplexMatrix v_eff_order2_slots(const PerturbationSplit& split, Index target_block,
                                 const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto r = [&](const ComplexMatrix& x) { return resolvent_apply(x, split, target_block); };
  return project_rows_cols(a * r(b), split.partition, target_block);
}

ComplexMatrix v_eff_order3_slots(const PerturbationSplit& split, Index target_block,
                                 const ComplexMatrix& a, const ComplexMatrix& b,
                                 const ComplexMatrix& c) {
  const auto r = [&](const ComplexMatrix& x) { return resolvent_apply(x, split, target_block); };
  const ComplexMatrix t1 = a * r(b * r(c));
  const ComplexMatrix t2 = a * r(r(b) * c);
  return project_rows_cols(t1 - t2, split.partition, target_block);
}

ComplexMatrix v_eff_order4_slots(const PerturbationSplit& split, Index target_block,
                                 const ComplexMatrix& a, const ComplexMatrix& b,
                                 const ComplexMatrix& c, const ComplexMatrix& d) {
  const auto r = [&](const ComplexMatrix& x) { return resolvent_apply(x, split, target_block); };
  const ComplexMatrix t1 = a * r(b * r(c * r(d)));
  const ComplexMatrix t2 = a * r(b * r(r(c) * d));
  const ComplexMatrix t3 = a * r(r(b * r(c)) * d);
  const ComplexMatrix t4 = a * r(r(r(b) * c) * d);
  const ComplexMatrix t5 = a * r(r(b) * c * r(d));
  return project_rows_cols(t1 - t2 - t3 + t4 - t5, split.partition, target_block);
}

std::vector<ComplexMatrix> v_eff_orders(const PerturbationSplit& split, Index target_block,
                                        int max_order) {
  if (max_order < 1 || max_order > 4) {
    throw EffhamError("v_eff_orders: order must be in 1..4");
  }
  const ComplexMatrix& v = split.v;
  std::vector<ComplexMatrix> orders;
  orders.push_back(project_rows_cols(v, split.partition, target_block));
  if (max_order >= 2) orders.push_back(v_eff_order2_slots(split, target_block, v, v));
  if (max_order >= 3) orders.push_back(v_eff_order3_slots(split, target_block, v, v, v));
  if (max_order >= 4) orders.push_back(v_eff_order4_slots(split, target_block, v, v, v, v));
  return orders;
}

ComplexMatrix bb_effective(const PerturbationSplit& split, int order, bool hermitize) {
  const Index d = split.h0.size();
  ComplexMatrix h_eff = ComplexMatrix::Zero(d, d);
  h_eff.diagonal() = split.h0.cast<Complex>();
  for (Index k = 0; k < split.partition.block_count(); ++k) {
    for (const ComplexMatrix& term : v_eff_orders(split, k, order)) h_eff += term;
  }
  if (hermitize) {
    h_eff = 0.5 * (h_eff + h_eff.adjoint()).eval();
  }
  return h_eff;
}

}  // namespace effham
