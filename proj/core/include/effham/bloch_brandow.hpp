#pragma once

#include "effham/partition.hpp"

#include <vector>

namespace effham {

/// H = H0 + V with H0 strictly diagonal (bare energies, GHz) and V a
/// zero-diagonal Hermitian perturbation. Any diagonal part of the coupling
/// is folded into H0 on construction so resolvent denominators always use
/// bare energies.
struct PerturbationSplit {
  RealVector h0;
  ComplexMatrix v;
  BlockPartition partition;
  double denom_tol = 1e-6;  // GHz

  static PerturbationSplit from_hamiltonian(const ComplexMatrix& h, BlockPartition partition,
                                            double denom_tol = 1e-6);
};

/// Resolvent superoperator (X)_{Ii} = X_{Ii} / (eps_i - eps_I) supported on
/// columns i inside `target_block` and rows I outside it. Throws
/// ResonantDenominator when a needed denominator falls at or below
/// denom_tol.
ComplexMatrix resolvent_apply(const ComplexMatrix& x, const PerturbationSplit& split,
                              Index target_block);

/// Effective interaction orders 1..max_order for one block, using the
/// nested-superoperator expansion:
///   V1 = P V P
///   V2 = P[ V(V) ]P
///   V3 = P[ V(V(V)) - V((V)V) ]P
///   V4 = P[ V(V(V(V))) - V(V((V)V)) - V((V(V))V) + V(((V)V)V) - V((V)V(V)) ]P
/// Returned matrices are full-dimension, supported on the target block.
std::vector<ComplexMatrix> v_eff_orders(const PerturbationSplit& split, Index target_block,
                                        int max_order);

/// Multilinear slot versions of the order-2..4 terms, with slots named in
/// the printed left-to-right order (slot `a` is the outermost factor, i.e.
/// the last hop of a path; slot `d` the first hop). Used to isolate the
/// contribution of an individual virtual path by feeding directed
/// single-transition matrices.
ComplexMatrix v_eff_order2_slots(const PerturbationSplit& split, Index target_block,
                                 const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix v_eff_order3_slots(const PerturbationSplit& split, Index target_block,
                                 const ComplexMatrix& a, const ComplexMatrix& b,
                                 const ComplexMatrix& c);
ComplexMatrix v_eff_order4_slots(const PerturbationSplit& split, Index target_block,
                                 const ComplexMatrix& a, const ComplexMatrix& b,
                                 const ComplexMatrix& c, const ComplexMatrix& d);

/// Block-diagonal effective Hamiltonian summing orders 1..order for every
/// block of the partition (each block plays P against its complement).
/// With `hermitize`, the result is symmetrized, (H + H^dag)/2.
ComplexMatrix bb_effective(const PerturbationSplit& split, int order, bool hermitize);

}  // namespace effham
