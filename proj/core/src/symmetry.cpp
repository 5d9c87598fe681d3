#include "effham/symmetry.hpp"

#include "effham/bloch_brandow.hpp"
#include "effham/schrieffer_wolff.hpp"

#include <numeric>

namespace effham {

double residual(const ComplexMatrix& a, const ComplexMatrix& b) {
  return commutator(a, b).norm();
}

SymmetryOperator exchange_operator(Index mode_a, Index mode_b,
                                   const std::vector<Index>& model_dims) {
  const Index n_modes = static_cast<Index>(model_dims.size());
  if (mode_a < 0 || mode_b < 0 || mode_a >= n_modes || mode_b >= n_modes) {
    throw EffhamError("exchange_operator: mode index out of range");
  }
  if (model_dims[static_cast<size_t>(mode_a)] != model_dims[static_cast<size_t>(mode_b)]) {
    throw EffhamError("exchange_operator: modes have different level counts");
  }
  Index dim = 1;
  for (Index levels : model_dims) dim *= levels;

  // index -> occupation digits, mode 0 most significant
  std::vector<Index> strides(model_dims.size());
  Index stride = 1;
  for (Index m = n_modes - 1; m >= 0; --m) {
    strides[static_cast<size_t>(m)] = stride;
    stride *= model_dims[static_cast<size_t>(m)];
  }

  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  for (Index idx = 0; idx < dim; ++idx) {
    Index rest = idx;
    std::vector<Index> digits(model_dims.size());
    for (Index m = 0; m < n_modes; ++m) {
      digits[static_cast<size_t>(m)] = rest / strides[static_cast<size_t>(m)];
      rest %= strides[static_cast<size_t>(m)];
    }
    std::swap(digits[static_cast<size_t>(mode_a)], digits[static_cast<size_t>(mode_b)]);
    Index target = 0;
    for (Index m = 0; m < n_modes; ++m) {
      target += digits[static_cast<size_t>(m)] * strides[static_cast<size_t>(m)];
    }
    p(target, idx) = 1.0;
  }
  return SymmetryOperator{std::move(p), "exchange(" + std::to_string(mode_a) + "," +
                                            std::to_string(mode_b) + ")"};
}

PreservationReport verify_preservation(const ComplexMatrix& h, const SymmetryOperator& sym,
                                       const BlockPartition& partition, EffectiveMethod method,
                                       int bb_order) {
  PreservationReport report;
  report.input_residual = residual(h, sym.matrix);
  for (Index k = 0; k < partition.block_count(); ++k) {
    report.projector_residuals.push_back(residual(projector(partition, k), sym.matrix));
  }

  ComplexMatrix h_eff;
  switch (method) {
    case EffectiveMethod::kLA:
      h_eff = least_action_transform(h, partition).h_bd;
      break;
    case EffectiveMethod::kBB:
      h_eff = bb_effective(PerturbationSplit::from_hamiltonian(h, partition), bb_order, true);
      break;
    case EffectiveMethod::kSWT2:
      h_eff = swt_second_order(PerturbationSplit::from_hamiltonian(h, partition));
      break;
    case EffectiveMethod::kGR:
      h_eff = givens_block_diagonalize(h, partition).h_bd;
      break;
  }
  report.effective_residual = residual(h_eff, sym.matrix);
  return report;
}

}  // namespace effham
