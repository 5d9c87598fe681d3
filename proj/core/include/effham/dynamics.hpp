#pragma once

#include "effham/linalg.hpp"

#include <array>
#include <vector>

namespace effham {

struct FidelityTrace {
  double mean = 0.0;
  std::vector<double> times_ns;
  std::vector<double> fidelity;
};

/// Projected-state fidelity between full and effective evolution,
/// F(t) = |<psi_p(t)|psi_eff(t)>|^2 with psi_p = P_C psi_exact(t).
/// `h_eff` acts on the computational subspace, ordered as
/// `computational_indices`; `psi0` lives in the full space and must be
/// normalized and supported on those indices. The grid is uniform over
/// [0, t_total_ns] with n_steps points including both endpoints.
FidelityTrace avg_projected_fidelity(const ComplexMatrix& h_full, const ComplexMatrix& h_eff,
                                     const std::vector<Index>& computational_indices,
                                     const ComplexVector& psi0, double t_total_ns, int n_steps);

/// Population trace |<target| e^{-i 2pi H t} |init>|^2 on a uniform grid.
std::vector<double> population_trace(const ComplexMatrix& h, Index init_index, Index target_index,
                                     double t_total_ns, int n_samples);

/// Effective coupling from the dominant FFT peak of the target-population
/// trace: plain FFT (no window), DC bin excluded, zero padding by
/// `pad_factor`, quadratic interpolation around the peak; returns
/// peak_frequency / 2 in GHz. Throws NoPeak when the population never
/// transfers (flat spectrum).
double fft_extract_coupling(const ComplexMatrix& h, Index init_index, Index target_index,
                            double t_total_ns, int pad_factor = 4, int n_samples = 32768);

/// Pauli coefficients of a Hermitian 4x4 operator in the basis
/// {00, 01, 10, 11}: c[4*p+q] = Re Tr[(P_p x P_q) H] / 4 with the operator
/// order {I, X, Y, Z}. The reconstruction sum c_pq P x Q equals H exactly.
std::array<double, 16> pauli_coefficients(const ComplexMatrix& h4);

/// zeta = E11 - E10 - E01 + E00 from the four dressed diagonal entries of
/// h_eff identified by `labels` = {i00, i01, i10, i11}.
double zz_strength(const ComplexMatrix& h_eff, const std::array<Index, 4>& labels);

struct ThreeBodyKappa {
  double kappa = 0.0;          // Re<110|H|011> - Re<100|H|001>
  double trace_kappa = 0.0;    // Tr(K^dag H) with K = -(X1 Z2 X3 + Y1 Z2 Y3)/4
  double imag_defect = 0.0;    // |Im<110|H|011>| + |Im<100|H|001>|
};

/// Mediated three-body strength on an 8-dim computational block ordered as
/// |q1 q2 q3> with index 4 q1 + 2 q2 + q3.
ThreeBodyKappa three_body_kappa(const ComplexMatrix& h_eff_3q);

}  // namespace effham
