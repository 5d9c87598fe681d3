#include "effham/dynamics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

namespace effham {

namespace {

ComplexVector evolve_state(const HermitianEigen& eig, const ComplexVector& coeffs, double t_ns) {
  // coeffs are eigenbasis amplitudes S^dag psi0; returns S e^{-i2piEt} coeffs.
  const Index d = eig.values.size();
  ComplexVector phased(d);
  for (Index i = 0; i < d; ++i) {
    const double angle = -2.0 * M_PI * eig.values[i] * t_ns;
    phased[i] = coeffs[i] * Complex(std::cos(angle), std::sin(angle));
  }
  return eig.vectors * phased;
}

}  // namespace

FidelityTrace avg_projected_fidelity(const ComplexMatrix& h_full, const ComplexMatrix& h_eff,
                                     const std::vector<Index>& computational_indices,
                                     const ComplexVector& psi0, double t_total_ns, int n_steps) {
  if (n_steps < 2) throw EffhamError("avg_projected_fidelity: need at least 2 grid points");
  const Index dc = static_cast<Index>(computational_indices.size());
  if (h_eff.rows() != dc) {
    throw EffhamError("avg_projected_fidelity: h_eff does not match computational subspace");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-10) {
    throw EffhamError("avg_projected_fidelity: psi0 not normalized");
  }

  const HermitianEigen full = hermitian_eig(h_full);
  const HermitianEigen eff = hermitian_eig(h_eff);

  ComplexVector psi0_c(dc);
  for (Index k = 0; k < dc; ++k) psi0_c[k] = psi0[computational_indices[static_cast<size_t>(k)]];

  const ComplexVector coeff_full = full.vectors.adjoint() * psi0;
  const ComplexVector coeff_eff = eff.vectors.adjoint() * psi0_c;

  FidelityTrace out;
  out.times_ns.resize(static_cast<size_t>(n_steps));
  out.fidelity.resize(static_cast<size_t>(n_steps));
  double sum = 0.0;
  for (int step = 0; step < n_steps; ++step) {
    const double t = t_total_ns * static_cast<double>(step) / static_cast<double>(n_steps - 1);
    const ComplexVector psi_exact = evolve_state(full, coeff_full, t);
    const ComplexVector psi_eff = evolve_state(eff, coeff_eff, t);
    Complex overlap = 0.0;
    for (Index k = 0; k < dc; ++k) {
      overlap += std::conj(psi_exact[computational_indices[static_cast<size_t>(k)]]) * psi_eff[k];
    }
    const double f = std::norm(overlap);
    out.times_ns[static_cast<size_t>(step)] = t;
    out.fidelity[static_cast<size_t>(step)] = f;
    sum += f;
  }
  out.mean = sum / static_cast<double>(n_steps);
  return out;
}

std::vector<double> population_trace(const ComplexMatrix& h, Index init_index, Index target_index,
                                     double t_total_ns, int n_samples) {
  const HermitianEigen eig = hermitian_eig(h);
  const Index d = eig.values.size();
  if (init_index < 0 || init_index >= d || target_index < 0 || target_index >= d) {
    throw EffhamError("population_trace: index out of range");
  }
  // <target|U(t)|init> = sum_k S_{target,k} conj(S_{init,k}) e^{-i2piE_k t}
  ComplexVector amp(d);
  for (Index k = 0; k < d; ++k) {
    amp[k] = eig.vectors(target_index, k) * std::conj(eig.vectors(init_index, k));
  }
  std::vector<double> populations(static_cast<size_t>(n_samples));
  for (int s = 0; s < n_samples; ++s) {
    const double t = t_total_ns * static_cast<double>(s) / static_cast<double>(n_samples);
    Complex overlap = 0.0;
    for (Index k = 0; k < d; ++k) {
      const double angle = -2.0 * M_PI * eig.values[k] * t;
      overlap += amp[k] * Complex(std::cos(angle), std::sin(angle));
    }
    populations[static_cast<size_t>(s)] = std::norm(overlap);
  }
  return populations;
}

namespace {

std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

// |FFT|^2 of a real series, padded to pad_factor * n samples.
std::vector<double> padded_power_spectrum(const std::vector<double>& series, int pad_factor) {
  const size_t n = series.size();
  const size_t padded = n * static_cast<size_t>(pad_factor);
  std::vector<std::complex<double>> in(padded, 0.0);
  for (size_t i = 0; i < n; ++i) in[i] = series[i];
  std::vector<std::complex<double>> out(padded);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(padded),
                                      reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  std::vector<double> power(padded / 2 + 1);
  for (size_t i = 0; i < power.size(); ++i) power[i] = std::norm(out[i]);
  return power;
}

}  // namespace

double fft_extract_coupling(const ComplexMatrix& h, Index init_index, Index target_index,
                            double t_total_ns, int pad_factor, int n_samples) {
  const std::vector<double> pop = population_trace(h, init_index, target_index, t_total_ns,
                                                   n_samples);
  double peak_pop = 0.0;
  for (double p : pop) peak_pop = std::max(peak_pop, p);
  if (peak_pop < 1e-12) {
    throw NoPeak("fft_extract_coupling: population never transfers");
  }

  const std::vector<double> power = padded_power_spectrum(pop, pad_factor);
  const double df = 1.0 / (t_total_ns * static_cast<double>(pad_factor));

  // Skip the DC lobe: start past the first local minimum after bin 0.
  size_t start = 1;
  while (start + 1 < power.size() && power[start + 1] < power[start]) ++start;
  size_t peak = start;
  for (size_t i = start; i < power.size(); ++i) {
    if (power[i] > power[peak]) peak = i;
  }
  if (peak == 0 || peak + 1 >= power.size() || power[peak] < 1e-12 * power[0]) {
    throw NoPeak("fft_extract_coupling: flat spectrum");
  }

  // Quadratic interpolation on the power around the peak bin.
  const double ym = power[peak - 1];
  const double y0 = power[peak];
  const double yp = power[peak + 1];
  const double denom = ym - 2.0 * y0 + yp;
  const double shift = denom != 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
  const double freq = (static_cast<double>(peak) + shift) * df;
  return 0.5 * freq;
}

namespace {

const std::array<ComplexMatrix, 4>& pauli_basis() {
  static const std::array<ComplexMatrix, 4> paulis = [] {
    std::array<ComplexMatrix, 4> p;
    for (auto& m : p) m = ComplexMatrix::Zero(2, 2);
    p[0](0, 0) = 1.0;
    p[0](1, 1) = 1.0;
    p[1](0, 1) = 1.0;
    p[1](1, 0) = 1.0;
    p[2](0, 1) = Complex(0.0, -1.0);
    p[2](1, 0) = Complex(0.0, 1.0);
    p[3](0, 0) = 1.0;
    p[3](1, 1) = -1.0;
    return p;
  }();
  return paulis;
}

}  // namespace

std::array<double, 16> pauli_coefficients(const ComplexMatrix& h4) {
  if (h4.rows() != 4 || h4.cols() != 4) throw EffhamError("pauli_coefficients: need a 4x4 matrix");
  require_hermitian(h4, "pauli_coefficients");
  const auto& paulis = pauli_basis();
  std::array<double, 16> coeffs{};
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      ComplexMatrix op(4, 4);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          op.block(2 * i, 2 * j, 2, 2) = paulis[static_cast<size_t>(p)](i, j) *
                                         paulis[static_cast<size_t>(q)];
        }
      }
      coeffs[static_cast<size_t>(4 * p + q)] = 0.25 * (op * h4).trace().real();
    }
  }
  return coeffs;
}

double zz_strength(const ComplexMatrix& h_eff, const std::array<Index, 4>& labels) {
  for (Index i : labels) {
    if (i < 0 || i >= h_eff.rows()) throw EffhamError("zz_strength: label out of range");
  }
  return (h_eff(labels[3], labels[3]) - h_eff(labels[2], labels[2]) -
          h_eff(labels[1], labels[1]) + h_eff(labels[0], labels[0]))
      .real();
}

ThreeBodyKappa three_body_kappa(const ComplexMatrix& h_eff_3q) {
  if (h_eff_3q.rows() != 8 || h_eff_3q.cols() != 8) {
    throw EffhamError("three_body_kappa: need the 8-dim computational block");
  }
  // |q1 q2 q3> with index 4 q1 + 2 q2 + q3.
  const Index i110 = 6, i011 = 3, i100 = 4, i001 = 1;
  const Complex mediated = h_eff_3q(i110, i011);
  const Complex direct = h_eff_3q(i100, i001);
  ThreeBodyKappa out;
  out.kappa = mediated.real() - direct.real();
  out.imag_defect = std::abs(mediated.imag()) + std::abs(direct.imag());
  // K = (|110><011| + h.c.)/2 - (|100><001| + h.c.)/2, so the projection
  // reduces to the same real-part combination.
  out.trace_kappa = 0.5 * (h_eff_3q(i011, i110) + h_eff_3q(i110, i011)).real() -
                    0.5 * (h_eff_3q(i001, i100) + h_eff_3q(i100, i001)).real();
  return out;
}

}  // namespace effham
