#pragma once

#include "effham/types.hpp"

namespace effham {
namespace oracles {

// Closed-form reference expressions used to cross-validate the numerical
// constructors. Each term below is a one-to-one transcription of a printed
// formula; nothing is re-derived or simplified, so these stay independent
// of the numerical code paths they check. All parameters and results are
// ordinary frequencies in GHz.

struct ThreeLevelParams {
  double g_tilde = 0.0;
  double omega1_tilde = 0.0;
  double omega2_tilde = 0.0;
  double lambda = 0.0;  // renormalized coupler energy (LA only)
};

/// Fourth-order LA (= symmetrized BB) parameters of the three-level Q-C-Q
/// single-excitation model, cumulative through fourth order:
///   g~ = (g1 g2/2)[(1/D1 + 1/D2) - (g1^2/D1 + g2^2/D2)(1/D1^2 + 1/D2^2)]
///   w1~ = w1 + g1^2/D1 - g1^4/D1^3 - g1^2 g2^2/(D1^2 D2)
///   w2~ = w2 + g2^2/D2 - g2^4/D2^3 - g1^2 g2^2/(D1 D2^2)
///   lambda = wc - g1^2/D1 - g2^2/D2 + (g1^2/D1^2 + g2^2/D2^2)(g1^2/D1 + g2^2/D2)
/// with D_i = w_i - wc. Throws ZeroDetuning when a detuning vanishes.
ThreeLevelParams three_level_la_4th(double omega1, double omega2, double omega_c, double g1,
                                    double g2);

/// Fourth-order Schrieffer-Wolff parameters of the same model, cumulative
/// through fourth order. The second order coincides with BB; the
/// fourth-order hopping is
///   [g1 g2^3 D1 (5D1^2 - D1 D2 + 4D2^2) + g1^3 g2 D2 (4D1^2 - D1 D2 + 5D2^2)]
///     / (-8 D1^3 D2^3),
/// and the frequency corrections replace the cross term by
///   -g1^2 g2^2 (D1 + 3 D2) / (4 D1^2 D2^2)   (and 3D1 + D2 for mode 2).
ThreeLevelParams three_level_swt_4th(double omega1, double omega2, double omega_c, double g1,
                                     double g2);

struct FftSymmetric {
  double lambda1 = 0.0;  // coupler-branch eigenvalue
  double lambda2 = 0.0;  // symmetric qubit-branch eigenvalue
  double lambda3 = 0.0;  // antisymmetric branch (exactly 0)
  double g_tilde = 0.0;  // -g^2 / lambda1, satisfies 2 g~ = lambda2 - lambda3
};

/// Spectrum of [[Delta, g, g], [g, 0, 0], [g, 0, 0]] with
/// X = sqrt(8 g^2 + Delta^2), Delta = omega_c - omega_1 (nonzero). For
/// Delta < 0 the coupler branch is (Delta - X)/2 and the roles of lambda1
/// and lambda2 swap accordingly.
FftSymmetric fft_symmetric_identity(double delta, double g);

struct FftDetuned {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double two_g_tilde = 0.0;  // 2 g~ including the printed O(eps), O(eps^2) corrections
  double alpha1_sq = 0.0;    // 4g^2 / ((Delta+X)^2 + 8g^2)
  double alpha2_sq = 0.0;    // 4g^2 / ((Delta-X)^2 + 8g^2)
};

/// Second-order expansion in the qubit detuning eps = omega_2 - omega_1 of
/// the eigenvalues and of 2 g~ for [[Delta, g, g], [g, 0, 0], [g, 0, eps]].
FftDetuned fft_detuned_expansion(double delta, double g, double eps);

/// Second-order cross-resonance ZX strength
///   (Omega J / 2)(-1/D0d - 1/D01 + 1/(D0d + b0) + 1/(D01 + b0)).
double zx_second_order(double omega_drive, double j, double delta_0d, double delta_01,
                       double beta0);

struct CrDetunings {
  double delta_0d;  // nu_0 - nu_d
  double delta_1d;  // nu_1 - nu_d
  double delta_01;  // nu_0 - nu_1
  double sigma_01;  // rotating-frame two-photon energy, delta_0d + delta_1d
};

struct ZxFourthOrder {
  std::array<double, 5> h1_routes{};   // <00|..|01> block, printed order
  std::array<double, 12> h2_routes{};  // <10|..|11> block, printed order
  double h1_sum = 0.0;
  double h2_sum = 0.0;
  double nu_zx_4 = 0.0;  // h1_sum - h2_sum (extraction convention nu_ZX = 2 c_ZX)
};

/// Fourth-order CR routes: five paths between |00> and |01>, twelve between
/// |10> and |11>, each transcribed term by term. Third-order contributions
/// vanish by parity. Throws ResonantDenominator naming the route when one
/// of the printed denominators vanishes.
ZxFourthOrder zx_fourth_order(double omega_drive, double j, const CrDetunings& det, double alpha0,
                              double alpha1);

struct TwoSiteIntermediates {
  double e000, e100, e010, e200, e101, e110, e020;  // CRW-dressed energies
  double g1c, g12c;                                 // dressed couplings
  double k0, k1, j0, j1, j1c;                       // two-excitation couplings
  double delta_1c;                                  // e100 - e010
  double delta_1p;                                  // e101 - e110
};

struct TwoSiteZz {
  double zeta2 = 0.0;
  double zeta3 = 0.0;
  double zeta4 = 0.0;
  double zeta = 0.0;
  // Resonance predictors in Delta_1 = omega_1 - omega_c:
  double resonance_beta1 = 0.0;   // near -beta_1
  double resonance_beta_c = 0.0;  // near beta_c / 2
  TwoSiteIntermediates mid;
};

/// Symmetric two-site ZZ strength through fourth order
/// (omega_2 = omega_1, beta_2 = beta_1, g_2 = g_1 as the derivation
/// assumes), along with all printed CRW-dressed intermediates.
TwoSiteZz two_site_zz(double omega1, double beta1, double omega_c, double beta_c, double g1,
                      double g12);

struct TwoSiteHopping {
  double g_tilde_2 = 0.0;
  double g_tilde_4 = 0.0;  // printed form is cumulative: g~(4) = g~(2) - ...
  double e10_dressed = 0.0;
  double e00_dressed = 0.0;
  TwoSiteIntermediates mid;
};

/// Symmetric two-site effective hopping through fourth order:
///   g~(2) = g12 + g1C g2C/D1cC - g1 g2/S1c
///   g~(4) = g~(2) - g1C g2C g12/D1cC^2 - 2 (g1C)^4/D1cC^3
TwoSiteHopping two_site_hopping(double omega1, double beta1, double omega_c, double beta_c,
                                double g1, double g12);

struct KappaAnalytic {
  double kappa110 = 0.0;
  double kappa100 = 0.0;
  double kappa = 0.0;  // kappa110 - kappa100
};

/// Mediated three-body strength of the symmetric five-mode chain:
///   k110 = 2 g12^2/(D12 - b2)
///        + g12 g1^2 [4/((D12 - b2) D1c) + 3/(2 D1c D2c)]
///        + g1^4 [ (1/(D1c + D2c))(1/D1c + 1/D2c)^2
///                 + 2/(D1c^2 (D12 - b2)) - 1/(D1c D2c^2) ]
///   k100 = g12^2/D12 - g1^2 g12/(D1c D2c) - g1^4/(D1c^2 D2c)
KappaAnalytic kappa_analytic(double g12, double g1, double delta_12, double delta_1c,
                             double delta_2c, double beta2);

}  // namespace oracles
}  // namespace effham
