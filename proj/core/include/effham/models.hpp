#pragma once

#include "effham/partition.hpp"

#include <optional>
#include <string>
#include <vector>

namespace effham {

/// One bosonic circuit mode truncated to `levels` states. Frequencies and
/// anharmonicities are ordinary frequencies in GHz. Modes whose label starts
/// with 'c' count as couplers for the symbolic partition selectors.
struct Mode {
  double frequency = 0.0;      // GHz
  double anharmonicity = 0.0;  // GHz
  Index levels = 2;
  std::string label;
};

enum class CouplingForm {
  kExchange,   //  g (a^dag b + a b^dag)
  kFullDipole  // -g (a - a^dag)(b - b^dag)
};

struct CouplingSpec {
  Index a = 0;
  Index b = 0;
  double strength = 0.0;  // GHz
  CouplingForm form = CouplingForm::kExchange;
};

/// Static drive in the rotating frame: (Omega/2)(a + a^dag) on the driven
/// mode together with the frame subtraction -omega_d * sum_i n_i.
struct DriveFrame {
  Index driven_mode = 0;
  double amplitude = 0.0;        // Omega, GHz
  double frame_frequency = 0.0;  // omega_d, GHz
};

struct CircuitModel {
  std::vector<Mode> modes;
  std::vector<CouplingSpec> couplings;
  std::optional<DriveFrame> drive;
  Index dimension_cap = 4096;

  Index dim() const;
  /// Basis index of an occupation pattern (mode 0 most significant digit).
  Index basis_index(const std::vector<Index>& occupations) const;
  std::vector<Index> occupations(Index basis_index) const;
  std::vector<Index> level_counts() const;
};

ComplexMatrix build_hamiltonian(const CircuitModel& model);

/// Annihilation operator of one mode embedded in the model's product space.
ComplexMatrix mode_annihilator(const CircuitModel& model, Index mode);

/// Bipartition {states with every coupler mode in its ground state, rest}.
/// Couplers are the modes whose label starts with 'c'.
BlockPartition coupler_ground_partition(const CircuitModel& model);

/// Blocks grouped by total excitation number, ascending.
BlockPartition excitation_number_partition(const CircuitModel& model);

/// Three-level Q-C-Q single-excitation Hamiltonian in the basis
/// {|010>, |100>, |001>} (coupler component first):
///   [[omega_c, g1, g2], [g1, omega_1, 0], [g2, 0, omega_2]].
/// The matching partition is {{0}, {1, 2}} with the qubit block at index 1.
ComplexMatrix qcq_single_excitation(double omega1, double omega2, double omega_c, double g1,
                                    double g2);

struct CsfqParams {
  double omega_q = 0.0;    // GHz
  double beta = 0.0;       // GHz
  double e_c = 0.0;        // GHz
  double e_j_eff = 0.0;    // GHz
  bool low_ratio_warning = false;  // E_J'/E_C < 50
};

/// Improved CSFQ Duffing parameters at the sweet spot
/// phi_e2 + phi_e1/2 = k pi:
///   E_J' = E_J [1/2 + (-1)^k alpha cos(phi_e1 / 2)]
///   omega_q = sqrt(8 E_J' E_C) - E_C + 3 E_J E_C / (8 E_J')
///   beta = -E_C + 3 E_J E_C / (8 E_J')
/// with E_C = e^2 / (2 C_-) / h, C_- = alpha C_J + C_S + C_J/2.
CsfqParams csfq_params(double c_j_fF, double c_s_fF, double e_j_ghz, double alpha, double phi_e1,
                       int k);

struct QcqRenormalized {
  double omega1, omega2, omega_c;
  double g1, g2, g12;
};

/// Second-order counter-rotating-wave renormalization of the Q-C-Q
/// parameter set (Sigma_j = omega_j + omega_c, Sigma_12 = omega_1 + omega_2):
///   omega_c~ = omega_c - 2g1^2/(S1+bc) - 2g2^2/(S2+bc) - g12^2/S12
///   omega_1~ = omega_1 - 2g1^2/(S1+b1) - g2^2/S2 - 2g12^2/(S12+b1)
///   omega_2~ = omega_2 - g1^2/S1 - 2g2^2/(S2+b2) - 2g12^2/(S12+b2)
///   g1~ = g1 - g2 g12/S2,  g2~ = g2 - g1 g12/S1
///   g12~ = g12 - (g1 g2/2)(1/S1 + 1/S2)
QcqRenormalized crw_renormalized_qcq(double omega1, double omega2, double omega_c, double beta1,
                                     double beta2, double beta_c, double g1, double g2,
                                     double g12);

struct CrParams {
  double nu0, nu1;      // GHz
  double alpha0, alpha1;  // GHz
};

/// Forward map from bare to J-dressed transmon parameters (the quantities an
/// experiment measures).
CrParams cr_dressed_from_bare(const CrParams& bare, double j);

/// Inverts cr_dressed_from_bare by fixed-point iteration; NoConvergence
/// after 100 iterations. Inserting the result into the forward map
/// reproduces the inputs to 1e-6 GHz.
CrParams cr_bare_from_dressed(const CrParams& dressed, double j, double tol = 1e-12);

/// Counter-rotating-wave-only shifts used before the rotating-frame CR
/// analysis:
///   nu_i'   = nu_i + J^2/S01 - 2J^2/(S01 + a_i)
///   alpha_i'= a_i + 4J^2/(S01 + a_i) - 2J^2/S01 - 3J^2/(S01 + 2 a_i)
CrParams cr_crw_shifts(const CrParams& bare, double j);

struct EbhmParams {
  double j_hop;   // J = -g~
  double u;       // on-site interaction
  double mu1, mu2;
  double v;       // nearest-neighbor interaction
  bool asymmetric_u_warning = false;
};

/// Rotating-frame identification (J, U, mu_1, mu_2, V) =
/// (-g~, beta~, 0, -(omega~_2 - omega~_1), zeta). When beta~_1 and beta~_2
/// differ beyond 1e-9 the mean is used and a warning is set.
EbhmParams ebhm_map(double g_tilde, double beta1_tilde, double beta2_tilde, double omega1_tilde,
                    double omega2_tilde, double zeta);

struct CapacitiveCouplings {
  double g1, g2, g12;  // GHz
};

/// Capacitance-network estimate
///   g_j  = (1/2) C_jc / sqrt(C_j C_c) sqrt(omega_j omega_c)
///   g_12 = (1/2) [C_12/sqrt(C_1 C_2) + C_1c C_2c / sqrt(C_1 C_2 C_c^2)]
///          * sqrt(omega_1 omega_2)
CapacitiveCouplings capacitive_couplings(double c1_fF, double c2_fF, double cc_fF, double c1c_fF,
                                         double c2c_fF, double c12_fF, double omega1,
                                         double omega2, double omega_c);

}  // namespace effham
