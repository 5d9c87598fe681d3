#include "effham/models.hpp"

#include <cmath>
#include <string>

namespace effham {

namespace {

// SI defining constants, 10 significant digits.
constexpr double kElementaryCharge = 1.602176634e-19;  // C
constexpr double kPlanck = 6.626070150e-34;            // J s

std::vector<Index> mode_strides(const std::vector<Index>& levels) {
  std::vector<Index> strides(levels.size());
  Index stride = 1;
  for (size_t m = levels.size(); m-- > 0;) {
    strides[m] = stride;
    stride *= levels[m];
  }
  return strides;
}

}  // namespace

Index CircuitModel::dim() const {
  Index d = 1;
  for (const Mode& mode : modes) d *= mode.levels;
  return d;
}

std::vector<Index> CircuitModel::level_counts() const {
  std::vector<Index> levels;
  levels.reserve(modes.size());
  for (const Mode& mode : modes) levels.push_back(mode.levels);
  return levels;
}

Index CircuitModel::basis_index(const std::vector<Index>& occupations) const {
  if (occupations.size() != modes.size()) {
    throw EffhamError("basis_index: occupation count mismatch");
  }
  const auto strides = mode_strides(level_counts());
  Index idx = 0;
  for (size_t m = 0; m < modes.size(); ++m) {
    if (occupations[m] < 0 || occupations[m] >= modes[m].levels) {
      throw EffhamError("basis_index: occupation out of range for mode " + std::to_string(m));
    }
    idx += occupations[m] * strides[m];
  }
  return idx;
}

std::vector<Index> CircuitModel::occupations(Index basis_index) const {
  const auto strides = mode_strides(level_counts());
  std::vector<Index> occ(modes.size());
  for (size_t m = 0; m < modes.size(); ++m) {
    occ[m] = basis_index / strides[m];
    basis_index %= strides[m];
  }
  return occ;
}

ComplexMatrix mode_annihilator(const CircuitModel& model, Index mode) {
  const Index d = model.dim();
  const auto strides = mode_strides(model.level_counts());
  const Index levels = model.modes[static_cast<size_t>(mode)].levels;
  const Index stride = strides[static_cast<size_t>(mode)];
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (Index idx = 0; idx < d; ++idx) {
    const Index n = (idx / stride) % levels;
    if (n > 0) a(idx - stride, idx) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

ComplexMatrix build_hamiltonian(const CircuitModel& model) {
  if (model.modes.empty()) throw EffhamError("build_hamiltonian: no modes");
  for (const Mode& mode : model.modes) {
    if (mode.levels < 2 || !std::isfinite(mode.frequency) || !std::isfinite(mode.anharmonicity)) {
      throw EffhamError("build_hamiltonian: invalid mode parameters");
    }
  }
  const Index d = model.dim();
  if (d > model.dimension_cap) {
    throw DimensionCap("build_hamiltonian: dimension " + std::to_string(d) + " exceeds cap " +
                       std::to_string(model.dimension_cap));
  }

  ComplexMatrix h = ComplexMatrix::Zero(d, d);

  // Diagonal: sum_i omega_i n_i + (beta_i/2) n_i (n_i - 1).
  for (Index idx = 0; idx < d; ++idx) {
    const auto occ = model.occupations(idx);
    double e = 0.0;
    for (size_t m = 0; m < model.modes.size(); ++m) {
      const double n = static_cast<double>(occ[m]);
      e += model.modes[m].frequency * n + 0.5 * model.modes[m].anharmonicity * n * (n - 1.0);
    }
    h(idx, idx) = e;
  }

  for (const CouplingSpec& coupling : model.couplings) {
    if (coupling.a == coupling.b || coupling.a < 0 || coupling.b < 0 ||
        coupling.a >= static_cast<Index>(model.modes.size()) ||
        coupling.b >= static_cast<Index>(model.modes.size())) {
      throw EffhamError("build_hamiltonian: invalid coupling mode pair");
    }
    const ComplexMatrix a = mode_annihilator(model, coupling.a);
    const ComplexMatrix b = mode_annihilator(model, coupling.b);
    if (coupling.form == CouplingForm::kExchange) {
      h += coupling.strength * (a.adjoint() * b + a * b.adjoint());
    } else {
      h += -coupling.strength * (a - a.adjoint()) * (b - b.adjoint());
    }
  }

  if (model.drive) {
    const DriveFrame& drive = *model.drive;
    if (drive.amplitude < 0.0) throw EffhamError("build_hamiltonian: negative drive amplitude");
    const ComplexMatrix a = mode_annihilator(model, drive.driven_mode);
    h += 0.5 * drive.amplitude * (a + a.adjoint());
    for (Index idx = 0; idx < d; ++idx) {
      const auto occ = model.occupations(idx);
      Index total = 0;
      for (Index n : occ) total += n;
      h(idx, idx) -= drive.frame_frequency * static_cast<double>(total);
    }
  }
  return h;
}

BlockPartition coupler_ground_partition(const CircuitModel& model) {
  std::vector<bool> is_coupler;
  is_coupler.reserve(model.modes.size());
  bool any = false;
  for (const Mode& mode : model.modes) {
    const bool c = !mode.label.empty() && mode.label.front() == 'c';
    is_coupler.push_back(c);
    any = any || c;
  }
  if (!any) throw EffhamError("coupler_ground_partition: no coupler-labeled modes");
  std::vector<Index> ground;
  for (Index idx = 0; idx < model.dim(); ++idx) {
    const auto occ = model.occupations(idx);
    bool ok = true;
    for (size_t m = 0; m < occ.size(); ++m) {
      if (is_coupler[m] && occ[m] != 0) ok = false;
    }
    if (ok) ground.push_back(idx);
  }
  return BlockPartition::bipartition(std::move(ground), model.dim());
}

BlockPartition excitation_number_partition(const CircuitModel& model) {
  Index max_n = 0;
  for (const Mode& mode : model.modes) max_n += mode.levels - 1;
  std::vector<std::vector<Index>> blocks(static_cast<size_t>(max_n) + 1);
  for (Index idx = 0; idx < model.dim(); ++idx) {
    Index total = 0;
    for (Index n : model.occupations(idx)) total += n;
    blocks[static_cast<size_t>(total)].push_back(idx);
  }
  return BlockPartition(std::move(blocks), model.dim());
}

ComplexMatrix qcq_single_excitation(double omega1, double omega2, double omega_c, double g1,
                                    double g2) {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 0) = omega_c;
  h(1, 1) = omega1;
  h(2, 2) = omega2;
  h(0, 1) = h(1, 0) = g1;
  h(0, 2) = h(2, 0) = g2;
  return h;
}

CsfqParams csfq_params(double c_j_fF, double c_s_fF, double e_j_ghz, double alpha, double phi_e1,
                       int k) {
  const double c_minus = (alpha * c_j_fF + c_s_fF + 0.5 * c_j_fF) * 1e-15;  // F
  const double e_c = kElementaryCharge * kElementaryCharge / (2.0 * c_minus * kPlanck) / 1e9;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  const double e_j_eff = e_j_ghz * (0.5 + sign * alpha * std::cos(0.5 * phi_e1));
  if (e_j_eff <= 0.0) {
    throw NonPositiveJosephson("csfq_params: E_J' = " + std::to_string(e_j_eff) + " GHz");
  }
  CsfqParams out;
  out.e_c = e_c;
  out.e_j_eff = e_j_eff;
  out.omega_q = std::sqrt(8.0 * e_j_eff * e_c) - e_c + 3.0 * e_j_ghz * e_c / (8.0 * e_j_eff);
  out.beta = -e_c + 3.0 * e_j_ghz * e_c / (8.0 * e_j_eff);
  out.low_ratio_warning = e_j_eff / e_c < 50.0;
  return out;
}

namespace {

void require_nonzero(double denom, const char* name) {
  if (denom == 0.0) {
    throw ResonantDenominator(std::string("zero denominator ") + name, -1, -1, 0.0);
  }
}

}  // namespace

QcqRenormalized crw_renormalized_qcq(double omega1, double omega2, double omega_c, double beta1,
                                     double beta2, double beta_c, double g1, double g2,
                                     double g12) {
  const double s1 = omega1 + omega_c;
  const double s2 = omega2 + omega_c;
  const double s12 = omega1 + omega2;
  for (double denom : {s1, s2, s12, s1 + beta_c, s2 + beta_c, s1 + beta1, s2 + beta2, s12 + beta1,
                       s12 + beta2}) {
    require_nonzero(denom, "crw_renormalized_qcq");
  }
  QcqRenormalized out;
  out.omega_c = omega_c - 2.0 * g1 * g1 / (s1 + beta_c) - 2.0 * g2 * g2 / (s2 + beta_c) -
                g12 * g12 / s12;
  out.omega1 = omega1 - 2.0 * g1 * g1 / (s1 + beta1) - g2 * g2 / s2 -
               2.0 * g12 * g12 / (s12 + beta1);
  out.omega2 = omega2 - g1 * g1 / s1 - 2.0 * g2 * g2 / (s2 + beta2) -
               2.0 * g12 * g12 / (s12 + beta2);
  out.g1 = g1 - g2 * g12 / s2;
  out.g2 = g2 - g1 * g12 / s1;
  out.g12 = g12 - 0.5 * g1 * g2 * (1.0 / s1 + 1.0 / s2);
  return out;
}

CrParams cr_dressed_from_bare(const CrParams& bare, double j) {
  const double d01 = bare.nu0 - bare.nu1;
  const double s01 = bare.nu0 + bare.nu1;
  const double j2 = j * j;
  for (double denom : {d01, s01 + bare.alpha0, s01 + bare.alpha1, d01 + bare.alpha0,
                       d01 - bare.alpha1, s01 + 2.0 * bare.alpha0, s01 + 2.0 * bare.alpha1}) {
    require_nonzero(denom, "cr_dressed_from_bare");
  }
  CrParams dressed;
  dressed.nu0 = bare.nu0 + j2 / d01 - 2.0 * j2 / (s01 + bare.alpha0);
  dressed.nu1 = bare.nu1 - j2 / d01 - 2.0 * j2 / (s01 + bare.alpha1);
  dressed.alpha0 = bare.alpha0 + 2.0 * j2 * (1.0 / (d01 + bare.alpha0) - 1.0 / d01) +
                   j2 * (4.0 / (s01 + bare.alpha0) - 3.0 / (s01 + 2.0 * bare.alpha0));
  dressed.alpha1 = bare.alpha1 + 2.0 * j2 * (1.0 / d01 - 1.0 / (d01 - bare.alpha1)) +
                   j2 * (4.0 / (s01 + bare.alpha1) - 3.0 / (s01 + 2.0 * bare.alpha1));
  return dressed;
}

CrParams cr_bare_from_dressed(const CrParams& dressed, double j, double tol) {
  CrParams bare = dressed;
  for (int iter = 0; iter < 100; ++iter) {
    const CrParams forward = cr_dressed_from_bare(bare, j);
    const CrParams next{bare.nu0 + (dressed.nu0 - forward.nu0),
                        bare.nu1 + (dressed.nu1 - forward.nu1),
                        bare.alpha0 + (dressed.alpha0 - forward.alpha0),
                        bare.alpha1 + (dressed.alpha1 - forward.alpha1)};
    const double step = std::abs(next.nu0 - bare.nu0) + std::abs(next.nu1 - bare.nu1) +
                        std::abs(next.alpha0 - bare.alpha0) + std::abs(next.alpha1 - bare.alpha1);
    bare = next;
    if (step < tol) return bare;
  }
  throw NoConvergence("cr_bare_from_dressed: fixed point did not converge in 100 iterations");
}

CrParams cr_crw_shifts(const CrParams& bare, double j) {
  const double s01 = bare.nu0 + bare.nu1;
  const double j2 = j * j;
  for (double denom : {s01, s01 + bare.alpha0, s01 + bare.alpha1, s01 + 2.0 * bare.alpha0,
                       s01 + 2.0 * bare.alpha1}) {
    require_nonzero(denom, "cr_crw_shifts");
  }
  CrParams primed;
  primed.nu0 = bare.nu0 + j2 / s01 - 2.0 * j2 / (s01 + bare.alpha0);
  primed.nu1 = bare.nu1 + j2 / s01 - 2.0 * j2 / (s01 + bare.alpha1);
  primed.alpha0 = bare.alpha0 + 4.0 * j2 / (s01 + bare.alpha0) - 2.0 * j2 / s01 -
                  3.0 * j2 / (s01 + 2.0 * bare.alpha0);
  primed.alpha1 = bare.alpha1 + 4.0 * j2 / (s01 + bare.alpha1) - 2.0 * j2 / s01 -
                  3.0 * j2 / (s01 + 2.0 * bare.alpha1);
  return primed;
}

EbhmParams ebhm_map(double g_tilde, double beta1_tilde, double beta2_tilde, double omega1_tilde,
                    double omega2_tilde, double zeta) {
  EbhmParams out;
  out.j_hop = -g_tilde;
  out.asymmetric_u_warning = std::abs(beta1_tilde - beta2_tilde) > 1e-9;
  out.u = out.asymmetric_u_warning ? 0.5 * (beta1_tilde + beta2_tilde) : beta1_tilde;
  out.mu1 = 0.0;
  out.mu2 = -(omega2_tilde - omega1_tilde);
  out.v = zeta;
  return out;
}

CapacitiveCouplings capacitive_couplings(double c1_fF, double c2_fF, double cc_fF, double c1c_fF,
                                         double c2c_fF, double c12_fF, double omega1,
                                         double omega2, double omega_c) {
  CapacitiveCouplings out;
  out.g1 = 0.5 * c1c_fF / std::sqrt(c1_fF * cc_fF) * std::sqrt(omega1 * omega_c);
  out.g2 = 0.5 * c2c_fF / std::sqrt(c2_fF * cc_fF) * std::sqrt(omega2 * omega_c);
  out.g12 = 0.5 *
            (c12_fF / std::sqrt(c1_fF * c2_fF) +
             c1c_fF * c2c_fF / std::sqrt(c1_fF * c2_fF * cc_fF * cc_fF)) *
            std::sqrt(omega1 * omega2);
  return out;
}

}  // namespace effham
