#include "effham/experiments.hpp"

#include "effham/bloch_brandow.hpp"
#include "effham/dynamics.hpp"
#include "effham/least_action.hpp"
#include "effham/linalg.hpp"
#include "effham/models.hpp"
#include "effham/oracles.hpp"
#include "effham/partition.hpp"
#include "effham/philox.hpp"
#include "effham/schrieffer_wolff.hpp"
#include "effham/symmetry.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <thread>

namespace effham {

using nlohmann::json;

namespace {

std::string fmt_cell(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

using Cell = std::optional<double>;

struct Row {
  std::vector<Cell> cells;
  std::string warning;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

// Evaluates rows concurrently but collects them in input order, so the
// output is independent of scheduling.
Table evaluate_rows(std::vector<std::string> columns, int n_rows, int jobs,
                    const std::function<Row(int)>& eval) {
  Table table;
  table.columns = std::move(columns);
  table.rows.resize(static_cast<size_t>(n_rows));
  if (jobs <= 1 || n_rows <= 1) {
    for (int i = 0; i < n_rows; ++i) table.rows[static_cast<size_t>(i)] = eval(i);
    return table;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= n_rows) return;
      table.rows[static_cast<size_t>(i)] = eval(i);
    }
  };
  std::vector<std::thread> threads;
  const int n_threads = std::min(jobs, n_rows);
  threads.reserve(static_cast<size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return table;
}

Row error_row(size_t n_cells, const std::string& message) {
  Row row;
  row.cells.assign(n_cells, std::nullopt);
  row.warning = message;
  return row;
}

double require_number(const json& block, const std::string& key) {
  if (!block.contains(key) || !block[key].is_number()) {
    throw ConfigError("missing numeric key '" + key + "'");
  }
  return block[key].get<double>();
}

// ---------------------------------------------------------------------------
// Model parsing

struct ThreeLevelModel {
  double omega1, omega2, omega_c, g1, g2;
};

ThreeLevelModel parse_three_level(const json& model) {
  if (!model.contains("three_level")) throw ConfigError("model.three_level block required");
  const json& m = model["three_level"];
  return ThreeLevelModel{require_number(m, "omega1_ghz"), require_number(m, "omega2_ghz"),
                         require_number(m, "omega_c_ghz"), require_number(m, "g1_ghz"),
                         require_number(m, "g2_ghz")};
}

CircuitModel parse_circuit_model(const json& model) {
  if (!model.contains("modes") || !model["modes"].is_array()) {
    throw ConfigError("model.modes array required");
  }
  CircuitModel circuit;
  for (const json& m : model["modes"]) {
    Mode mode;
    mode.label = m.value("label", std::string("m") + std::to_string(circuit.modes.size()));
    mode.levels = m.value("levels", 3);
    if (m.contains("csfq")) {
      const json& c = m["csfq"];
      const CsfqParams p = csfq_params(require_number(c, "c_j_fF"), require_number(c, "c_s_fF"),
                                       require_number(c, "e_j_ghz"), require_number(c, "alpha"),
                                       require_number(c, "phi_e1"), c.value("k", 0));
      mode.frequency = p.omega_q;
      mode.anharmonicity = p.beta;
    } else {
      mode.frequency = require_number(m, "freq_ghz");
      mode.anharmonicity = m.value("anharm_ghz", 0.0);
    }
    circuit.modes.push_back(mode);
  }
  for (const json& c : model.value("couplings", json::array())) {
    CouplingSpec spec;
    spec.a = c.at("a").get<Index>();
    spec.b = c.at("b").get<Index>();
    spec.strength = require_number(c, "g_ghz");
    const std::string form = c.value("form", "exchange");
    if (form == "exchange") {
      spec.form = CouplingForm::kExchange;
    } else if (form == "full_dipole") {
      spec.form = CouplingForm::kFullDipole;
    } else {
      throw ConfigError("unknown coupling form '" + form + "'");
    }
    circuit.couplings.push_back(spec);
  }
  if (model.contains("drive")) {
    const json& d = model["drive"];
    circuit.drive = DriveFrame{d.at("mode").get<Index>(), require_number(d, "omega_ghz"),
                               require_number(d, "frame_ghz")};
  }
  return circuit;
}

std::vector<Index> parse_state(const std::string& digits, size_t n_modes) {
  if (digits.size() != n_modes) {
    throw ConfigError("initial state '" + digits + "' does not match mode count");
  }
  std::vector<Index> occ;
  occ.reserve(digits.size());
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw ConfigError("bad state digit in '" + digits + "'");
    occ.push_back(ch - '0');
  }
  return occ;
}

// ---------------------------------------------------------------------------
// Method helpers

struct ThreeLevelEffective {
  double g_tilde, omega1_tilde, omega2_tilde;
};

ThreeLevelEffective three_level_elements(const ComplexMatrix& h_eff) {
  return ThreeLevelEffective{h_eff(1, 2).real(), h_eff(1, 1).real(), h_eff(2, 2).real()};
}

BlockPartition three_level_partition() {
  return BlockPartition({{0}, {1, 2}}, 3);
}

bool has_method(const std::vector<std::string>& methods, const std::string& name) {
  return std::find(methods.begin(), methods.end(), name) != methods.end();
}

// ---------------------------------------------------------------------------
// compare3: perturbative-method comparison on the three-level model

Table run_compare3(const ExperimentConfig& cfg, int jobs) {
  const ThreeLevelModel base = parse_three_level(*cfg.model);
  const SweepSpec sweep = cfg.sweep.value();
  if (sweep.parameter != "three_level.omega_c_ghz") {
    throw ConfigError("compare3 sweeps three_level.omega_c_ghz");
  }

  std::vector<std::string> columns{"omega_c_ghz"};
  const std::vector<std::string> known{"la", "bb2", "bb4", "swt2", "gr"};
  std::vector<std::string> methods;
  for (const std::string& m : known) {
    if (has_method(cfg.methods, m)) methods.push_back(m);
  }
  if (methods.empty()) throw ConfigError("compare3: no recognized methods");
  for (const std::string& m : methods) {
    columns.push_back("gt_" + m + "_ghz");
    columns.push_back("w1_" + m + "_ghz");
    columns.push_back("w2_" + m + "_ghz");
  }
  columns.insert(columns.end(), {"distance_sq", "fidelity_bound", "soundness"});
  const size_t n_cells = columns.size() - 1;

  auto eval = [&](int i) -> Row {
    const double omega_c = sweep.value_at(i);
    Row row;
    row.cells.push_back(omega_c);
    try {
      const ComplexMatrix h = qcq_single_excitation(base.omega1, base.omega2, omega_c, base.g1,
                                                    base.g2);
      const BlockPartition partition = three_level_partition();
      std::optional<EffectiveResult> la;
      for (const std::string& m : methods) {
        ComplexMatrix h_eff;
        if (m == "la") {
          la = least_action_transform(h, partition, 1);
          h_eff = la->h_bd;
        } else if (m == "bb2" || m == "bb4") {
          h_eff = bb_effective(PerturbationSplit::from_hamiltonian(h, partition),
                               m == "bb2" ? 2 : 4, true);
        } else if (m == "swt2") {
          h_eff = swt_second_order(PerturbationSplit::from_hamiltonian(h, partition));
        } else {
          h_eff = givens_block_diagonalize(h, partition).h_bd;
        }
        const ThreeLevelEffective e = three_level_elements(h_eff);
        row.cells.insert(row.cells.end(), {e.g_tilde, e.omega1_tilde, e.omega2_tilde});
      }
      if (la) {
        row.cells.insert(row.cells.end(),
                         {la->distance_sq, la->fidelity_bound, la->soundness.value_or(0.0)});
        if (la->low_overlap_warning) row.warning = "low_overlap";
      } else {
        row.cells.insert(row.cells.end(), {std::nullopt, std::nullopt, std::nullopt});
      }
    } catch (const EffhamError& err) {
      Row bad = error_row(n_cells, err.what());
      bad.cells.insert(bad.cells.begin(), omega_c);
      return bad;
    }
    return row;
  };
  return evaluate_rows(columns, sweep.points, jobs, eval);
}

// ---------------------------------------------------------------------------
// qcq_sweep: LA / GR effective coupling vs the FFT of the full dynamics

Table run_qcq_sweep(const ExperimentConfig& cfg, int jobs) {
  const ThreeLevelModel base = parse_three_level(*cfg.model);
  const SweepSpec sweep = cfg.sweep.value();
  if (sweep.parameter != "three_level.omega_c_ghz") {
    throw ConfigError("qcq_sweep sweeps three_level.omega_c_ghz");
  }
  const DynamicsSpec dyn = cfg.dynamics.value_or(DynamicsSpec{20000.0, 32768, {}});

  const std::vector<std::string> columns{"omega_c_ghz", "two_gt_la_ghz", "two_gt_gr_ghz",
                                         "two_gt_fft_ghz", "eta_la", "eta_gr", "soundness"};
  auto eval = [&](int i) -> Row {
    const double omega_c = sweep.value_at(i);
    Row row;
    row.cells.push_back(omega_c);
    try {
      const ComplexMatrix h = qcq_single_excitation(base.omega1, base.omega2, omega_c, base.g1,
                                                    base.g2);
      const BlockPartition partition = three_level_partition();
      const EffectiveResult la = least_action_transform(h, partition, 1);
      const EffectiveResult gr = givens_block_diagonalize(h, partition);
      const double gt_la = la.h_bd(1, 2).real();
      const double gt_gr = gr.h_bd(1, 2).real();
      const double gt_fft = fft_extract_coupling(h, 1, 2, dyn.t_ns, 4, dyn.steps);
      row.cells.insert(row.cells.end(),
                       {2.0 * std::abs(gt_la), 2.0 * std::abs(gt_gr), 2.0 * gt_fft,
                        std::abs((std::abs(gt_la) - gt_fft) / gt_fft),
                        std::abs((std::abs(gt_gr) - gt_fft) / gt_fft),
                        la.soundness.value_or(0.0)});
      if (la.low_overlap_warning) row.warning = "low_overlap";
    } catch (const EffhamError& err) {
      Row bad = error_row(columns.size() - 1, err.what());
      bad.cells.insert(bad.cells.begin(), omega_c);
      return bad;
    }
    return row;
  };
  return evaluate_rows(columns, sweep.points, jobs, eval);
}

// ---------------------------------------------------------------------------
// rwa: counter-rotating renormalization vs bare RWA, statics and dynamics

Table run_rwa(const ExperimentConfig& cfg, int jobs) {
  CircuitModel base = parse_circuit_model(*cfg.model);
  if (base.modes.size() != 3 || base.couplings.size() != 3) {
    throw ConfigError("rwa expects modes [q1, c, q2] and couplings (0,1), (1,2), (0,2)");
  }
  const SweepSpec sweep = cfg.sweep.value();
  if (sweep.parameter != "sym_qc_coupling_ghz") {
    throw ConfigError("rwa sweeps sym_qc_coupling_ghz");
  }
  const DynamicsSpec dyn = cfg.dynamics.value_or(DynamicsSpec{10000.0, 4096, {"100"}});
  const std::string init = dyn.initial_states.empty() ? "100" : dyn.initial_states.front();

  const std::vector<std::string> columns{"g_ghz",           "g12_tilde_ghz", "g_decoup2_ghz",
                                         "g_decoup2_rwa_ghz", "infid_eff",     "infid_rwa"};
  auto eval = [&](int i) -> Row {
    const double g = sweep.value_at(i);
    Row row;
    row.cells.push_back(g);
    try {
      CircuitModel full = base;
      full.couplings[0].strength = g;
      full.couplings[1].strength = g;
      const double w1 = full.modes[0].frequency;
      const double wc = full.modes[1].frequency;
      const double w2 = full.modes[2].frequency;
      const double g12 = full.couplings[2].strength;

      const QcqRenormalized ren = crw_renormalized_qcq(
          w1, w2, wc, full.modes[0].anharmonicity, full.modes[2].anharmonicity,
          full.modes[1].anharmonicity, g, g, g12);

      const double d1 = w1 - wc;
      const double d2 = w2 - wc;
      const double s1 = w1 + wc;
      const double s2 = w2 + wc;
      const double decoup = 0.5 * g * g * (1.0 / d1 + 1.0 / d2 - 1.0 / s1 - 1.0 / s2) + g12;
      const double decoup_rwa = 0.5 * g * g * (1.0 / d1 + 1.0 / d2) + g12;

      CircuitModel eff = full;
      eff.modes[0].frequency = ren.omega1;
      eff.modes[1].frequency = ren.omega_c;
      eff.modes[2].frequency = ren.omega2;
      eff.couplings[0] = {0, 1, ren.g1, CouplingForm::kExchange};
      eff.couplings[1] = {1, 2, ren.g2, CouplingForm::kExchange};
      eff.couplings[2] = {0, 2, ren.g12, CouplingForm::kExchange};

      CircuitModel rwa = full;
      for (CouplingSpec& c : rwa.couplings) c.form = CouplingForm::kExchange;

      const ComplexMatrix h_full = build_hamiltonian(full);
      const ComplexMatrix h_eff = build_hamiltonian(eff);
      const ComplexMatrix h_rwa = build_hamiltonian(rwa);

      std::vector<Index> all(static_cast<size_t>(full.dim()));
      for (Index k = 0; k < full.dim(); ++k) all[static_cast<size_t>(k)] = k;
      ComplexVector psi0 = ComplexVector::Zero(full.dim());
      psi0[full.basis_index(parse_state(init, full.modes.size()))] = 1.0;

      const double f_eff =
          avg_projected_fidelity(h_full, h_eff, all, psi0, dyn.t_ns, dyn.steps).mean;
      const double f_rwa =
          avg_projected_fidelity(h_full, h_rwa, all, psi0, dyn.t_ns, dyn.steps).mean;

      row.cells.insert(row.cells.end(),
                       {ren.g12, decoup, decoup_rwa, 1.0 - f_eff, 1.0 - f_rwa});
    } catch (const EffhamError& err) {
      Row bad = error_row(columns.size() - 1, err.what());
      bad.cells.insert(bad.cells.begin(), g);
      return bad;
    }
    return row;
  };
  return evaluate_rows(columns, sweep.points, jobs, eval);
}

// ---------------------------------------------------------------------------
// cr_zx: driven two-transmon ZX strength, numeric vs closed forms

struct CrModel {
  CrParams bare;
  double j, nu_d;
  Index levels0, levels1;
};

CrModel parse_cr(const json& model) {
  if (!model.contains("cr")) throw ConfigError("model.cr block required");
  const json& m = model["cr"];
  CrModel out;
  out.bare = CrParams{require_number(m, "nu0_ghz"), require_number(m, "nu1_ghz"),
                      require_number(m, "alpha0_ghz"), require_number(m, "alpha1_ghz")};
  out.j = require_number(m, "j_ghz");
  out.nu_d = require_number(m, "nu_d_ghz");
  out.levels0 = m.value("levels0", 4);
  out.levels1 = m.value("levels1", 3);
  return out;
}

double nu_zx_from_effective(const ComplexMatrix& h_eff, Index i00, Index i01, Index i10,
                            Index i11) {
  ComplexMatrix comp(4, 4);
  const std::array<Index, 4> idx{i00, i01, i10, i11};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) comp(a, b) = h_eff(idx[static_cast<size_t>(a)], idx[static_cast<size_t>(b)]);
  }
  comp = 0.5 * (comp + comp.adjoint()).eval();  // drop formatting noise only
  return 2.0 * pauli_coefficients(comp)[13];    // ZX slot
}

Table run_cr_zx(const ExperimentConfig& cfg, int jobs) {
  const CrModel cr = parse_cr(*cfg.model);
  const SweepSpec sweep = cfg.sweep.value();
  if (sweep.parameter != "cr.omega_cr_ghz") throw ConfigError("cr_zx sweeps cr.omega_cr_ghz");

  const std::vector<std::string> columns{"omega_cr_ghz",   "eps",           "nu_zx_la_ghz",
                                         "nu_zx_bb2_ghz",  "nu_zx_bb4_ghz", "nu_zx_an2_ghz",
                                         "nu_zx_an24_ghz"};
  auto eval = [&](int i) -> Row {
    const double omega_cr = sweep.value_at(i);
    Row row;
    row.cells.push_back(omega_cr);
    try {
      const CrParams primed = cr_crw_shifts(cr.bare, cr.j);
      CircuitModel model;
      model.modes = {{primed.nu0, primed.alpha0, cr.levels0, "q0"},
                     {primed.nu1, primed.alpha1, cr.levels1, "q1"}};
      model.couplings = {{0, 1, cr.j, CouplingForm::kExchange}};
      model.drive = DriveFrame{0, omega_cr, cr.nu_d};
      const ComplexMatrix h = build_hamiltonian(model);

      const Index i00 = model.basis_index({0, 0});
      const Index i01 = model.basis_index({0, 1});
      const Index i10 = model.basis_index({1, 0});
      const Index i11 = model.basis_index({1, 1});
      std::vector<std::vector<Index>> blocks{{i00, i01}, {i10, i11}};
      std::vector<Index> rest;
      for (Index k = 0; k < model.dim(); ++k) {
        if (k != i00 && k != i01 && k != i10 && k != i11) rest.push_back(k);
      }
      blocks.push_back(rest);
      const BlockPartition partition(blocks, model.dim());

      const PerturbationSplit split = PerturbationSplit::from_hamiltonian(h, partition);
      const double zx_bb2 = nu_zx_from_effective(bb_effective(split, 2, true), i00, i01, i10, i11);
      const double zx_bb4 = nu_zx_from_effective(bb_effective(split, 4, true), i00, i01, i10, i11);
      const EffectiveResult la = least_action_transform(h, partition, 0);
      const double zx_la = nu_zx_from_effective(la.h_bd, i00, i01, i10, i11);

      const double d0d = primed.nu0 - cr.nu_d;
      const double d1d = primed.nu1 - cr.nu_d;
      const double d01 = primed.nu0 - primed.nu1;
      const double an2 = oracles::zx_second_order(omega_cr, cr.j, d0d, d01, primed.alpha0);
      const oracles::ZxFourthOrder an4 = oracles::zx_fourth_order(
          omega_cr, cr.j, {d0d, d1d, d01, d0d + d1d}, primed.alpha0, primed.alpha1);

      row.cells.insert(row.cells.end(),
                       {omega_cr / d01, zx_la, zx_bb2, zx_bb4, an2, an2 + an4.nu_zx_4});
      if (la.low_overlap_warning) row.warning = "low_overlap";
    } catch (const EffhamError& err) {
      Row bad = error_row(columns.size() - 1, err.what());
      bad.cells.insert(bad.cells.begin(), omega_cr);
      return bad;
    }
    return row;
  };
  return evaluate_rows(columns, sweep.points, jobs, eval);
}

// ---------------------------------------------------------------------------
// zz_sweep: two-site CSFQ hopping and ZZ, exact two-step EBD vs closed forms

struct TwoStepResult {
  ComplexMatrix h_eff;             // final block-diagonal computational matrix
  std::vector<Index> comp_indices; // indices of the computational block in the full space
  double soundness_first = 0.0;
  double soundness_second = 0.0;
  bool low_overlap = false;
};

// Step 1 decouples every coupler-excited state; step 2 block-diagonalizes
// the retained coupler-ground matrix by total site excitation.
TwoStepResult two_step_effective(const CircuitModel& model, const ComplexMatrix& h) {
  const BlockPartition first = coupler_ground_partition(model);
  const EffectiveResult la1 = least_action_transform(h, first, 0);

  const std::vector<Index>& ground = first.block(0);
  const Index nc = static_cast<Index>(ground.size());
  ComplexMatrix hc(nc, nc);
  for (Index a = 0; a < nc; ++a) {
    for (Index b = 0; b < nc; ++b) {
      hc(a, b) = la1.h_bd(ground[static_cast<size_t>(a)], ground[static_cast<size_t>(b)]);
    }
  }
  hc = 0.5 * (hc + hc.adjoint()).eval();

  std::map<Index, std::vector<Index>> sectors;
  for (Index a = 0; a < nc; ++a) {
    const auto occ = model.occupations(ground[static_cast<size_t>(a)]);
    Index total = 0;
    for (Index n : occ) total += n;
    sectors[total].push_back(a);
  }
  std::vector<std::vector<Index>> blocks;
  blocks.reserve(sectors.size());
  for (auto& [n, idx] : sectors) blocks.push_back(std::move(idx));
  const BlockPartition second(blocks, nc);
  const EffectiveResult la2 = least_action_transform(hc, second, 0);

  TwoStepResult out;
  out.h_eff = la2.h_bd;
  out.comp_indices = ground;
  out.soundness_first = la1.soundness.value_or(0.0);
  out.soundness_second = la2.soundness.value_or(0.0);
  out.low_overlap = la1.low_overlap_warning || la2.low_overlap_warning;
  return out;
}

Table run_zz_sweep(const ExperimentConfig& cfg, int jobs) {
  CircuitModel base = parse_circuit_model(*cfg.model);
  if (base.modes.size() != 3) throw ConfigError("zz_sweep expects modes [q1, c, q2]");
  const SweepSpec sweep = cfg.sweep.value();
  if (sweep.parameter != "delta1_ghz") throw ConfigError("zz_sweep sweeps delta1_ghz");

  const std::vector<std::string> columns{"delta1_ghz",  "zeta_la_ghz", "zeta_an_ghz",
                                         "gt_la_ghz",   "gt2_an_ghz",  "gt4_an_ghz",
                                         "soundness"};
  auto eval = [&](int i) -> Row {
    const double delta1 = sweep.value_at(i);
    Row row;
    row.cells.push_back(delta1);
    try {
      CircuitModel model = base;
      model.modes[1].frequency = model.modes[0].frequency - delta1;
      const ComplexMatrix h = build_hamiltonian(model);
      const TwoStepResult two = two_step_effective(model, h);

      // Coupler-ground states |i 0 j> arrive sorted by basis index, which is
      // lexicographic in (i, j); position of (i, j) is 3 i + j.
      const auto site = [&](Index si, Index sj) { return 3 * si + sj; };
      const double e00 = two.h_eff(site(0, 0), site(0, 0)).real();
      const double e10 = two.h_eff(site(1, 0), site(1, 0)).real();
      const double e01 = two.h_eff(site(0, 1), site(0, 1)).real();
      const double e11 = two.h_eff(site(1, 1), site(1, 1)).real();
      const double zeta_la = e11 - e10 - e01 + e00;
      const double gt_la = two.h_eff(site(1, 0), site(0, 1)).real();

      const double w1 = model.modes[0].frequency;
      const double b1 = model.modes[0].anharmonicity;
      const double wc = model.modes[1].frequency;
      const double bc = model.modes[1].anharmonicity;
      const double g1 = model.couplings[0].strength;
      const double g12 = model.couplings[2].strength;
      const oracles::TwoSiteZz zz = oracles::two_site_zz(w1, b1, wc, bc, g1, g12);
      const oracles::TwoSiteHopping hop = oracles::two_site_hopping(w1, b1, wc, bc, g1, g12);

      row.cells.insert(row.cells.end(), {zeta_la, zz.zeta, gt_la, hop.g_tilde_2, hop.g_tilde_4,
                                         two.soundness_first});
      if (two.low_overlap) row.warning = "low_overlap";
    } catch (const EffhamError& err) {
      Row bad = error_row(columns.size() - 1, err.what());
      bad.cells.insert(bad.cells.begin(), delta1);
      return bad;
    }
    return row;
  };
  return evaluate_rows(columns, sweep.points, jobs, eval);
}

// ---------------------------------------------------------------------------
// three_body: five-mode chain, mediated kappa and dynamical verification

Table run_three_body(const ExperimentConfig& cfg, int jobs) {
  CircuitModel base = parse_circuit_model(*cfg.model);
  if (base.modes.size() != 5) throw ConfigError("three_body expects modes [q1, c1, q2, c2, q3]");
  const json& model_json = *cfg.model;
  if (!model_json["modes"][2].contains("csfq")) {
    throw ConfigError("three_body: central mode needs a csfq block");
  }
  const json csfq_block = model_json["modes"][2]["csfq"];
  const double coupler_offset = require_number(model_json, "coupler_offset_ghz");
  const SweepSpec sweep = cfg.sweep.value();
  if (sweep.parameter != "phi_e1") throw ConfigError("three_body sweeps phi_e1");
  const DynamicsSpec dyn = cfg.dynamics.value_or(DynamicsSpec{50000.0, 1024, {"110", "101"}});

  const std::vector<std::string> columns{
      "phi_e1",        "omega2_ghz",     "beta2_ghz", "kappa_la_ghz", "kappa_an_ghz",
      "lambda_exp",    "fid_110",        "fid_101",   "soundness_ebhm", "soundness_comp"};
  auto eval = [&](int i) -> Row {
    const double phi = sweep.value_at(i);
    Row row;
    row.cells.push_back(phi);
    try {
      const CsfqParams central = csfq_params(
          require_number(csfq_block, "c_j_fF"), require_number(csfq_block, "c_s_fF"),
          require_number(csfq_block, "e_j_ghz"), require_number(csfq_block, "alpha"), phi,
          csfq_block.value("k", 0));

      CircuitModel model = base;
      model.modes[2].frequency = central.omega_q;
      model.modes[2].anharmonicity = central.beta;
      const double w1 = model.modes[0].frequency;
      const double w2 = central.omega_q;
      const double wc = std::max(w1, w2) + coupler_offset;
      model.modes[1].frequency = wc;
      model.modes[3].frequency = wc;
      row.cells.insert(row.cells.end(), {w2, central.beta});

      const ComplexMatrix h = build_hamiltonian(model);
      const BlockPartition first = coupler_ground_partition(model);
      const EffectiveResult la1 = least_action_transform(h, first, 0);

      const std::vector<Index>& ground = first.block(0);  // 27 states |i 0 j 0 k>
      const Index nc = static_cast<Index>(ground.size());
      ComplexMatrix hc(nc, nc);
      for (Index a = 0; a < nc; ++a) {
        for (Index b = 0; b < nc; ++b) {
          hc(a, b) = la1.h_bd(ground[static_cast<size_t>(a)], ground[static_cast<size_t>(b)]);
        }
      }
      hc = 0.5 * (hc + hc.adjoint()).eval();

      // Computational block: every site occupation at most 1. Ascending
      // order matches the |q1 q2 q3> binary index 4 q1 + 2 q2 + q3.
      std::vector<Index> comp27;
      std::vector<Index> comp243;
      for (Index a = 0; a < nc; ++a) {
        const auto occ = model.occupations(ground[static_cast<size_t>(a)]);
        if (occ[0] <= 1 && occ[2] <= 1 && occ[4] <= 1) {
          comp27.push_back(a);
          comp243.push_back(ground[static_cast<size_t>(a)]);
        }
      }
      const BlockPartition second = BlockPartition::bipartition(comp27, nc);
      const EffectiveResult la2 = least_action_transform(hc, second, 0);
      ComplexMatrix h8(8, 8);
      for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
          h8(a, b) = la2.h_bd(comp27[static_cast<size_t>(a)], comp27[static_cast<size_t>(b)]);
        }
      }
      h8 = 0.5 * (h8 + h8.adjoint()).eval();
      const ThreeBodyKappa kappa = three_body_kappa(h8);

      // Closed-form reference with the CRW-renormalized chain parameters.
      const double g1 = model.couplings[0].strength;   // site-coupler
      const double g12 = model.couplings[4].strength;  // site-site
      const double b1 = model.modes[0].anharmonicity;
      const double b2 = central.beta;
      const double bc = model.modes[1].anharmonicity;
      const double s1c = w1 + wc;
      const double s2c = w2 + wc;
      const double s12 = w1 + w2;
      const double g1c_r = g1 - 0.5 * g1 * g12 * (1.0 / s1c + 1.0 / s12);
      const double g12_r = g12 - 0.5 * g1 * g1 * (1.0 / s1c + 1.0 / s2c);
      const double w1_r = w1 - g1 * g1 / (s1c + b1) - g1 * g1 / s2c - g12 * g12 / (s12 + b1);
      const double w2_r = w2 - 2.0 * g1 * g1 / (s1c + b2) - 2.0 * g1 * g1 / s1c -
                          2.0 * g12 * g12 / (s12 + b2);
      const double wc_r = wc - 2.0 * g1 * g1 / (s1c + bc) - g12 * g12 / s12;
      const oracles::KappaAnalytic an =
          oracles::kappa_analytic(g12_r, g1c_r, w1_r - w2_r, w1_r - wc_r, w2_r - wc_r, b2);
      const double lambda_exp = std::abs(g1c_r / ((w1_r - w2_r) - b2));

      double fid110 = 0.0;
      double fid101 = 0.0;
      for (const std::string& state : {std::string("110"), std::string("101")}) {
        ComplexVector psi0 = ComplexVector::Zero(model.dim());
        const std::vector<Index> site_occ = parse_state(state, 3);
        psi0[model.basis_index({site_occ[0], 0, site_occ[1], 0, site_occ[2]})] = 1.0;
        const double f =
            avg_projected_fidelity(h, h8, comp243, psi0, dyn.t_ns, dyn.steps).mean;
        (state == "110" ? fid110 : fid101) = f;
      }

      row.cells.insert(row.cells.end(), {kappa.kappa, an.kappa, lambda_exp, fid110, fid101,
                                         la1.soundness.value_or(0.0),
                                         la2.soundness.value_or(0.0)});
      if (central.low_ratio_warning) row.warning = "csfq_low_ej_ec_ratio";
      if (la1.low_overlap_warning || la2.low_overlap_warning) {
        row.warning += row.warning.empty() ? "low_overlap" : ";low_overlap";
      }
    } catch (const EffhamError& err) {
      Row bad = error_row(columns.size() - 1, err.what());
      bad.cells.insert(bad.cells.begin(), phi);
      return bad;
    }
    return row;
  };
  return evaluate_rows(columns, sweep.points, jobs, eval);
}

// ---------------------------------------------------------------------------
// bound_scatter: fidelity lower bound on random Hermitian instances

ComplexMatrix random_hermitian(Philox& rng, Index dim) {
  ComplexMatrix h(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    h(i, i) = rng.next_gaussian();
    for (Index j = i + 1; j < dim; ++j) {
      const Complex z(rng.next_gaussian() / std::sqrt(2.0), rng.next_gaussian() / std::sqrt(2.0));
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

std::vector<Index> random_subset(Philox& rng, Index dim, Index count) {
  std::vector<Index> all(static_cast<size_t>(dim));
  for (Index i = 0; i < dim; ++i) all[static_cast<size_t>(i)] = i;
  for (Index i = dim - 1; i > 0; --i) {
    const Index j = static_cast<Index>(rng.next_u32() % static_cast<std::uint32_t>(i + 1));
    std::swap(all[static_cast<size_t>(i)], all[static_cast<size_t>(j)]);
  }
  all.resize(static_cast<size_t>(count));
  std::sort(all.begin(), all.end());
  return all;
}

Table run_bound_scatter(const ExperimentConfig& cfg, int jobs) {
  const json& m = *cfg.model;
  const Index dim_min = m.value("dim_min", 4);
  const Index dim_max = m.value("dim_max", 16);
  const int instances = m.value("instances", 100);

  const std::vector<std::string> columns{"idx",           "dim",        "p_dim", "distance_sq",
                                         "fidelity_bound", "avg_fidelity", "margin"};
  auto eval = [&](int i) -> Row {
    Row row;
    row.cells.push_back(static_cast<double>(i));
    Philox rng(cfg.seed, static_cast<std::uint64_t>(i));
    std::string note;
    for (int attempt = 0; attempt < 50; ++attempt) {
      const Index dim = dim_min + static_cast<Index>(rng.next_u32() %
                                                     static_cast<std::uint32_t>(dim_max - dim_min + 1));
      const ComplexMatrix h = random_hermitian(rng, dim);
      const Index p_dim = 1 + static_cast<Index>(rng.next_u32() %
                                                 static_cast<std::uint32_t>(dim - 1));
      const BlockPartition partition =
          BlockPartition::bipartition(random_subset(rng, dim, p_dim), dim);
      try {
        const EffectiveResult la = least_action_transform(h, partition, 0);
        const double avg = long_time_trace_fidelity(h, la.h_bd);
        row.cells.insert(row.cells.end(),
                         {static_cast<double>(dim), static_cast<double>(p_dim), la.distance_sq,
                          la.fidelity_bound, avg, avg - la.fidelity_bound});
        row.warning = note;
        return row;
      } catch (const EffhamError&) {
        note = "resampled";  // singular S_BD; draw a fresh instance
      }
    }
    Row bad = error_row(columns.size() - 1, "no valid instance after 50 attempts");
    bad.cells.insert(bad.cells.begin(), static_cast<double>(i));
    return bad;
  };
  return evaluate_rows(columns, instances, jobs, eval);
}

// ---------------------------------------------------------------------------
// symmetry_demo: preservation theorem on random symmetric instances

Table run_symmetry_demo(const ExperimentConfig& cfg, int jobs) {
  const json& m = *cfg.model;
  const Index dim_min = m.value("dim_min", 4);
  const Index dim_max = m.value("dim_max", 12);
  const int instances = m.value("instances", 50);

  const std::vector<std::string> columns{"idx",        "dim",          "input_residual",
                                         "max_projector_residual", "resid_la", "resid_bb4",
                                         "resid_swt2", "resid_gr"};
  auto eval = [&](int i) -> Row {
    Row row;
    row.cells.push_back(static_cast<double>(i));
    Philox rng(cfg.seed, static_cast<std::uint64_t>(i));
    std::string note;
    for (int attempt = 0; attempt < 50; ++attempt) {
      const Index dim = dim_min + static_cast<Index>(rng.next_u32() %
                                                     static_cast<std::uint32_t>(dim_max - dim_min + 1));
      const Index n_blocks = 2 + static_cast<Index>(rng.next_u32() % 2);
      std::vector<std::vector<Index>> blocks(static_cast<size_t>(n_blocks));
      for (Index k = 0; k < n_blocks; ++k) blocks[static_cast<size_t>(k)].push_back(k);
      for (Index k = n_blocks; k < dim; ++k) {
        blocks[rng.next_u32() % static_cast<std::uint32_t>(n_blocks)].push_back(k);
      }
      for (auto& b : blocks) std::sort(b.begin(), b.end());
      const BlockPartition partition(blocks, dim);

      // Block-diagonal Hermitian involution commuting with every projector:
      // per block, V diag(+-1) V^dag with Haar-ish V from QR.
      ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
      for (const auto& idx : partition.blocks()) {
        const Index bd = static_cast<Index>(idx.size());
        ComplexMatrix g(bd, bd);
        for (Index a = 0; a < bd; ++a) {
          for (Index b = 0; b < bd; ++b) {
            g(a, b) = Complex(rng.next_gaussian(), rng.next_gaussian());
          }
        }
        const Eigen::HouseholderQR<ComplexMatrix> qr(g);
        const ComplexMatrix q = qr.householderQ();
        RealVector signs(bd);
        for (Index a = 0; a < bd; ++a) signs[a] = (rng.next_u32() % 2 == 0) ? 1.0 : -1.0;
        const ComplexMatrix sb = q * signs.asDiagonal() * q.adjoint();
        for (Index a = 0; a < bd; ++a) {
          for (Index b = 0; b < bd; ++b) s(idx[static_cast<size_t>(a)], idx[static_cast<size_t>(b)]) = sb(a, b);
        }
      }

      ComplexMatrix h = random_hermitian(rng, dim);
      h = (0.5 * (h + s * h * s)).eval();  // S is a Hermitian involution
      h = (0.5 * (h + h.adjoint())).eval();

      try {
        const SymmetryOperator sym{s, "random"};
        const PreservationReport la = verify_preservation(h, sym, partition, EffectiveMethod::kLA);
        const PreservationReport bb = verify_preservation(h, sym, partition, EffectiveMethod::kBB);
        const PreservationReport swt =
            verify_preservation(h, sym, partition, EffectiveMethod::kSWT2);
        const PreservationReport gr = verify_preservation(h, sym, partition, EffectiveMethod::kGR);
        double max_proj = 0.0;
        for (double r : la.projector_residuals) max_proj = std::max(max_proj, r);
        row.cells.insert(row.cells.end(),
                         {static_cast<double>(dim), la.input_residual, max_proj,
                          la.effective_residual, bb.effective_residual, swt.effective_residual,
                          gr.effective_residual});
        row.warning = note;
        return row;
      } catch (const EffhamError&) {
        note = "resampled";
      }
    }
    Row bad = error_row(columns.size() - 1, "no valid instance after 50 attempts");
    bad.cells.insert(bad.cells.begin(), static_cast<double>(i));
    return bad;
  };
  return evaluate_rows(columns, instances, jobs, eval);
}

// ---------------------------------------------------------------------------

void write_csv(const Table& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EffhamError("cannot open " + path.string());
  for (size_t c = 0; c < table.columns.size(); ++c) {
    out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "");
  }
  out << ",warnings\n";
  for (const Row& row : table.rows) {
    for (size_t c = 0; c < table.columns.size(); ++c) {
      if (c < row.cells.size() && row.cells[c].has_value()) out << fmt_cell(*row.cells[c]);
      if (c + 1 < table.columns.size()) out << ",";
    }
    out << "," << row.warning << "\n";
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const json& doc) {
  ExperimentConfig cfg;
  cfg.raw = std::make_shared<json>(doc);
  if (!doc.contains("experiment") || !doc["experiment"].is_string()) {
    throw ConfigError("config needs an 'experiment' string");
  }
  cfg.experiment = doc["experiment"].get<std::string>();
  static const std::vector<std::string> known{"compare3",  "qcq_sweep",  "rwa",
                                              "cr_zx",     "zz_sweep",   "three_body",
                                              "bound_scatter", "symmetry_demo"};
  if (std::find(known.begin(), known.end(), cfg.experiment) == known.end()) {
    throw ConfigError("unknown experiment '" + cfg.experiment + "'");
  }
  if (!cfg.raw->contains("model")) (*cfg.raw)["model"] = json::object();
  cfg.model = &(*cfg.raw)["model"];
  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    SweepSpec sweep;
    sweep.parameter = s.at("parameter").get<std::string>();
    sweep.start = require_number(s, "start");
    sweep.stop = s.value("stop", sweep.start);
    sweep.points = s.value("points", 1);
    if (sweep.points < 1) throw ConfigError("sweep.points must be >= 1");
    cfg.sweep = sweep;
  }
  cfg.methods = doc.value("methods", std::vector<std::string>{});
  if (doc.contains("dynamics")) {
    const json& d = doc["dynamics"];
    DynamicsSpec dyn;
    dyn.t_ns = d.value("t_ns", 10000.0);
    dyn.steps = d.value("steps", 4096);
    dyn.initial_states = d.value("initial_states", std::vector<std::string>{});
    cfg.dynamics = dyn;
  }
  cfg.seed = doc.value("seed", std::uint64_t{0});
  if (const char* env = std::getenv("EFFHAM_SEED")) {
    cfg.seed = std::strtoull(env, nullptr, 10);
  }
  cfg.output_stem = doc.value("output", cfg.experiment);
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& err) {
    throw ConfigError("config parse error: " + std::string(err.what()));
  }
  return parse(doc);
}

void validate_experiment(const ExperimentConfig& config) {
  const bool needs_sweep = config.experiment != "bound_scatter" &&
                           config.experiment != "symmetry_demo";
  if (needs_sweep && !config.sweep) {
    throw ConfigError(config.experiment + " needs a sweep block");
  }
  // A one-row dry run of the parsers catches bad model blocks up front.
  if (config.experiment == "compare3" || config.experiment == "qcq_sweep") {
    parse_three_level(*config.model);
    if (config.experiment == "compare3" && config.methods.empty()) {
      throw ConfigError("compare3 needs a nonempty methods list");
    }
  } else if (config.experiment == "rwa" || config.experiment == "zz_sweep" ||
             config.experiment == "three_body") {
    parse_circuit_model(*config.model);
  } else if (config.experiment == "cr_zx") {
    parse_cr(*config.model);
  }
  if (config.sweep) {
    static const std::map<std::string, std::string> allowed{
        {"compare3", "three_level.omega_c_ghz"}, {"qcq_sweep", "three_level.omega_c_ghz"},
        {"rwa", "sym_qc_coupling_ghz"},          {"cr_zx", "cr.omega_cr_ghz"},
        {"zz_sweep", "delta1_ghz"},              {"three_body", "phi_e1"}};
    const auto it = allowed.find(config.experiment);
    if (it != allowed.end() && config.sweep->parameter != it->second) {
      throw ConfigError(config.experiment + " sweeps parameter '" + it->second + "', got '" +
                        config.sweep->parameter + "'");
    }
  }
}

RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                         int jobs) {
  validate_experiment(config);
  if (jobs < 1) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;

  Table table;
  if (config.experiment == "compare3") {
    table = run_compare3(config, jobs);
  } else if (config.experiment == "qcq_sweep") {
    table = run_qcq_sweep(config, jobs);
  } else if (config.experiment == "rwa") {
    table = run_rwa(config, jobs);
  } else if (config.experiment == "cr_zx") {
    table = run_cr_zx(config, jobs);
  } else if (config.experiment == "zz_sweep") {
    table = run_zz_sweep(config, jobs);
  } else if (config.experiment == "three_body") {
    table = run_three_body(config, jobs);
  } else if (config.experiment == "bound_scatter") {
    table = run_bound_scatter(config, jobs);
  } else {
    table = run_symmetry_demo(config, jobs);
  }

  std::filesystem::create_directories(out_dir);
  RunResult result;
  result.csv_path = out_dir / (config.output_stem + ".csv");
  result.meta_path = out_dir / (config.output_stem + ".meta.json");
  write_csv(table, result.csv_path);

  json meta;
  meta["config"] = *config.raw;
  meta["seed"] = config.seed;
  meta["generator"] = "philox4x32-10";
  meta["version"] = "0.1.0";
  json cols = json::array();
  for (const std::string& c : table.columns) cols.push_back(c);
  cols.push_back("warnings");
  meta["columns"] = cols;
  std::ofstream meta_out(result.meta_path, std::ios::binary);
  meta_out << meta.dump(2) << "\n";

  result.rows = static_cast<int>(table.rows.size());
  for (const Row& row : table.rows) {
    if (!row.warning.empty()) ++result.warning_rows;
  }
  return result;
}

std::string evaluate_oracle(const std::string& name,
                            const std::vector<std::pair<std::string, double>>& args) {
  std::map<std::string, double> kv(args.begin(), args.end());
  const auto get = [&](const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("oracle " + name + " needs argument " + key);
    return it->second;
  };
  json out;
  if (name == "three_level_la_4th" || name == "three_level_swt_4th") {
    const auto r = (name == "three_level_la_4th" ? oracles::three_level_la_4th
                                                 : oracles::three_level_swt_4th)(
        get("omega1"), get("omega2"), get("omega_c"), get("g1"), get("g2"));
    out = {{"g_tilde", r.g_tilde}, {"omega1_tilde", r.omega1_tilde},
           {"omega2_tilde", r.omega2_tilde}};
    if (name == "three_level_la_4th") out["lambda"] = r.lambda;
  } else if (name == "fft_symmetric_identity") {
    const auto r = oracles::fft_symmetric_identity(get("delta"), get("g"));
    out = {{"lambda1", r.lambda1}, {"lambda2", r.lambda2}, {"lambda3", r.lambda3},
           {"g_tilde", r.g_tilde}};
  } else if (name == "fft_detuned_expansion") {
    const auto r = oracles::fft_detuned_expansion(get("delta"), get("g"), get("eps"));
    out = {{"lambda1", r.lambda1},       {"lambda2", r.lambda2}, {"lambda3", r.lambda3},
           {"two_g_tilde", r.two_g_tilde}, {"alpha1_sq", r.alpha1_sq}, {"alpha2_sq", r.alpha2_sq}};
  } else if (name == "zx_second_order") {
    out = {{"nu_zx_2", oracles::zx_second_order(get("omega"), get("j"), get("delta_0d"),
                                                get("delta_01"), get("beta0"))}};
  } else if (name == "zx_fourth_order") {
    const auto r = oracles::zx_fourth_order(
        get("omega"), get("j"),
        {get("delta_0d"), get("delta_1d"), get("delta_01"), get("sigma_01")}, get("alpha0"),
        get("alpha1"));
    out = {{"h1_sum", r.h1_sum}, {"h2_sum", r.h2_sum}, {"nu_zx_4", r.nu_zx_4}};
  } else if (name == "two_site_zz") {
    const auto r = oracles::two_site_zz(get("omega1"), get("beta1"), get("omega_c"),
                                        get("beta_c"), get("g1"), get("g12"));
    out = {{"zeta2", r.zeta2}, {"zeta3", r.zeta3}, {"zeta4", r.zeta4}, {"zeta", r.zeta},
           {"resonance_beta1", r.resonance_beta1}, {"resonance_beta_c", r.resonance_beta_c}};
  } else if (name == "two_site_hopping") {
    const auto r = oracles::two_site_hopping(get("omega1"), get("beta1"), get("omega_c"),
                                             get("beta_c"), get("g1"), get("g12"));
    out = {{"g_tilde_2", r.g_tilde_2}, {"g_tilde_4", r.g_tilde_4},
           {"e10_dressed", r.e10_dressed}, {"e00_dressed", r.e00_dressed}};
  } else if (name == "kappa_analytic") {
    const auto r = oracles::kappa_analytic(get("g12"), get("g1"), get("delta_12"),
                                           get("delta_1c"), get("delta_2c"), get("beta2"));
    out = {{"kappa110", r.kappa110}, {"kappa100", r.kappa100}, {"kappa", r.kappa}};
  } else if (name == "csfq_params") {
    const auto r = csfq_params(get("c_j"), get("c_s"), get("e_j"), get("alpha"), get("phi_e1"),
                               static_cast<int>(kv.count("k") ? kv["k"] : 0.0));
    out = {{"omega_q", r.omega_q}, {"beta", r.beta}, {"e_c", r.e_c}, {"e_j_eff", r.e_j_eff},
           {"low_ratio_warning", r.low_ratio_warning}};
  } else if (name == "crw_renormalized_qcq") {
    const auto r = crw_renormalized_qcq(get("omega1"), get("omega2"), get("omega_c"),
                                        get("beta1"), get("beta2"), get("beta_c"), get("g1"),
                                        get("g2"), get("g12"));
    out = {{"omega1", r.omega1}, {"omega2", r.omega2}, {"omega_c", r.omega_c},
           {"g1", r.g1},         {"g2", r.g2},         {"g12", r.g12}};
  } else if (name == "cr_crw_shifts" || name == "cr_bare_from_dressed") {
    const CrParams in{get("nu0"), get("nu1"), get("alpha0"), get("alpha1")};
    const CrParams r = name == "cr_crw_shifts" ? cr_crw_shifts(in, get("j"))
                                               : cr_bare_from_dressed(in, get("j"));
    out = {{"nu0", r.nu0}, {"nu1", r.nu1}, {"alpha0", r.alpha0}, {"alpha1", r.alpha1}};
  } else if (name == "ebhm_map") {
    const auto r = ebhm_map(get("g_tilde"), get("beta1"), get("beta2"), get("omega1"),
                            get("omega2"), get("zeta"));
    out = {{"j_hop", r.j_hop}, {"u", r.u}, {"mu1", r.mu1}, {"mu2", r.mu2}, {"v", r.v},
           {"asymmetric_u_warning", r.asymmetric_u_warning}};
  } else {
    throw ConfigError("unknown oracle '" + name + "'");
  }
  return out.dump(2);
}

}  // namespace effham
