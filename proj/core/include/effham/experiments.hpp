#pragma once

#include "effham/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace effham {

struct SweepSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int points = 1;

  double value_at(int i) const {
    if (points <= 1) return start;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
};

struct DynamicsSpec {
  double t_ns = 10000.0;
  int steps = 4096;
  std::vector<std::string> initial_states;
};

/// Parsed experiment configuration. The model block stays as JSON; each
/// experiment interprets the keys it needs and validates them up front.
struct ExperimentConfig {
  std::string experiment;
  nlohmann::json* model = nullptr;  // owned via `raw`
  std::optional<SweepSpec> sweep;
  std::vector<std::string> methods;
  std::optional<DynamicsSpec> dynamics;
  std::uint64_t seed = 0;
  std::string output_stem;
  std::shared_ptr<nlohmann::json> raw;

  static ExperimentConfig parse_file(const std::filesystem::path& path);
  static ExperimentConfig parse(const nlohmann::json& doc);
};

struct RunResult {
  std::filesystem::path csv_path;
  std::filesystem::path meta_path;
  int rows = 0;
  int warning_rows = 0;
};

/// Runs one experiment: evaluates every sweep point (concurrently when jobs
/// > 1, results collected in input order), writes <stem>.csv with a fixed
/// column order and 12-significant-digit cells, and <stem>.meta.json with
/// the config echo. Identical config + seed give byte-identical CSVs.
RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                         int jobs);

/// Validates without running; throws ConfigError on problems.
void validate_experiment(const ExperimentConfig& config);

/// Direct oracle evaluation for the CLI: name plus key=value arguments,
/// result serialized as JSON text.
std::string evaluate_oracle(const std::string& name,
                            const std::vector<std::pair<std::string, double>>& args);

}  // namespace effham
