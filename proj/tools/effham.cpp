#include "effham/experiments.hpp"
#include "effham/types.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"effham - effective Hamiltonian construction and benchmark sweeps"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int jobs = 0;

  CLI::App* run = app.add_subcommand("run", "run an experiment config and write CSV + metadata");
  run->add_option("config", config_path, "JSON experiment config")->required();
  run->add_option("--jobs", jobs, "worker count (default: logical cores)");
  run->add_option("--out", out_dir, "output directory (default: current)");

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a config");
  validate->add_option("config", config_path, "JSON experiment config")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "evaluate a closed-form oracle directly");
  std::string oracle_name;
  std::vector<std::string> oracle_args;
  oracle->add_option("name", oracle_name, "oracle name")->required();
  oracle->add_option("args", oracle_args, "key=value arguments");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const effham::ExperimentConfig config = effham::ExperimentConfig::parse_file(config_path);
      const effham::RunResult result = effham::run_experiment(config, out_dir, jobs);
      std::printf("wrote %s (%d rows, %d with warnings)\n", result.csv_path.c_str(), result.rows,
                  result.warning_rows);
    } else if (validate->parsed()) {
      const effham::ExperimentConfig config = effham::ExperimentConfig::parse_file(config_path);
      effham::validate_experiment(config);
      std::printf("ok: %s\n", config.experiment.c_str());
    } else if (oracle->parsed()) {
      std::vector<std::pair<std::string, double>> kv;
      for (const std::string& arg : oracle_args) {
        const size_t eq = arg.find('=');
        if (eq == std::string::npos) {
          throw effham::ConfigError("oracle arguments must look like key=value, got '" + arg + "'");
        }
        kv.emplace_back(arg.substr(0, eq), std::stod(arg.substr(eq + 1)));
      }
      std::cout << effham::evaluate_oracle(oracle_name, kv) << "\n";
    }
  } catch (const effham::EffhamError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
