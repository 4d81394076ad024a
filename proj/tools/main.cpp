#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lpl/run.hpp"
#include "lpl/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

int main(int argc, char** argv) {
  CLI::App app{"Structure-preserving stochastic Lie-Poisson / Langevin simulator"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a simulation from a JSON config");
  run_cmd->add_option("config", config_path, "Path to the run config (JSON)")->required();

  std::string suite;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run an acceptance suite (invariants|gibbs|convergence|all)");
  verify_cmd->add_option("suite", suite, "Suite name")->required();

  std::string preset_name, preset_out = ".";
  CLI::App* preset_cmd = app.add_subcommand("preset", "Materialize a shipped preset config");
  preset_cmd->add_option("name", preset_name, "Preset name (or 'list')")->required();
  preset_cmd->add_option("--out", preset_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot open config " << config_path << "\n";
        return 2;
      }
      json config;
      try {
        in >> config;
      } catch (const json::exception& e) {
        std::cerr << "error: config does not parse: " << e.what() << "\n";
        return 2;
      }
      std::string out_dir = fs::path(config_path).parent_path().string();
      if (out_dir.empty()) out_dir = ".";
      lpl::run::execute(config, out_dir, lpl::run::workers_from_env());
      return 0;
    }
    if (*verify_cmd) {
      std::vector<lpl::verify::CriterionResult> results;
      try {
        results = lpl::verify::run_suite(suite);
      } catch (const lpl::algebra::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }
      json rep = lpl::verify::report(results);
      for (const auto& r : results)
        std::cerr << "criterion " << r.id << " (" << r.name << "): "
                  << (r.pass ? "PASS" : "FAIL") << " -- " << r.details << "\n";
      std::cout << rep.dump(2) << "\n";
      return rep["pass"].get<bool>() ? 0 : 1;
    }
    if (*preset_cmd) {
      if (preset_name == "list") {
        for (const auto& n : lpl::run::preset_names()) std::cout << n << "\n";
        return 0;
      }
      json cfg = lpl::run::preset_config(preset_name);
      fs::create_directories(preset_out);
      fs::path file = fs::path(preset_out) / "config.json";
      std::ofstream out(file);
      out << cfg.dump(2) << "\n";
      std::cout << file.string() << "\n";
      return 0;
    }
  } catch (const lpl::algebra::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
