#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lpl/integrate.hpp"

namespace lpl::run {

using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// A fully assembled system: stepper model, initial state, and the number of
/// driving noise components.
struct BuiltSystem {
  std::string name;
  integrate::Model model;
  algebra::Vec x0;
  int n_components = 0;
};

/// Validate and assemble the "system"/"parameters" part of a run config.
/// Throws InputError naming the offending field.
BuiltSystem build_system(const json& config);

/// Noise/scheme/output settings, validated.
struct RunSettings {
  double sigma = 0.0;
  double theta = 0.0;
  double beta = -1.0;  // < 0 when not supplied
  std::uint64_t seed = 0;
  double dt = 0.0;
  double t_final = 0.0;
  integrate::Scheme scheme = integrate::Scheme::heun;
  int ensemble = 1;
  int record_stride = 1;
  std::string trajectory_csv = "trajectory.csv";
  std::string summary_json = "summary.json";
  int n_steps() const;
};

RunSettings parse_settings(const json& config);

/// Execute a run config, writing the trajectory CSV and summary JSON into
/// out_dir.  The summary echoes the full config (lossless, for bitwise
/// reproduction) plus invariant reports and system-specific terminal checks.
/// n_workers applies to ensembles; results are worker-count independent.
void execute(const json& config, const std::string& out_dir, int n_workers = 1);

/// Shipped example configurations, one per supported system family.
std::vector<std::string> preset_names();
json preset_config(const std::string& name);

/// Worker count from the LPL_WORKERS environment variable (default 1).
int workers_from_env();

}  // namespace lpl::run
