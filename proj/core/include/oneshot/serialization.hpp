#pragma once

#include <string>
#include <vector>

#include "oneshot/planner.hpp"
#include "oneshot/simulator.hpp"
#include "oneshot/user_model.hpp"

namespace oneshot {

inline constexpr const char* kToolVersion = "0.1.0";

// Provenance block embedded in every emitted result file: identical
// manifests (up to wall-clock) mean identical results.
struct RunManifest {
  std::string subcommand;
  std::string config_json;  // fully resolved config, compact JSON ("no silent defaults")
  uint64_t seed = 0;
  std::string version = kToolVersion;
  double wall_seconds = 0.0;
};

// Every floating-point number the tool emits is printed with 9 significant
// digits (stable diffs). Model files are the one exception: they round-trip
// exactly.
std::string format_g9(double x);
double round_g9(double x);

// Ratio-form models only (the table form is a test construct and has no
// file format).
std::string model_to_json(const UserTypeModel& model);
UserTypeModel model_from_json(const std::string& text);

struct SolveArtifact {
  std::string operator_name;
  double gamma = 0.0;
  int net_resolution = 0;  // 0 when the solve ran on a raw table MDP
  int max_set_size = 0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> values;
  std::vector<Action> policy;
  std::vector<double> deltas;  // sup-norm change per sweep
};

std::string solve_to_json(const SolveArtifact& artifact, const RunManifest& manifest);
SolveArtifact solve_from_json(const std::string& text, RunManifest* manifest_out = nullptr);
std::string solve_to_csv(const SolveArtifact& artifact, const RunManifest& manifest);

std::string experiment_to_csv(const ExperimentTable& table, const RunManifest& manifest);
std::string experiment_to_json(const ExperimentTable& table, const RunManifest& manifest);

// The experiment config round-trips through JSON with every field written
// out; parsing starts from the defaults, overlays the given keys and rejects
// unknown ones.
std::string experiment_config_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const std::string& text);

}  // namespace oneshot
