#include "oneshot/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "oneshot/errors.hpp"

namespace oneshot {

using nlohmann::json;

namespace {

// JSON value for a result number: 9 significant digits, non-finite values as
// strings (JSON has no inf/nan literals).
json jnum(double x) {
  if (!std::isfinite(x)) return json(format_g9(x));
  return json(round_g9(x));
}

json manifest_to_json(const RunManifest& manifest) {
  json config = json::object();
  if (!manifest.config_json.empty()) {
    config = json::parse(manifest.config_json);
  }
  return json{{"subcommand", manifest.subcommand},
              {"config", config},
              {"seed", manifest.seed},
              {"version", manifest.version},
              {"wall_seconds", jnum(manifest.wall_seconds)}};
}

RunManifest manifest_from_json(const json& j) {
  RunManifest manifest;
  manifest.subcommand = j.at("subcommand").get<std::string>();
  manifest.config_json = j.at("config").dump();
  manifest.seed = j.at("seed").get<uint64_t>();
  manifest.version = j.at("version").get<std::string>();
  manifest.wall_seconds = j.at("wall_seconds").get<double>();
  return manifest;
}

std::string manifest_comment(const RunManifest& manifest) {
  return "# manifest: " + manifest_to_json(manifest).dump() + "\n";
}

json parse_text(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw ValidationError(std::string(what) + ": malformed JSON");
  }
  return j;
}

// Overlay-style field readers: each `take` consumes a key it knows; any key
// left unconsumed at the end is a config typo and rejected.
template <typename T>
void take(json& j, const char* key, T& into) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    into = it->get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("config: bad value for '") + key + "'");
  }
  j.erase(it);
}

void reject_unknown(const json& j, const char* where) {
  if (!j.empty()) {
    std::string keys;
    for (const auto& item : j.items()) {
      if (!keys.empty()) keys += ", ";
      keys += item.key();
    }
    throw ValidationError(std::string("config: unknown key(s) in ") + where + ": " + keys);
  }
}

}  // namespace

std::string format_g9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

double round_g9(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_g9(x).c_str(), nullptr);
}

std::string model_to_json(const UserTypeModel& model) {
  if (!model.ratio_form()) {
    throw ValidationError("model_to_json: only ratio-form models have a file format");
  }
  const json j{{"type", "ratio"},
               {"scores", model.scores()},
               {"termination_scores", model.termination_scores()}};
  return j.dump(2) + "\n";
}

UserTypeModel model_from_json(const std::string& text) {
  json j = parse_text(text, "model");
  if (!j.is_object() || j.value("type", "") != "ratio") {
    throw ValidationError("model: expected an object with \"type\": \"ratio\"");
  }
  std::vector<std::vector<double>> scores;
  std::vector<double> termination;
  try {
    scores = j.at("scores").get<std::vector<std::vector<double>>>();
    termination = j.at("termination_scores").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model: ") + e.what());
  }
  return UserTypeModel(std::move(scores), std::move(termination));
}

std::string solve_to_json(const SolveArtifact& artifact, const RunManifest& manifest) {
  json values = json::array();
  for (double v : artifact.values) values.push_back(jnum(v));
  json deltas = json::array();
  for (double d : artifact.deltas) deltas.push_back(jnum(d));
  json policy = json::array();
  for (const Action& w : artifact.policy) policy.push_back(w);
  const json j{{"manifest", manifest_to_json(manifest)},
               {"operator", artifact.operator_name},
               {"gamma", jnum(artifact.gamma)},
               {"net_resolution", artifact.net_resolution},
               {"max_set_size", artifact.max_set_size},
               {"iterations", artifact.iterations},
               {"converged", artifact.converged},
               {"values", values},
               {"policy", policy},
               {"deltas", deltas}};
  return j.dump(2) + "\n";
}

SolveArtifact solve_from_json(const std::string& text, RunManifest* manifest_out) {
  json j = parse_text(text, "solve result");
  SolveArtifact artifact;
  try {
    artifact.operator_name = j.at("operator").get<std::string>();
    artifact.gamma = j.at("gamma").get<double>();
    artifact.net_resolution = j.at("net_resolution").get<int>();
    artifact.max_set_size = j.at("max_set_size").get<int>();
    artifact.iterations = j.at("iterations").get<int>();
    artifact.converged = j.at("converged").get<bool>();
    artifact.values = j.at("values").get<std::vector<double>>();
    artifact.policy = j.at("policy").get<std::vector<Action>>();
    artifact.deltas = j.at("deltas").get<std::vector<double>>();
    if (manifest_out != nullptr) *manifest_out = manifest_from_json(j.at("manifest"));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("solve result: ") + e.what());
  }
  if (artifact.policy.size() != artifact.values.size()) {
    throw ValidationError("solve result: values/policy length mismatch");
  }
  return artifact;
}

std::string solve_to_csv(const SolveArtifact& artifact, const RunManifest& manifest) {
  std::ostringstream out;
  out << manifest_comment(manifest);
  out << "state,value,action\n";
  for (size_t s = 0; s < artifact.values.size(); ++s) {
    out << s << ',' << format_g9(artifact.values[s]) << ',';
    const Action& w = artifact.policy[s];
    for (size_t i = 0; i < w.size(); ++i) {
      if (i > 0) out << ' ';
      out << w[i];
    }
    out << '\n';
  }
  return out.str();
}

namespace {

void append_row_csv(std::ostringstream& out, const ExperimentRow& row) {
  out << arm_name(row.arm) << ',' << row.vi_iterations << ',' << row.repetition << ','
      << row.sessions << ',' << format_g9(row.mean_length) << ','
      << format_g9(row.stderr_length) << ',' << row.seed << '\n';
}

json row_to_json(const ExperimentRow& row) {
  return json{{"arm", arm_name(row.arm)},
              {"vi_iterations", row.vi_iterations},
              {"repetition", row.repetition},
              {"sessions", row.sessions},
              {"mean_length", jnum(row.mean_length)},
              {"stderr", jnum(row.stderr_length)},
              {"seed", row.seed}};
}

}  // namespace

std::string experiment_to_csv(const ExperimentTable& table, const RunManifest& manifest) {
  std::ostringstream out;
  out << manifest_comment(manifest);
  out << "arm,vi_iterations,repetition,sessions,mean_length,stderr,seed\n";
  for (const ExperimentRow& row : table.rows) append_row_csv(out, row);
  for (const ExperimentRow& row : table.pooled) append_row_csv(out, row);
  return out.str();
}

std::string experiment_to_json(const ExperimentTable& table, const RunManifest& manifest) {
  json rows = json::array();
  for (const ExperimentRow& row : table.rows) rows.push_back(row_to_json(row));
  json pooled = json::array();
  for (const ExperimentRow& row : table.pooled) pooled.push_back(row_to_json(row));
  const json j{{"manifest", manifest_to_json(manifest)}, {"rows", rows}, {"pooled", pooled}};
  return j.dump(2) + "\n";
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
  json arms = json::array();
  for (Arm arm : config.arms) arms.push_back(arm_name(arm));
  const json protocol{{"num_types", config.protocol.num_types},
                      {"num_items", config.protocol.num_items},
                      {"strong_per_type", config.protocol.strong_per_type},
                      {"termination_score", config.protocol.termination_score},
                      {"generic_lo", config.protocol.generic_lo},
                      {"generic_hi", config.protocol.generic_hi},
                      {"strong_lo", config.protocol.strong_lo},
                      {"strong_hi", config.protocol.strong_hi},
                      {"weak_lo", config.protocol.weak_lo},
                      {"weak_hi", config.protocol.weak_hi},
                      {"generic_per_type", config.protocol.generic_per_type}};
  const json j{{"protocol", protocol},
               {"max_set_size", config.max_set_size},
               {"gamma", config.gamma},
               {"net_resolution", config.net_resolution},
               {"prior", config.prior},
               {"arms", arms},
               {"vi_sweep", config.vi_sweep},
               {"repetitions", config.repetitions},
               {"sessions", config.sessions},
               {"seed", config.seed},
               {"max_rounds", config.max_rounds},
               {"threads", config.threads},
               {"exact_belief_tracking", config.exact_belief_tracking}};
  return j.dump();
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  json j = parse_text(text, "experiment config");
  if (!j.is_object()) throw ValidationError("experiment config: expected a JSON object");
  ExperimentConfig config;
  if (j.contains("protocol")) {
    json p = j.at("protocol");
    if (!p.is_object()) throw ValidationError("experiment config: protocol must be an object");
    take(p, "num_types", config.protocol.num_types);
    take(p, "num_items", config.protocol.num_items);
    take(p, "strong_per_type", config.protocol.strong_per_type);
    take(p, "termination_score", config.protocol.termination_score);
    take(p, "generic_lo", config.protocol.generic_lo);
    take(p, "generic_hi", config.protocol.generic_hi);
    take(p, "strong_lo", config.protocol.strong_lo);
    take(p, "strong_hi", config.protocol.strong_hi);
    take(p, "weak_lo", config.protocol.weak_lo);
    take(p, "weak_hi", config.protocol.weak_hi);
    take(p, "generic_per_type", config.protocol.generic_per_type);
    reject_unknown(p, "protocol");
    j.erase("protocol");
  }
  std::vector<std::string> arm_names;
  bool have_arms = false;
  if (j.contains("arms")) {
    have_arms = true;
    take(j, "arms", arm_names);
  }
  take(j, "max_set_size", config.max_set_size);
  take(j, "gamma", config.gamma);
  take(j, "net_resolution", config.net_resolution);
  take(j, "prior", config.prior);
  take(j, "vi_sweep", config.vi_sweep);
  take(j, "repetitions", config.repetitions);
  take(j, "sessions", config.sessions);
  take(j, "seed", config.seed);
  take(j, "max_rounds", config.max_rounds);
  take(j, "threads", config.threads);
  take(j, "exact_belief_tracking", config.exact_belief_tracking);
  reject_unknown(j, "experiment config");
  if (have_arms) {
    config.arms.clear();
    for (const std::string& name : arm_names) config.arms.push_back(arm_from_name(name));
  }
  return config;
}

}  // namespace oneshot
