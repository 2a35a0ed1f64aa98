// Command-line front end: solve / simulate / check / counterexample /
// net-info subcommands over the oneshot core library.
//
// Exit codes: 0 success, 2 validation error, 3 guard (size/work cap) error,
// 4 check failure (a gated assertion did not hold), 1 unexpected error.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oneshot/belief.hpp"
#include "oneshot/belief_mdp.hpp"
#include "oneshot/errors.hpp"
#include "oneshot/planner.hpp"
#include "oneshot/rng.hpp"
#include "oneshot/serialization.hpp"
#include "oneshot/simulator.hpp"
#include "oneshot/theory.hpp"
#include "oneshot/toy_mdp.hpp"
#include "oneshot/user_model.hpp"

namespace {

using nlohmann::json;
using namespace oneshot;

struct CommonOptions {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<int> threads;
  std::string out_dir = ".";
  std::string format = "csv";
};

void add_common_options(CLI::App* cmd, CommonOptions* opts, bool with_format = true) {
  cmd->add_option("--config", opts->config_path, "Path to the JSON config file");
  cmd->add_option("--seed", opts->seed, "RNG seed (overrides the config)");
  cmd->add_option("--threads", opts->threads,
                  "Worker threads (overrides ONESHOT_THREADS and the config)");
  cmd->add_option("--out", opts->out_dir, "Output directory (created if missing)");
  if (with_format) {
    cmd->add_option("--format", opts->format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  }
}

int resolve_threads(const CommonOptions& opts, int config_threads) {
  if (opts.threads) {
    if (*opts.threads < 1) throw ValidationError("--threads must be >= 1");
    return *opts.threads;
  }
  if (const char* env = std::getenv("ONESHOT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) {
      throw ValidationError("ONESHOT_THREADS must be a positive integer");
    }
    return static_cast<int>(n);
  }
  return config_threads;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path.string());
  out << content;
  if (!out) throw ValidationError("failed writing file: " + path.string());
  std::cout << "wrote " << path.string() << "\n";
}

json load_config(const CommonOptions& opts) {
  if (opts.config_path.empty()) return json::object();
  json j = json::parse(read_file(opts.config_path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ValidationError("config file must hold a JSON object: " + opts.config_path);
  }
  return j;
}

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
  if (j.empty()) return;
  std::string keys;
  for (const auto& item : j.items()) {
    if (!keys.empty()) keys += ", ";
    keys += item.key();
  }
  throw ValidationError(std::string("config: unknown key(s) in ") + where + ": " + keys);
}

class WallClock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

int run_solve(const CommonOptions& opts) {
  WallClock clock;
  json cfg = load_config(opts);

  bool toy = false;
  json model_inline;
  std::string model_file;
  json protocol_json;
  uint64_t model_seed = 1;
  int max_set_size = 3;
  double gamma = 1.0;
  int net_resolution = 10;
  std::string operator_name = "greedy";
  std::optional<int> iterations;
  std::optional<double> tolerance;
  int max_iterations = 10'000;

  take(cfg, "toy", toy);
  if (cfg.contains("model")) {
    model_inline = cfg.at("model");
    cfg.erase("model");
  }
  take(cfg, "model_file", model_file);
  if (cfg.contains("protocol")) {
    protocol_json = cfg.at("protocol");
    cfg.erase("protocol");
  }
  take(cfg, "model_seed", model_seed);
  take(cfg, "max_set_size", max_set_size);
  take(cfg, "gamma", gamma);
  take(cfg, "net_resolution", net_resolution);
  take(cfg, "operator", operator_name);
  if (cfg.contains("iterations")) {
    int t = 0;
    take(cfg, "iterations", t);
    iterations = t;
  }
  if (cfg.contains("tolerance")) {
    double tol = 0.0;
    take(cfg, "tolerance", tol);
    tolerance = tol;
  }
  take(cfg, "max_iterations", max_iterations);
  reject_unknown(cfg, "solve config");
  if (opts.seed) model_seed = *opts.seed;
  if (!iterations && !tolerance) {
    throw ValidationError("solve config: set one of 'iterations' or 'tolerance'");
  }

  const BellmanOperator op = bellman_operator_from_name(operator_name);
  ValueIterationOptions vi;
  vi.iterations = iterations;
  vi.tolerance = tolerance;
  vi.max_iterations = max_iterations;

  // Model source and the MDP to solve.
  std::optional<UserTypeModel> model;
  std::optional<BeliefNet> net;
  std::optional<BeliefMdpAdapter> adapter;
  std::optional<TableMdp> table;
  std::string source;
  if (toy) {
    source = "toy";
    table.emplace(build_counterexample());
    net_resolution = 0;
    max_set_size = table->max_set_size();
  } else if (!model_inline.is_null()) {
    source = "inline";
    model.emplace(model_from_json(model_inline.dump()));
  } else if (!model_file.empty()) {
    source = "file";
    model.emplace(model_from_json(read_file(model_file)));
  } else if (!protocol_json.is_null()) {
    source = "protocol";
    json wrapper;
    wrapper["protocol"] = protocol_json;
    const ScoreProtocol protocol = experiment_config_from_json(wrapper.dump()).protocol;
    Rng rng(derive_stream(model_seed, {0x6d6f64656cULL}));
    model.emplace(sample_scores(rng, protocol));
  } else {
    throw ValidationError("solve config: provide 'toy', 'model', 'model_file' or 'protocol'");
  }
  const SetActionMdp* mdp = nullptr;
  if (table) {
    mdp = &*table;
  } else {
    net.emplace(BeliefNet::build(model->num_types(), net_resolution));
    adapter.emplace(*model, *net, max_set_size);
    mdp = &*adapter;
  }

  const ValueIterationResult result = value_iteration(*mdp, op, gamma, vi);

  SolveArtifact artifact;
  artifact.operator_name = operator_name;
  artifact.gamma = gamma;
  artifact.net_resolution = net_resolution;
  artifact.max_set_size = max_set_size;
  artifact.iterations = result.iterations;
  artifact.converged = result.converged;
  artifact.values = result.values.values;
  artifact.policy = result.policy.actions;
  artifact.deltas = result.deltas;

  json resolved{{"source", source},
                {"toy", toy},
                {"model_file", model_file},
                {"protocol", protocol_json},
                {"model_seed", model_seed},
                {"max_set_size", max_set_size},
                {"gamma", gamma},
                {"net_resolution", net_resolution},
                {"operator", operator_name},
                {"max_iterations", max_iterations}};
  if (iterations) resolved["iterations"] = *iterations;
  if (tolerance) resolved["tolerance"] = *tolerance;

  RunManifest manifest;
  manifest.subcommand = "solve";
  manifest.config_json = resolved.dump();
  manifest.seed = model_seed;
  manifest.wall_seconds = clock.seconds();

  if (opts.format == "json") {
    write_file(opts.out_dir, "solve.json", solve_to_json(artifact, manifest));
  } else {
    write_file(opts.out_dir, "solve.csv", solve_to_csv(artifact, manifest));
  }
  double vmax = 0.0;
  for (double v : artifact.values) vmax = std::max(vmax, v);
  std::cout << "operator=" << operator_name << " iterations=" << result.iterations
            << " states=" << artifact.values.size() << " max_value=" << format_g9(vmax) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

int run_simulate(const CommonOptions& opts) {
  WallClock clock;
  const json cfg = load_config(opts);
  ExperimentConfig config = experiment_config_from_json(cfg.dump());
  if (opts.seed) config.seed = *opts.seed;
  config.threads = resolve_threads(opts, config.threads);

  const ExperimentTable table = run_experiment(config);

  RunManifest manifest;
  manifest.subcommand = "simulate";
  manifest.config_json = experiment_config_to_json(config);
  manifest.seed = config.seed;
  manifest.wall_seconds = clock.seconds();

  if (opts.format == "json") {
    write_file(opts.out_dir, "experiment.json", experiment_to_json(table, manifest));
  } else {
    write_file(opts.out_dir, "experiment.csv", experiment_to_csv(table, manifest));
  }
  for (const ExperimentRow& row : table.pooled) {
    std::cout << arm_name(row.arm) << " t=" << row.vi_iterations << " mean="
              << format_g9(row.mean_length) << " stderr=" << format_g9(row.stderr_length)
              << " (" << row.sessions << " sessions)\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct SuiteOutcome {
  json report = json::array();
  int failures = 0;
};

SuiteOutcome suite_theorem1(uint64_t seed, int seeds, int t) {
  SuiteOutcome out;
  for (int i = 0; i < seeds; ++i) {
    Rng rng(derive_stream(seed, {1, static_cast<uint64_t>(i)}));
    const int M = 2 + static_cast<int>(rng.next_below(2));
    const int L = 4 + static_cast<int>(rng.next_below(4));
    const int k = 2 + static_cast<int>(rng.next_below(2));
    const int res = 3 + static_cast<int>(rng.next_below(4));
    const double gamma = (i % 3 == 0) ? 1.0 : rng.uniform(0.3, 1.0);
    const UserTypeModel model = random_conforming_model(rng, M, L, k);
    const BeliefNet net = BeliefNet::build(M, res);
    const BeliefMdpAdapter mdp(model, net, k);
    const Theorem1Report rep = check_theorem1(mdp, gamma, t);
    const bool ok = rep.upper_ok && rep.lower_ok_cons && rep.hypothesis_met;
    if (!ok) ++out.failures;
    out.report.push_back(json{{"instance", i},
                              {"num_types", M},
                              {"num_items", L},
                              {"max_set_size", k},
                              {"resolution", res},
                              {"gamma", round_g9(gamma)},
                              {"B", round_g9(rep.B)},
                              {"hypothesis_met", rep.hypothesis_met},
                              {"max_upper_violation", round_g9(rep.max_upper_violation)},
                              {"max_lower_violation_stated",
                               round_g9(rep.max_lower_violation_stated)},
                              {"max_lower_violation_conservative",
                               round_g9(rep.max_lower_violation_cons)},
                              {"ok", ok}});
  }
  return out;
}

SuiteOutcome suite_theorem2(uint64_t seed) {
  SuiteOutcome out;
  struct Spec {
    int M, L, k, r, rf, t;
    double gamma;
    bool expect_zero_gap;
  };
  const std::vector<Spec> specs = {
      {2, 5, 2, 10, 40, 6, 0.9, false},
      {3, 6, 3, 6, 24, 5, 1.0, false},
      {1, 4, 2, 8, 16, 4, 0.8, true},   // one-point simplex: no discretization
      {2, 5, 2, 10, 20, 4, 0.0, true},  // gamma = 0: backup ignores the net
  };
  for (size_t i = 0; i < specs.size(); ++i) {
    const Spec& sp = specs[i];
    Rng rng(derive_stream(seed, {2, static_cast<uint64_t>(i)}));
    const UserTypeModel model = random_conforming_model(rng, sp.M, sp.L, sp.k);
    const Theorem2Report rep = check_theorem2(model, sp.k, sp.gamma, sp.t, sp.r, sp.rf);
    bool ok = rep.ok;
    if (sp.expect_zero_gap && rep.max_discretization_gap > 1e-12) ok = false;
    if (!ok) ++out.failures;
    out.report.push_back(json{{"instance", i},
                              {"num_types", sp.M},
                              {"resolution", sp.r},
                              {"fine_resolution", sp.rf},
                              {"gamma", round_g9(sp.gamma)},
                              {"bound", round_g9(rep.bound)},
                              {"max_gap", round_g9(rep.max_gap)},
                              {"max_discretization_gap", round_g9(rep.max_discretization_gap)},
                              {"ok", ok}});
  }
  return out;
}

SuiteOutcome suite_nemhauser(uint64_t seed, int instances) {
  SuiteOutcome out;
  const int L = 10, k = 3;
  const double beta_classical = 1.0 - std::pow(1.0 - 1.0 / k, k);
  for (int i = 0; i < instances; ++i) {
    Rng rng(derive_stream(seed, {3, static_cast<uint64_t>(i)}));
    const CoverageFunction f = CoverageFunction::sample(rng, L, 40, 0.25);
    const NemhauserReport rep = check_nemhauser(
        [&f](const Action& w) { return f(w); }, L, k, 0.0, 0.0, beta_classical);
    if (!rep.ok) ++out.failures;
    out.report.push_back(json{{"instance", i},
                              {"greedy", round_g9(rep.greedy_value)},
                              {"opt", round_g9(rep.opt_value)},
                              {"bound", round_g9(rep.bound)},
                              {"ok", rep.ok}});
  }
  // Modular functions: greedy is exactly optimal.
  Rng rng(derive_stream(seed, {3, 0xff}));
  std::vector<double> weights;
  for (int i = 0; i < L; ++i) weights.push_back(rng.uniform(0.0, 1.0));
  const auto modular = [&weights](const Action& w) {
    double total = 0.0;
    for (int item : w) total += weights[static_cast<size_t>(item)];
    return total;
  };
  const NemhauserReport rep = check_nemhauser(modular, L, k, 0.0, 0.0, 1.0);
  const bool modular_ok = rep.ok && std::abs(rep.greedy_value - rep.opt_value) <= 1e-12;
  if (!modular_ok) ++out.failures;
  out.report.push_back(json{{"instance", "modular"}, {"ok", modular_ok}});
  return out;
}

SuiteOutcome suite_iia(uint64_t seed, int instances) {
  SuiteOutcome out;
  for (int i = 0; i < instances; ++i) {
    Rng rng(derive_stream(seed, {4, static_cast<uint64_t>(i)}));
    const int M = 1 + static_cast<int>(rng.next_below(3));
    const int L = 2 + static_cast<int>(rng.next_below(5));
    const int k = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(std::min(L, 3))));
    const UserTypeModel model = random_conforming_model(rng, M, L, k);
    const IiaReport rep = model.check_iia(k);
    const bool ok = rep.max_residual < 1e-12;
    if (!ok) ++out.failures;
    out.report.push_back(json{{"instance", i},
                              {"max_residual", round_g9(rep.max_residual)},
                              {"tuples", rep.tuples_checked},
                              {"ok", ok}});
  }
  return out;
}

SuiteOutcome suite_structure(uint64_t seed, int instances) {
  SuiteOutcome out;
  for (int i = 0; i < instances; ++i) {
    Rng rng(derive_stream(seed, {5, static_cast<uint64_t>(i)}));
    const int M = 2 + static_cast<int>(rng.next_below(2));
    const int L = 4 + static_cast<int>(rng.next_below(3));
    const int k = 2;
    const int res = 4 + static_cast<int>(rng.next_below(3));
    const double gamma = rng.uniform(0.3, 1.0);
    const UserTypeModel model = random_conforming_model(rng, M, L, k);
    const BeliefNet net = BeliefNet::build(M, res);
    const BeliefMdpAdapter mdp(model, net, k);
    const double B = model.assumption_B(k);

    // Snap idempotence over every net point.
    bool snap_ok = true;
    for (int s = 0; s < net.size(); ++s) {
      if (net.snap(net.point(s)) != s) {
        snap_ok = false;
        break;
      }
    }

    // Posterior rows renormalize to 1e-12.
    double worst_norm = 0.0;
    const std::vector<Action> actions = enumerate_actions(L, k);
    for (int s = 0; s < net.size() && worst_norm <= 1e-12; ++s) {
      for (const Action& w : actions) {
        if (w.empty()) continue;
        for (int item : w) {
          if (mixture_choice_prob(model, net.point(s), w, item) <= 0.0) continue;
          const Belief post = posterior(model, net.point(s), w, item);
          double total = 0.0;
          for (int m = 0; m < M; ++m) total += post[m];
          worst_norm = std::max(worst_norm, std::abs(total - 1.0));
        }
      }
    }

    // Value bound V <= 1/(B - gamma) for every operator and sweep.
    bool bound_ok = true;
    const double cap = 1.0 / (B - gamma) + 1e-9;
    if (B > gamma) {
      for (BellmanOperator op : {BellmanOperator::kExact, BellmanOperator::kGreedy,
                                 BellmanOperator::kSimpleGreedy}) {
        ValueIterationOptions vi;
        vi.iterations = 8;
        const ValueIterationResult res_vi = value_iteration(mdp, op, gamma, vi);
        for (int s = 0; s < res_vi.values.size(); ++s) {
          if (res_vi.values[s] > cap) bound_ok = false;
        }
      }
    }

    // Greedy-VI Q monotonicity on a B >= 1+gamma instance.
    const UserTypeModel mono_model = random_q_monotone_model(rng, M, L, k, gamma);
    const BeliefMdpAdapter mono_mdp(mono_model, net, k);
    double worst_mono = 0.0;
    ValueFunction v = ValueFunction::zero(net.size());
    for (int sweep = 0; sweep < 4; ++sweep) {
      worst_mono = std::max(worst_mono, q_probe(mono_mdp, v, gamma).max_monotonicity_violation);
      v = greedy_bellman(mono_mdp, v, gamma).values;
    }

    const bool ok = snap_ok && worst_norm <= 1e-12 && bound_ok && worst_mono <= 1e-9;
    if (!ok) ++out.failures;
    out.report.push_back(json{{"instance", i},
                              {"snap_idempotent", snap_ok},
                              {"worst_posterior_norm", round_g9(worst_norm)},
                              {"value_bound_ok", bound_ok},
                              {"worst_q_monotonicity_violation", round_g9(worst_mono)},
                              {"ok", ok}});
  }
  return out;
}

int run_check(const CommonOptions& opts) {
  WallClock clock;
  json cfg = load_config(opts);
  std::string suite = "all";
  int seeds = 5;
  int t = 5;
  uint64_t seed = 1;
  take(cfg, "suite", suite);
  take(cfg, "seeds", seeds);
  take(cfg, "t", t);
  take(cfg, "seed", seed);
  reject_unknown(cfg, "check config");
  if (opts.seed) seed = *opts.seed;
  if (seeds < 1) throw ValidationError("check config: seeds must be >= 1");
  if (t < 1) throw ValidationError("check config: t must be >= 1");

  json suites = json::object();
  int failures = 0;
  const auto want = [&suite](const char* name) { return suite == "all" || suite == name; };
  if (want("theorem1")) {
    const SuiteOutcome out = suite_theorem1(seed, seeds, t);
    suites["theorem1"] = out.report;
    failures += out.failures;
  }
  if (want("theorem2")) {
    const SuiteOutcome out = suite_theorem2(seed);
    suites["theorem2"] = out.report;
    failures += out.failures;
  }
  if (want("nemhauser")) {
    const SuiteOutcome out = suite_nemhauser(seed, seeds * 4);
    suites["nemhauser"] = out.report;
    failures += out.failures;
  }
  if (want("iia")) {
    const SuiteOutcome out = suite_iia(seed, seeds * 10);
    suites["iia"] = out.report;
    failures += out.failures;
  }
  if (want("structure")) {
    const SuiteOutcome out = suite_structure(seed, seeds);
    suites["structure"] = out.report;
    failures += out.failures;
  }
  if (suites.empty()) {
    throw ValidationError("check config: unknown suite '" + suite + "'");
  }

  RunManifest manifest;
  manifest.subcommand = "check";
  manifest.config_json =
      json{{"suite", suite}, {"seeds", seeds}, {"t", t}, {"seed", seed}}.dump();
  manifest.seed = seed;
  manifest.wall_seconds = clock.seconds();

  json report{{"manifest", json::parse(manifest.config_json)},  // placeholder, replaced below
              {"suites", suites},
              {"failures", failures},
              {"passed", failures == 0}};
  report["manifest"] = json{{"subcommand", manifest.subcommand},
                            {"config", json::parse(manifest.config_json)},
                            {"seed", manifest.seed},
                            {"version", manifest.version},
                            {"wall_seconds", round_g9(manifest.wall_seconds)}};
  write_file(opts.out_dir, "check.json", report.dump(2) + "\n");
  std::cout << "suites=" << suites.size() << " failures=" << failures << "\n";
  if (failures > 0) throw CheckError(std::to_string(failures) + " gated assertion(s) failed");
  return 0;
}

// ---------------------------------------------------------------------------
// counterexample
// ---------------------------------------------------------------------------

int run_counterexample(const CommonOptions&) {
  const TableMdp mdp = build_counterexample();
  const double gamma = kCounterexampleGamma;

  // Greedy VI, third application: probe Q against the value function that
  // the third sweep backs up from (two completed sweeps).
  ValueFunction v2 = ValueFunction::zero(mdp.state_count());
  for (int sweep = 0; sweep < 2; ++sweep) v2 = greedy_bellman(mdp, v2, gamma).values;

  // Reference optimum: exact VI to numerical convergence.
  ValueIterationOptions vi;
  vi.tolerance = 1e-13;
  vi.max_iterations = 1'000;
  const ValueFunction vstar = value_iteration(mdp, BellmanOperator::kExact, gamma, vi).values;

  struct Probe {
    const char* label;
    double measured;
    double expected;
  };
  const auto q = [&](const ValueFunction& v, std::initializer_list<int> items) {
    return q_value(mdp, v, 0, Action(items), gamma);
  };
  const std::vector<Probe> probes = {
      {"Q({3},1) after 3rd greedy sweep", q(v2, {2}), 11.75},
      {"Q({3,1},1) after 3rd greedy sweep", q(v2, {0, 2}), 10.75},
      {"Q({2},1)-Q(0,1) after 3rd greedy sweep", q(v2, {1}) - q(v2, {}), 3.5},
      {"Q({1,2},1)-Q({1},1) after 3rd greedy sweep", q(v2, {0, 1}) - q(v2, {0}), 5.5},
      {"Q({3},1) at the optimal values", q(vstar, {2}), 14.0},
      {"Q({3,1},1) at the optimal values", q(vstar, {0, 2}), 12.0},
      {"Q({2},1)-Q(0,1) at the optimal values", q(vstar, {1}) - q(vstar, {}), 3.0},
      {"Q({1,2},1)-Q({1},1) at the optimal values", q(vstar, {0, 1}) - q(vstar, {0}), 6.0},
  };
  int failures = 0;
  for (const Probe& probe : probes) {
    const bool ok = std::abs(probe.measured - probe.expected) <= 1e-9;
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << probe.label << ": measured "
              << format_g9(probe.measured) << ", expected " << format_g9(probe.expected) << "\n";
  }
  std::cout << "optimal values:";
  for (int s = 0; s < vstar.size(); ++s) std::cout << ' ' << format_g9(vstar[s]);
  std::cout << "\n";
  if (failures > 0) {
    throw CheckError(std::to_string(failures) + " of 8 quantities differ from their quoted values");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// net-info
// ---------------------------------------------------------------------------

int run_net_info(const CommonOptions&, int num_types, int resolution) {
  const BeliefNet net = BeliefNet::build(num_types, resolution);
  const json j{{"num_types", net.num_types()},
               {"resolution", net.resolution()},
               {"points", net.size()},
               {"epsilon", round_g9(net.epsilon())},
               {"version", kToolVersion}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belief-state planning and session simulation toolkit"};
  app.require_subcommand(1);

  CommonOptions solve_opts, simulate_opts, check_opts, counter_opts, net_opts;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run value iteration and write values/policy");
  add_common_options(solve_cmd, &solve_opts);
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Run the session-length experiment and write the table");
  add_common_options(simulate_cmd, &simulate_opts);
  CLI::App* check_cmd =
      app.add_subcommand("check", "Run numerical verification suites and write check.json");
  add_common_options(check_cmd, &check_opts, /*with_format=*/false);
  CLI::App* counter_cmd = app.add_subcommand(
      "counterexample", "Print the reference small-MDP probe quantities with pass/fail");
  add_common_options(counter_cmd, &counter_opts, /*with_format=*/false);
  int net_types = 4;
  int net_resolution = 10;
  CLI::App* net_cmd = app.add_subcommand("net-info", "Print grid size and covering radius");
  net_cmd->add_option("--types", net_types, "Number of user types")->check(CLI::PositiveNumber);
  net_cmd->add_option("--resolution", net_resolution, "Grid resolution")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return run_solve(solve_opts);
    if (simulate_cmd->parsed()) return run_simulate(simulate_opts);
    if (check_cmd->parsed()) return run_check(check_opts);
    if (counter_cmd->parsed()) return run_counterexample(counter_opts);
    if (net_cmd->parsed()) return run_net_info(net_opts, net_types, net_resolution);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const GuardError& e) {
    std::cerr << "guard error: " << e.what() << "\n";
    return 3;
  } catch (const CheckError& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
