#include "oneshot/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <thread>

#include "oneshot/errors.hpp"
#include "oneshot/planner.hpp"

namespace oneshot {

namespace {

constexpr uint64_t kModelStreamTag = 0x6d6f64656cULL;

void require_interval(double lo, double hi, const char* what) {
  if (!(lo <= hi) || lo < 0.0) {
    throw ValidationError(std::string("ScoreProtocol: bad interval for ") + what);
  }
}

}  // namespace

UserTypeModel sample_scores(Rng& rng, const ScoreProtocol& protocol) {
  const int M = protocol.num_types;
  const int L = protocol.num_items;
  const int g = protocol.generic_items();
  if (M < 1) throw ValidationError("ScoreProtocol: need at least one type");
  if (protocol.strong_per_type < 0) throw ValidationError("ScoreProtocol: strong_per_type < 0");
  if (g < 0) {
    throw ValidationError("ScoreProtocol: num_items smaller than the type groups require");
  }
  if (L < 1) throw ValidationError("ScoreProtocol: need at least one item");
  if (!(protocol.termination_score > 0.0)) {
    throw ValidationError("ScoreProtocol: termination score must be positive");
  }
  require_interval(protocol.generic_lo, protocol.generic_hi, "generic scores");
  require_interval(protocol.strong_lo, protocol.strong_hi, "strong scores");
  require_interval(protocol.weak_lo, protocol.weak_hi, "weak scores");

  std::vector<std::vector<double>> scores(static_cast<size_t>(M),
                                          std::vector<double>(static_cast<size_t>(L), 0.0));
  for (int item = 0; item < L; ++item) {
    if (item < g) {
      if (protocol.generic_per_type) {
        for (int m = 0; m < M; ++m) {
          scores[m][item] = rng.uniform(protocol.generic_lo, protocol.generic_hi);
        }
      } else {
        const double shared = rng.uniform(protocol.generic_lo, protocol.generic_hi);
        for (int m = 0; m < M; ++m) scores[m][item] = shared;
      }
    } else {
      const int owner = (item - g) / protocol.strong_per_type;
      for (int m = 0; m < M; ++m) {
        scores[m][item] = (m == owner) ? rng.uniform(protocol.strong_lo, protocol.strong_hi)
                                       : rng.uniform(protocol.weak_lo, protocol.weak_hi);
      }
    }
  }
  return UserTypeModel(std::move(scores),
                       std::vector<double>(static_cast<size_t>(M), protocol.termination_score));
}

Action sample_k_subset(Rng& rng, int num_items, int k) {
  if (k < 1 || k > num_items) {
    throw ValidationError("sample_k_subset: need 1 <= k <= num_items");
  }
  std::vector<int> pool(static_cast<size_t>(num_items));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.next_below(static_cast<uint64_t>(num_items - i)));
    std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
  }
  Action w(pool.begin(), pool.begin() + k);
  std::sort(w.begin(), w.end());
  return w;
}

SessionResult run_session(const UserTypeModel& model, int true_type, const SessionPolicy& policy,
                          const BeliefNet& net, const Belief& prior, Rng& rng,
                          const SessionOptions& options) {
  if (true_type < 0 || true_type >= model.num_types()) {
    throw ValidationError("run_session: true_type out of range");
  }
  if (options.gamma < 0.0 || options.gamma > 1.0) {
    throw ValidationError("run_session: gamma must lie in [0, 1]");
  }
  if (options.max_rounds < 1) throw ValidationError("run_session: max_rounds must be >= 1");

  SessionResult res;
  int state = net.snap(prior);
  Belief exact = prior;
  double discount = 1.0;
  for (int round = 0; round < options.max_rounds; ++round) {
    const Action w = policy(state, round, rng);
    // The true type clicks item l with P(l|type,w) and otherwise terminates;
    // one uniform decides the round.
    const double u = rng.next_double();
    double cum = 0.0;
    int clicked = -1;
    for (int item : w) {
      cum += model.choice_prob(true_type, w, item);
      if (u < cum) {
        clicked = item;
        break;
      }
    }
    if (clicked < 0) {
      res.final_state = state;
      return res;
    }
    res.length += 1;
    res.discounted_reward += discount;
    discount *= options.gamma;
    res.items.push_back(clicked);
    if (options.exact_belief_tracking) {
      exact = posterior(model, exact, w, clicked);
      state = net.snap(exact);
    } else if (options.adapter != nullptr) {
      state = options.adapter->next_state_of(state, w, clicked);
    } else {
      state = net.snap(posterior(model, net.point(state), w, clicked));
    }
  }
  res.truncated = true;
  res.final_state = state;
  return res;
}

const char* arm_name(Arm arm) {
  switch (arm) {
    case Arm::kRandom:
      return "random";
    case Arm::kOptimal:
      return "optimal";
    case Arm::kGreedy:
      return "greedy";
    case Arm::kSimpleGreedy:
      return "simple_greedy";
  }
  throw ValidationError("arm_name: unknown arm");
}

Arm arm_from_name(const std::string& name) {
  if (name == "random") return Arm::kRandom;
  if (name == "optimal") return Arm::kOptimal;
  if (name == "greedy") return Arm::kGreedy;
  if (name == "simple_greedy") return Arm::kSimpleGreedy;
  throw ValidationError("unknown arm name: " + name);
}

const ExperimentRow& ExperimentTable::pooled_row(Arm arm, int vi_iterations) const {
  for (const ExperimentRow& row : pooled) {
    if (row.arm == arm && row.vi_iterations == vi_iterations) return row;
  }
  throw ValidationError(std::string("no pooled row for arm ") + arm_name(arm) + " at t=" +
                        std::to_string(vi_iterations));
}

namespace {

Belief resolve_prior(const ExperimentConfig& config) {
  if (config.prior.empty()) return Belief::uniform(config.protocol.num_types);
  if (static_cast<int>(config.prior.size()) != config.protocol.num_types) {
    throw ValidationError("ExperimentConfig: prior size must equal the number of types");
  }
  return Belief(config.prior);
}

void validate_config(const ExperimentConfig& config) {
  if (config.repetitions < 1) throw ValidationError("ExperimentConfig: repetitions must be >= 1");
  if (config.sessions < 1) throw ValidationError("ExperimentConfig: sessions must be >= 1");
  if (config.arms.empty()) throw ValidationError("ExperimentConfig: no arms selected");
  if (config.net_resolution < 1) {
    throw ValidationError("ExperimentConfig: net resolution must be >= 1");
  }
  if (config.max_set_size < 1 || config.max_set_size > config.protocol.num_items) {
    throw ValidationError("ExperimentConfig: max_set_size must lie in [1, num_items]");
  }
  if (config.gamma < 0.0 || config.gamma > 1.0) {
    throw ValidationError("ExperimentConfig: gamma must lie in [0, 1]");
  }
  if (config.max_rounds < 1) throw ValidationError("ExperimentConfig: max_rounds must be >= 1");
  if (config.threads < 1) throw ValidationError("ExperimentConfig: threads must be >= 1");
  const bool has_planner_arm =
      std::any_of(config.arms.begin(), config.arms.end(),
                  [](Arm a) { return a != Arm::kRandom; });
  if (has_planner_arm) {
    if (config.vi_sweep.empty()) {
      throw ValidationError("ExperimentConfig: planner arms need a non-empty vi_sweep");
    }
    for (size_t i = 0; i < config.vi_sweep.size(); ++i) {
      if (config.vi_sweep[i] < 1 || (i > 0 && config.vi_sweep[i] <= config.vi_sweep[i - 1])) {
        throw ValidationError("ExperimentConfig: vi_sweep must be strictly increasing, >= 1");
      }
    }
  }
  resolve_prior(config);  // validates prior contents
}

int sample_type(const Belief& prior, Rng& rng) {
  const double u = rng.next_double();
  double cum = 0.0;
  for (int m = 0; m < prior.num_types(); ++m) {
    cum += prior[m];
    if (u < cum) return m;
  }
  return prior.num_types() - 1;  // guard against rounding at u ~ 1
}

ExperimentRow simulate_block(const ExperimentConfig& config, const UserTypeModel& model,
                             const BeliefNet& net, const Belief& prior,
                             const BeliefMdpAdapter* adapter, const SessionPolicy& policy,
                             Arm arm, int vi_iterations, int rep) {
  SessionOptions options;
  options.gamma = config.gamma;
  options.max_rounds = config.max_rounds;
  options.exact_belief_tracking = config.exact_belief_tracking;
  options.adapter = adapter;

  // Welford accumulation of session lengths.
  double mean = 0.0, m2 = 0.0;
  for (int s = 0; s < config.sessions; ++s) {
    Rng rng(derive_stream(config.seed,
                          {static_cast<uint64_t>(rep), static_cast<uint64_t>(arm),
                           static_cast<uint64_t>(s)}));
    const int true_type = sample_type(prior, rng);
    const SessionResult session = run_session(model, true_type, policy, net, prior, rng, options);
    const double x = static_cast<double>(session.length);
    const double delta = x - mean;
    mean += delta / (s + 1);
    m2 += delta * (x - mean);
  }
  ExperimentRow row;
  row.arm = arm;
  row.vi_iterations = vi_iterations;
  row.repetition = rep;
  row.sessions = config.sessions;
  row.mean_length = mean;
  row.stderr_length =
      config.sessions > 1 ? std::sqrt(m2 / (config.sessions - 1) / config.sessions) : 0.0;
  row.seed = config.seed;
  return row;
}

BellmanOperator arm_operator(Arm arm) {
  switch (arm) {
    case Arm::kOptimal:
      return BellmanOperator::kExact;
    case Arm::kGreedy:
      return BellmanOperator::kGreedy;
    case Arm::kSimpleGreedy:
      return BellmanOperator::kSimpleGreedy;
    case Arm::kRandom:
      break;
  }
  throw ValidationError("arm_operator: the random arm has no Bellman operator");
}

std::vector<ExperimentRow> run_repetition(const ExperimentConfig& config, int rep) {
  Rng model_rng(derive_stream(config.seed, {static_cast<uint64_t>(rep), kModelStreamTag}));
  const UserTypeModel model = sample_scores(model_rng, config.protocol);
  const BeliefNet net = BeliefNet::build(config.protocol.num_types, config.net_resolution);
  const Belief prior = resolve_prior(config);

  const bool has_planner_arm =
      std::any_of(config.arms.begin(), config.arms.end(),
                  [](Arm a) { return a != Arm::kRandom; });
  std::optional<BeliefMdpAdapter> adapter;
  if (has_planner_arm) adapter.emplace(model, net, config.max_set_size);
  const BeliefMdpAdapter* adapter_ptr = adapter ? &*adapter : nullptr;

  std::vector<ExperimentRow> rows;
  for (Arm arm : config.arms) {
    if (arm == Arm::kRandom) {
      const int L = config.protocol.num_items;
      const int k = config.max_set_size;
      const SessionPolicy policy = [L, k](int, int, Rng& rng) {
        return sample_k_subset(rng, L, k);
      };
      rows.push_back(
          simulate_block(config, model, net, prior, adapter_ptr, policy, arm, 0, rep));
      continue;
    }
    // One VI run per planner arm; policies are snapshotted at each sweep
    // count in the sweep list.
    std::map<int, Policy> snapshots;
    ValueIterationOptions vi_options;
    vi_options.iterations = config.vi_sweep.back();
    value_iteration(*adapter, arm_operator(arm), config.gamma, vi_options,
                    [&](int sweep, const SweepResult& sr) {
                      if (std::binary_search(config.vi_sweep.begin(), config.vi_sweep.end(),
                                             sweep)) {
                        snapshots.emplace(sweep, sr.policy);
                      }
                    });
    for (int t : config.vi_sweep) {
      const Policy& policy_table = snapshots.at(t);
      const SessionPolicy policy = [&policy_table](int state, int, Rng&) {
        return policy_table[state];
      };
      rows.push_back(
          simulate_block(config, model, net, prior, adapter_ptr, policy, arm, t, rep));
    }
  }
  return rows;
}

}  // namespace

ExperimentTable run_experiment(const ExperimentConfig& config) {
  validate_config(config);

  std::vector<std::vector<ExperimentRow>> per_rep(static_cast<size_t>(config.repetitions));
  const int workers = std::min(config.threads, config.repetitions);
  if (workers <= 1) {
    for (int rep = 0; rep < config.repetitions; ++rep) per_rep[rep] = run_repetition(config, rep);
  } else {
    std::atomic<int> next_rep{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    for (int wkr = 0; wkr < workers; ++wkr) {
      pool.emplace_back([&, wkr] {
        try {
          for (int rep = next_rep.fetch_add(1); rep < config.repetitions;
               rep = next_rep.fetch_add(1)) {
            per_rep[static_cast<size_t>(rep)] = run_repetition(config, rep);
          }
        } catch (...) {
          errors[static_cast<size_t>(wkr)] = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  ExperimentTable table;
  for (const auto& rows : per_rep) {
    table.rows.insert(table.rows.end(), rows.begin(), rows.end());
  }

  // Pooled rows follow the per-repetition row layout, which is identical for
  // every repetition: pool index i aggregates row i of each repetition.
  if (!per_rep.empty() && !per_rep[0].empty()) {
    const size_t block = per_rep[0].size();
    const int R = config.repetitions;
    for (size_t i = 0; i < block; ++i) {
      double mean = 0.0;
      for (int rep = 0; rep < R; ++rep) mean += per_rep[static_cast<size_t>(rep)][i].mean_length;
      mean /= R;
      double var = 0.0;
      for (int rep = 0; rep < R; ++rep) {
        const double d = per_rep[static_cast<size_t>(rep)][i].mean_length - mean;
        var += d * d;
      }
      ExperimentRow row = per_rep[0][i];
      row.repetition = -1;
      row.sessions = config.sessions * R;
      row.mean_length = mean;
      // Repetitions are the independent unit (each has its own model draw);
      // the pooled uncertainty is the standard error of the rep-level means.
      row.stderr_length = R > 1 ? std::sqrt(var / (R - 1) / R) : 0.0;
      table.pooled.push_back(row);
    }
  }
  return table;
}

}  // namespace oneshot
