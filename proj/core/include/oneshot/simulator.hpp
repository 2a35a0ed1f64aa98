#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oneshot/belief.hpp"
#include "oneshot/belief_mdp.hpp"
#include "oneshot/rng.hpp"
#include "oneshot/set_action_mdp.hpp"
#include "oneshot/user_model.hpp"

namespace oneshot {

// Experiment score protocol: p_m identical across types; a block of
// "generic" items whose scores are drawn independently per (item, type) from
// [generic_lo, generic_hi]; the remaining items split into num_types equal
// groups, each group scoring in [strong_lo, strong_hi] for its own type and
// [weak_lo, weak_hi] for every other type. Items are laid out generic block
// first, then the type groups in type order; scores are drawn item by item,
// type by type within an item, so a protocol and a seed pin every number.
struct ScoreProtocol {
  int num_types = 4;
  int num_items = 13;
  int strong_per_type = 2;  // 4 in the large configuration
  double termination_score = 0.5;
  double generic_lo = 0.0, generic_hi = 0.6;
  double strong_lo = 0.5, strong_hi = 1.0;
  double weak_lo = 0.0, weak_hi = 0.5;
  // When false, each generic item draws one score shared by all types
  // (alternative reading; the default draws per (item, type)).
  bool generic_per_type = true;

  int generic_items() const { return num_items - num_types * strong_per_type; }
};

// Validates the protocol (at least one generic item, sane intervals) and
// samples a ratio-form model from it.
UserTypeModel sample_scores(Rng& rng, const ScoreProtocol& protocol);

// Uniformly random size-k item subset (partial Fisher-Yates, then sorted).
Action sample_k_subset(Rng& rng, int num_items, int k);

// A session policy maps (net state, round) to the display for that round; it
// may consume randomness (the random arm does).
using SessionPolicy = std::function<Action(int net_state, int round, Rng& rng)>;

struct SessionOptions {
  double gamma = 1.0;
  int max_rounds = 10'000;
  // Track the exact Bayesian belief instead of the net-resident process (the
  // default matches the planner's MDP: the posterior is taken at the snapped
  // point the action was chosen at).
  bool exact_belief_tracking = false;
  // Optional precomputed transition table for the default tracking mode;
  // must be built over the same model and net.
  const BeliefMdpAdapter* adapter = nullptr;
};

struct SessionResult {
  int length = 0;               // number of clicks
  double discounted_reward = 0.0;  // sum of gamma^round over click rounds
  std::vector<int> items;       // clicked items, in order
  int final_state = -1;         // net index the session ended at
  bool truncated = false;       // max_rounds reached before termination
};

// Simulates one session: the belief starts at the prior (snapped onto the
// net); each round the policy picks a display at the snapped state, the true
// type either clicks an item (reward 1, Bayes update) or terminates.
SessionResult run_session(const UserTypeModel& model, int true_type, const SessionPolicy& policy,
                          const BeliefNet& net, const Belief& prior, Rng& rng,
                          const SessionOptions& options = {});

enum class Arm : int { kRandom = 0, kOptimal = 1, kGreedy = 2, kSimpleGreedy = 3 };

const char* arm_name(Arm arm);
Arm arm_from_name(const std::string& name);

struct ExperimentConfig {
  ScoreProtocol protocol;
  int max_set_size = 3;
  double gamma = 1.0;
  int net_resolution = 10;
  std::vector<double> prior;  // empty = uniform over types
  std::vector<Arm> arms = {Arm::kRandom, Arm::kOptimal, Arm::kGreedy, Arm::kSimpleGreedy};
  std::vector<int> vi_sweep = {1, 2, 3, 4, 5};  // iteration counts for planner arms
  int repetitions = 50;
  int sessions = 10'000;
  uint64_t seed = 1;
  int max_rounds = 10'000;
  int threads = 1;
  bool exact_belief_tracking = false;
};

struct ExperimentRow {
  Arm arm = Arm::kRandom;
  int vi_iterations = 0;  // 0 on the random arm
  int repetition = 0;     // -1 on pooled rows
  int sessions = 0;
  double mean_length = 0.0;
  double stderr_length = 0.0;
  uint64_t seed = 0;
};

struct ExperimentTable {
  // One row per (arm, iteration count, repetition); stderr is across that
  // repetition's sessions.
  std::vector<ExperimentRow> rows;
  // One row per (arm, iteration count) pooling every session of every
  // repetition; stderr is the standard error of the repetition-level means
  // (repetitions are the independent unit — they share nothing, while
  // sessions within a repetition share a sampled model).
  std::vector<ExperimentRow> pooled;

  const ExperimentRow& pooled_row(Arm arm, int vi_iterations) const;
};

// Runs the full protocol: per repetition, sample a fresh model, build the
// net-restricted MDP, solve each planner arm at every iteration count in the
// sweep (one VI run per arm, snapshotting policies along the way), and
// simulate `sessions` sessions per (arm, iteration count). True types are
// drawn from the prior. Every session consumes its own RNG stream derived
// from (seed, repetition, arm, session index), so results are independent of
// scheduling; the same stream is reused across iteration counts of an arm
// (common random numbers along the sweep).
ExperimentTable run_experiment(const ExperimentConfig& config);

}  // namespace oneshot
