#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oneshot/set_action_mdp.hpp"

namespace oneshot {

// One-step look-ahead value of playing w in state s:
//     Q_V(s, w) = reward(s, w) + gamma * sum_i P(s_i | s, w) V(s_i).
// Terminating mass contributes nothing.
double q_value(const SetActionMdp& mdp, const ValueFunction& V, int state, const Action& w,
               double gamma);

// Greedy set construction: start from the empty set; for max_set_size rounds
// pick the item l (including items already present, which leave the set
// unchanged) maximizing f(current + l). Ties resolve to the lowest item
// index. The effective set can stay below max_set_size when the best choice
// is a repeat. f must be defined on every subset of size <= max_set_size and
// on the empty set.
Action greedy_argmax(const std::function<double(const Action&)>& f, int num_items,
                     int max_set_size, double* value_out = nullptr);

struct SweepResult {
  ValueFunction values;
  Policy policy;
};

enum class BellmanOperator { kExact, kGreedy, kSimpleGreedy };

const char* bellman_operator_name(BellmanOperator op);
BellmanOperator bellman_operator_from_name(const std::string& name);

// One-step optimal backup: per state, the maximum of q_value over ALL item
// sets of size <= max_set_size (the empty set included). Guarded by an
// explicit work estimate; throws GuardError above the cap.
SweepResult exact_bellman(const SetActionMdp& mdp, const ValueFunction& V, double gamma,
                          uint64_t work_cap = 200'000'000);

// Per-state greedy backup, no cross-state sharing.
SweepResult simple_greedy_bellman(const SetActionMdp& mdp, const ValueFunction& V, double gamma);

// Two-phase greedy backup: phase 1 collects one greedy action per state into
// the shared pool G (deduplicated, canonical order); phase 2 lets every state
// take the best action in G. Values therefore dominate the simple-greedy
// backup state by state.
SweepResult greedy_bellman(const SetActionMdp& mdp, const ValueFunction& V, double gamma);

SweepResult apply_operator(BellmanOperator op, const SetActionMdp& mdp, const ValueFunction& V,
                           double gamma);

struct ValueIterationOptions {
  // Exactly one of `iterations` (fixed sweep count) or `tolerance` (sup-norm
  // stopping rule) must be set.
  std::optional<int> iterations;
  std::optional<double> tolerance;
  // Hard cap in tolerance mode; exceeding it raises GuardError (e.g. at
  // gamma = 1 with no termination mass the iteration diverges).
  int max_iterations = 10'000;
};

struct ValueIterationResult {
  ValueFunction values;
  Policy policy;
  std::vector<double> deltas;  // sup-norm change per sweep
  int iterations = 0;
  bool converged = false;  // only meaningful in tolerance mode
};

// Synchronous value iteration from the all-zero value function: every sweep
// reads only the previous iterate. `on_sweep`, when given, observes each
// iterate in order (1-based sweep count) — used to snapshot policies at
// several horizons in one run.
ValueIterationResult value_iteration(
    const SetActionMdp& mdp, BellmanOperator op, double gamma, const ValueIterationOptions& options,
    const std::function<void(int, const SweepResult&)>& on_sweep = nullptr);

// Structure probe: scans Q_V for monotonicity violations (adding an item
// lowered Q) and submodularity violations (a superset enjoyed a larger
// marginal gain), over all states and all nested action pairs within the
// MDP's set-size bound.
struct QProbeReport {
  double max_monotonicity_violation = 0.0;  // max over (s, w, l') of Q(w) - Q(w + l')
  int mono_state = -1;
  Action mono_w;
  int mono_extra = -1;
  double max_submodularity_violation = 0.0;  // max of gain(w_b) - gain(w_a), w_a subset of w_b
  int sub_state = -1;
  Action sub_w_a;
  Action sub_w_b;
  int sub_extra = -1;
  uint64_t tuples_checked = 0;
};

QProbeReport q_probe(const SetActionMdp& mdp, const ValueFunction& V, double gamma,
                     uint64_t work_cap = 50'000'000);

}  // namespace oneshot
