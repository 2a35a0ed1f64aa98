#include "oneshot/planner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "oneshot/actions.hpp"
#include "oneshot/errors.hpp"

namespace oneshot {

double q_value(const SetActionMdp& mdp, const ValueFunction& V, int state, const Action& w,
               double gamma) {
  double q = mdp.reward(state, w);
  if (gamma != 0.0) {
    std::vector<Transition> out;
    mdp.transitions(state, w, out);
    for (const Transition& tr : out) {
      q += gamma * tr.prob * V[tr.next_state];
    }
  }
  return q;
}

Action greedy_argmax(const std::function<double(const Action&)>& f, int num_items,
                     int max_set_size, double* value_out) {
  if (num_items <= 0) throw ValidationError("greedy_argmax: num_items must be positive");
  if (max_set_size < 0) throw ValidationError("greedy_argmax: max_set_size must be >= 0");
  Action cur;
  double cur_value = f(cur);
  Action candidate;
  for (int round = 0; round < max_set_size; ++round) {
    double best_value = 0.0;
    int best_item = -1;
    for (int item = 0; item < num_items; ++item) {
      double value;
      if (std::binary_search(cur.begin(), cur.end(), item)) {
        // Repeats leave the set unchanged; reuse the cached value.
        value = cur_value;
      } else {
        candidate = cur;
        candidate.insert(std::upper_bound(candidate.begin(), candidate.end(), item), item);
        value = f(candidate);
      }
      if (best_item < 0 || value > best_value) {
        best_value = value;
        best_item = item;
      }
    }
    if (std::binary_search(cur.begin(), cur.end(), best_item)) {
      // The best move is a no-op: every further round would stall the same way.
      cur_value = best_value;
      break;
    }
    cur.insert(std::upper_bound(cur.begin(), cur.end(), best_item), best_item);
    cur_value = best_value;
  }
  if (value_out != nullptr) *value_out = cur_value;
  return cur;
}

const char* bellman_operator_name(BellmanOperator op) {
  switch (op) {
    case BellmanOperator::kExact:
      return "exact";
    case BellmanOperator::kGreedy:
      return "greedy";
    case BellmanOperator::kSimpleGreedy:
      return "simple_greedy";
  }
  throw ValidationError("bellman_operator_name: unknown operator");
}

BellmanOperator bellman_operator_from_name(const std::string& name) {
  if (name == "exact") return BellmanOperator::kExact;
  if (name == "greedy") return BellmanOperator::kGreedy;
  if (name == "simple_greedy") return BellmanOperator::kSimpleGreedy;
  throw ValidationError("unknown Bellman operator name: " + name);
}

SweepResult exact_bellman(const SetActionMdp& mdp, const ValueFunction& V, double gamma,
                          uint64_t work_cap) {
  const int S = mdp.state_count();
  const int n = mdp.item_count();
  const int k = mdp.max_set_size();
  const uint64_t num_actions = count_actions(n, k);
  const uint64_t work =
      static_cast<uint64_t>(S) * num_actions * static_cast<uint64_t>(std::max(1, k));
  if (work > work_cap) {
    throw GuardError("exact_bellman: state x action work " + std::to_string(work) +
                     " exceeds cap " + std::to_string(work_cap));
  }
  const std::vector<Action> actions = enumerate_actions(n, k);
  SweepResult res{ValueFunction::zero(S), Policy::empty_actions(S)};
  for (int s = 0; s < S; ++s) {
    double best = 0.0;
    const Action* best_action = nullptr;
    // Canonical enumeration order (size, then lexicographic) makes the
    // argmax deterministic: strict improvement required to displace.
    for (const Action& w : actions) {
      const double q = q_value(mdp, V, s, w, gamma);
      if (best_action == nullptr || q > best) {
        best = q;
        best_action = &w;
      }
    }
    res.values[s] = best;
    res.policy[s] = *best_action;
  }
  return res;
}

SweepResult simple_greedy_bellman(const SetActionMdp& mdp, const ValueFunction& V, double gamma) {
  const int S = mdp.state_count();
  const int n = mdp.item_count();
  const int k = mdp.max_set_size();
  SweepResult res{ValueFunction::zero(S), Policy::empty_actions(S)};
  for (int s = 0; s < S; ++s) {
    double value = 0.0;
    res.policy[s] = greedy_argmax(
        [&](const Action& w) { return q_value(mdp, V, s, w, gamma); }, n, k, &value);
    res.values[s] = value;
  }
  return res;
}

SweepResult greedy_bellman(const SetActionMdp& mdp, const ValueFunction& V, double gamma) {
  const int S = mdp.state_count();
  const int n = mdp.item_count();
  const int k = mdp.max_set_size();
  // Phase 1: one greedy recommendation per state, pooled and deduplicated.
  // The pool is rebuilt from scratch for every iterate it is applied to.
  std::set<Action> pool;
  for (int s = 0; s < S; ++s) {
    pool.insert(greedy_argmax(
        [&](const Action& w) { return q_value(mdp, V, s, w, gamma); }, n, k, nullptr));
  }
  std::vector<Action> shared(pool.begin(), pool.end());
  std::sort(shared.begin(), shared.end(), action_canonical_less);
  // Phase 2: every state takes the best pooled action (or the empty set).
  SweepResult res{ValueFunction::zero(S), Policy::empty_actions(S)};
  const Action empty;
  for (int s = 0; s < S; ++s) {
    double best = q_value(mdp, V, s, empty, gamma);
    const Action* best_action = &empty;
    for (const Action& w : shared) {
      const double q = q_value(mdp, V, s, w, gamma);
      if (q > best) {
        best = q;
        best_action = &w;
      }
    }
    res.values[s] = best;
    res.policy[s] = *best_action;
  }
  return res;
}

SweepResult apply_operator(BellmanOperator op, const SetActionMdp& mdp, const ValueFunction& V,
                           double gamma) {
  switch (op) {
    case BellmanOperator::kExact:
      return exact_bellman(mdp, V, gamma);
    case BellmanOperator::kGreedy:
      return greedy_bellman(mdp, V, gamma);
    case BellmanOperator::kSimpleGreedy:
      return simple_greedy_bellman(mdp, V, gamma);
  }
  throw ValidationError("apply_operator: unknown operator");
}

ValueIterationResult value_iteration(
    const SetActionMdp& mdp, BellmanOperator op, double gamma,
    const ValueIterationOptions& options,
    const std::function<void(int, const SweepResult&)>& on_sweep) {
  if (options.iterations.has_value() == options.tolerance.has_value()) {
    throw ValidationError("value_iteration: set exactly one of iterations or tolerance");
  }
  if (options.iterations && *options.iterations < 0) {
    throw ValidationError("value_iteration: iterations must be >= 0");
  }
  if (options.tolerance && !(*options.tolerance > 0.0)) {
    throw ValidationError("value_iteration: tolerance must be positive");
  }
  if (gamma < 0.0 || gamma > 1.0) {
    throw ValidationError("value_iteration: gamma must lie in [0, 1]");
  }

  ValueIterationResult res;
  res.values = ValueFunction::zero(mdp.state_count());
  res.policy = Policy::empty_actions(mdp.state_count());

  const int limit = options.iterations ? *options.iterations : options.max_iterations;
  for (int sweep = 1; sweep <= limit; ++sweep) {
    SweepResult next = apply_operator(op, mdp, res.values, gamma);
    double delta = 0.0;
    for (int s = 0; s < static_cast<int>(next.values.size()); ++s) {
      delta = std::max(delta, std::abs(next.values[s] - res.values[s]));
    }
    res.values = std::move(next.values);
    res.policy = std::move(next.policy);
    res.deltas.push_back(delta);
    res.iterations = sweep;
    if (on_sweep) on_sweep(sweep, SweepResult{res.values, res.policy});
    if (options.tolerance && delta <= *options.tolerance) {
      res.converged = true;
      return res;
    }
  }
  if (options.tolerance) {
    throw GuardError("value_iteration: tolerance " + std::to_string(*options.tolerance) +
                     " not reached within " + std::to_string(options.max_iterations) +
                     " sweeps");
  }
  res.converged = true;  // fixed sweep count: ran to completion by definition
  return res;
}

QProbeReport q_probe(const SetActionMdp& mdp, const ValueFunction& V, double gamma,
                     uint64_t work_cap) {
  const int S = mdp.state_count();
  const int n = mdp.item_count();
  const int k = mdp.max_set_size();
  const uint64_t num_actions = count_actions(n, k);
  const uint64_t work = static_cast<uint64_t>(S) * num_actions * static_cast<uint64_t>(n) *
                        static_cast<uint64_t>(n);
  if (work > work_cap) {
    throw GuardError("q_probe: work estimate " + std::to_string(work) + " exceeds cap " +
                     std::to_string(work_cap));
  }

  // Index Q over all actions once per state, then scan nested pairs.
  ActionIndexer indexer(n, k);
  const std::vector<Action>& actions = indexer.all();
  QProbeReport rep;
  std::vector<double> q(actions.size(), 0.0);
  for (int s = 0; s < S; ++s) {
    for (size_t a = 0; a < actions.size(); ++a) q[a] = q_value(mdp, V, s, actions[a], gamma);
    for (size_t a = 0; a < actions.size(); ++a) {
      const Action& w = actions[a];
      if (static_cast<int>(w.size()) >= k) continue;
      for (int extra = 0; extra < n; ++extra) {
        if (std::binary_search(w.begin(), w.end(), extra)) continue;
        Action grown = w;
        grown.insert(std::upper_bound(grown.begin(), grown.end(), extra), extra);
        const double gain = q[indexer.index_of(grown)] - q[a];
        ++rep.tuples_checked;
        // Monotonicity: adding an item should not lower Q.
        if (-gain > rep.max_monotonicity_violation) {
          rep.max_monotonicity_violation = -gain;
          rep.mono_state = s;
          rep.mono_w = w;
          rep.mono_extra = extra;
        }
        // Submodularity: the same item's gain on any strict subset of w must
        // be at least the gain on w itself.
        for (size_t b = 0; b < actions.size(); ++b) {
          if (b == a) continue;
          const Action& wa = actions[b];
          if (wa.size() >= w.size()) continue;
          if (!std::includes(w.begin(), w.end(), wa.begin(), wa.end())) continue;
          Action wa_grown = wa;
          wa_grown.insert(std::upper_bound(wa_grown.begin(), wa_grown.end(), extra), extra);
          const double gain_small = q[indexer.index_of(wa_grown)] - q[b];
          const double violation = gain - gain_small;
          ++rep.tuples_checked;
          if (violation > rep.max_submodularity_violation) {
            rep.max_submodularity_violation = violation;
            rep.sub_state = s;
            rep.sub_w_a = wa;
            rep.sub_w_b = w;
            rep.sub_extra = extra;
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace oneshot
