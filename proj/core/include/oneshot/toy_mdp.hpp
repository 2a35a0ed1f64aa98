#pragma once

#include <vector>

#include "oneshot/actions.hpp"
#include "oneshot/set_action_mdp.hpp"

namespace oneshot {

// Small finite MDP with set-valued actions, deterministic transitions and a
// dense (state x action) table. Actions are indexed in canonical order over
// all subsets of {0, ..., num_items - 1} of size <= max_set_size. A next
// state of -1 terminates the episode.
class TableMdp final : public SetActionMdp {
 public:
  TableMdp(int num_states, int num_items, int max_set_size, std::vector<double> rewards,
           std::vector<int> next_states);

  int state_count() const override { return num_states_; }
  int item_count() const override { return num_items_; }
  int max_set_size() const override { return max_set_size_; }
  double reward(int state, const Action& w) const override;
  void transitions(int state, const Action& w, std::vector<Transition>& out) const override;

  const ActionIndexer& indexer() const { return indexer_; }
  int next_state_of(int state, const Action& w) const;

 private:
  int cell(int state, const Action& w) const;

  int num_states_;
  int num_items_;
  int max_set_size_;
  ActionIndexer indexer_;
  std::vector<double> rewards_;
  std::vector<int> next_states_;
};

// Three states, three items, sets of size <= 2. Rewards grow with both the
// state index and the items shown; pairs jump to the state "complementary"
// to the pair, singletons move to the state matching the item, and the empty
// set idles in place for no reward. Greedy set construction is suboptimal
// here: the immediate-reward ranking of items disagrees with the ranking
// induced by the continuation values, which is what makes this instance a
// useful probe for the difference between the exact and greedy backups.
TableMdp build_counterexample();

// Discount factor the counterexample's reference values are quoted at.
inline constexpr double kCounterexampleGamma = 0.5;

}  // namespace oneshot
