#include "oneshot/toy_mdp.hpp"

#include <numeric>

#include "oneshot/errors.hpp"

namespace oneshot {

TableMdp::TableMdp(int num_states, int num_items, int max_set_size, std::vector<double> rewards,
                   std::vector<int> next_states)
    : num_states_(num_states),
      num_items_(num_items),
      max_set_size_(max_set_size),
      indexer_(num_items, max_set_size),
      rewards_(std::move(rewards)),
      next_states_(std::move(next_states)) {
  if (num_states_ <= 0) throw ValidationError("TableMdp: num_states must be positive");
  const size_t cells = static_cast<size_t>(num_states_) * static_cast<size_t>(indexer_.count());
  if (rewards_.size() != cells || next_states_.size() != cells) {
    throw ValidationError("TableMdp: table size must be num_states x num_actions");
  }
  for (int next : next_states_) {
    if (next < -1 || next >= num_states_) {
      throw ValidationError("TableMdp: next state out of range");
    }
  }
}

int TableMdp::cell(int state, const Action& w) const {
  if (state < 0 || state >= num_states_) throw ValidationError("TableMdp: state out of range");
  return state * indexer_.count() + indexer_.index_of(w);
}

double TableMdp::reward(int state, const Action& w) const { return rewards_[cell(state, w)]; }

void TableMdp::transitions(int state, const Action& w, std::vector<Transition>& out) const {
  out.clear();
  const int next = next_states_[cell(state, w)];
  if (next >= 0) out.push_back(Transition{next, 1.0});
}

int TableMdp::next_state_of(int state, const Action& w) const {
  return next_states_[cell(state, w)];
}

TableMdp build_counterexample() {
  const int S = 3, n = 3, k = 2;
  const std::vector<Action> actions = enumerate_actions(n, k);
  std::vector<double> rewards(S * actions.size(), 0.0);
  std::vector<int> next(S * actions.size(), -1);
  for (int s = 0; s < S; ++s) {
    for (size_t a = 0; a < actions.size(); ++a) {
      const Action& w = actions[a];
      int item_sum = 0;
      for (int item : w) item_sum += item + 1;
      rewards[s * actions.size() + a] = (s + 1) * item_sum;
      if (w.empty()) {
        next[s * actions.size() + a] = s;  // idle: no reward, stay put
      } else if (w.size() == 1) {
        next[s * actions.size() + a] = w[0];
      } else {
        // The pair {a, b} leads to the state complementary to it.
        next[s * actions.size() + a] = 3 - w[0] - w[1];
      }
    }
  }
  return TableMdp(S, n, k, std::move(rewards), std::move(next));
}

}  // namespace oneshot
