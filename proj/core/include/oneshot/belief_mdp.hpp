#pragma once

#include <vector>

#include "oneshot/belief.hpp"
#include "oneshot/set_action_mdp.hpp"
#include "oneshot/user_model.hpp"

namespace oneshot {

// The discretized belief MDP. States are the grid points of a BeliefNet;
// playing item set w at belief c earns the continuation probability
// sum_l p(l|c,w) as expected immediate reward (each click is worth 1), and
// moves, for each item l with positive mixture probability, with mass
// p(l|c,w) to the grid point nearest the Bayes posterior. The remaining mass
// terminates.
//
// The whole transition structure is precomputed at construction, so sweeps
// and simulations afterwards are pure table lookups and the exact, greedy and
// simple-greedy operators all see bit-identical Q arithmetic.
class BeliefMdpAdapter : public SetActionMdp {
 public:
  BeliefMdpAdapter(UserTypeModel model, BeliefNet net, int max_set_size,
                   uint64_t table_cap = 50'000'000);

  int state_count() const override { return net_.size(); }
  int item_count() const override { return model_.num_items(); }
  int max_set_size() const override { return indexer_.max_set_size(); }
  double reward(int state, const Action& w) const override;
  void transitions(int state, const Action& w, std::vector<Transition>& out) const override;

  const UserTypeModel& model() const { return model_; }
  const BeliefNet& net() const { return net_; }
  const ActionIndexer& indexer() const { return indexer_; }

  // Index-based fast path used by the simulator: where does a click on
  // `item` at grid state `state` under display `w` lead?
  int next_state_of(int state, const Action& w, int item) const;

 private:
  UserTypeModel model_;
  BeliefNet net_;
  ActionIndexer indexer_;
  std::vector<double> rewards_;            // [state * A + action]
  std::vector<uint32_t> offsets_;          // CSR offsets into transitions_
  std::vector<Transition> transitions_;    // per (state, action): one entry per clickable item
  std::vector<int> clicked_item_;          // aligned with transitions_: which item was clicked
};

}  // namespace oneshot
