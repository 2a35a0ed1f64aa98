#pragma once

#include <vector>

#include "oneshot/actions.hpp"

namespace oneshot {

struct Transition {
  int next_state;
  double prob;
};

// A finite-state decision problem whose actions are item sets of bounded
// size. Transition mass may sum to less than 1; the deficit is the
// probability of terminating, an absorbing outcome worth 0.
class SetActionMdp {
 public:
  virtual ~SetActionMdp() = default;

  virtual int state_count() const = 0;
  virtual int item_count() const = 0;
  virtual int max_set_size() const = 0;

  // Expected immediate reward of playing item set w in `state`.
  virtual double reward(int state, const Action& w) const = 0;

  // Appends the next-state distribution for (state, w) to `out` (cleared
  // first). Total mass must be <= 1 + 1e-12.
  virtual void transitions(int state, const Action& w, std::vector<Transition>& out) const = 0;
};

// Per-state values.
struct ValueFunction {
  std::vector<double> values;

  static ValueFunction zero(int state_count) {
    return ValueFunction{std::vector<double>(static_cast<size_t>(state_count), 0.0)};
  }
  double operator[](int s) const { return values[static_cast<size_t>(s)]; }
  double& operator[](int s) { return values[static_cast<size_t>(s)]; }
  int size() const { return static_cast<int>(values.size()); }
};

// Per-state chosen actions.
struct Policy {
  std::vector<Action> actions;

  static Policy empty_actions(int state_count) {
    return Policy{std::vector<Action>(static_cast<size_t>(state_count))};
  }
  const Action& operator[](int s) const { return actions[static_cast<size_t>(s)]; }
  Action& operator[](int s) { return actions[static_cast<size_t>(s)]; }
  int size() const { return static_cast<int>(actions.size()); }
};

}  // namespace oneshot
