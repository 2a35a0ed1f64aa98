#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace oneshot {

// An action is a set of distinct item indices, stored strictly increasing.
using Action = std::vector<int>;

// Bitmask encoding of an action; items must be < 64.
uint64_t action_mask(const Action& w);

// Comparator for the canonical action order: smaller sets first,
// lexicographic within a size. Argmax ties throughout the planner resolve to
// the earliest action in this order, which makes policies bit-reproducible.
bool action_canonical_less(const Action& a, const Action& b);

// All item subsets of size 0..max_set_size over {0..num_items-1}, in
// canonical order (the empty set comes first).
std::vector<Action> enumerate_actions(int num_items, int max_set_size);

// Number of subsets of size 0..max_set_size, computed exactly.
uint64_t count_actions(int num_items, int max_set_size);

// Bidirectional map between actions and their position in the canonical
// enumeration.
class ActionIndexer {
 public:
  ActionIndexer(int num_items, int max_set_size);

  int count() const { return static_cast<int>(actions_.size()); }
  const Action& at(int index) const;
  const std::vector<Action>& all() const { return actions_; }
  int index_of(const Action& w) const;      // throws ValidationError if unknown
  int try_index_of(const Action& w) const;  // -1 if unknown
  int num_items() const { return num_items_; }
  int max_set_size() const { return max_set_size_; }

 private:
  int num_items_;
  int max_set_size_;
  std::vector<Action> actions_;
  std::unordered_map<uint64_t, int> by_mask_;
};

}  // namespace oneshot
