#include "oneshot/actions.hpp"

#include <algorithm>

#include "oneshot/errors.hpp"

namespace oneshot {

uint64_t action_mask(const Action& w) {
  uint64_t m = 0;
  for (int item : w) {
    if (item < 0 || item >= 64) throw ValidationError("action_mask: item index out of [0,64)");
    m |= uint64_t{1} << item;
  }
  return m;
}

bool action_canonical_less(const Action& a, const Action& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Action> enumerate_actions(int num_items, int max_set_size) {
  if (num_items < 0) throw ValidationError("enumerate_actions: negative item count");
  if (max_set_size < 0) throw ValidationError("enumerate_actions: negative set size");
  const int k = std::min(max_set_size, num_items);
  std::vector<Action> out;
  out.reserve(static_cast<size_t>(count_actions(num_items, k)));
  out.emplace_back();  // the empty set
  Action idx;
  for (int size = 1; size <= k; ++size) {
    idx.resize(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      out.push_back(idx);
      // next combination in lexicographic order
      int pos = size - 1;
      while (pos >= 0 && idx[pos] == num_items - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

uint64_t count_actions(int num_items, int max_set_size) {
  const int k = std::min(max_set_size, num_items);
  uint64_t total = 0;
  uint64_t choose = 1;  // C(num_items, 0)
  for (int size = 0; size <= k; ++size) {
    total += choose;
    choose = choose * static_cast<uint64_t>(num_items - size) / static_cast<uint64_t>(size + 1);
  }
  return total;
}

ActionIndexer::ActionIndexer(int num_items, int max_set_size)
    : num_items_(num_items),
      max_set_size_(std::min(max_set_size, num_items)),
      actions_(enumerate_actions(num_items, max_set_size)) {
  by_mask_.reserve(actions_.size() * 2);
  for (int i = 0; i < static_cast<int>(actions_.size()); ++i) {
    by_mask_.emplace(action_mask(actions_[i]), i);
  }
}

const Action& ActionIndexer::at(int index) const {
  if (index < 0 || index >= count()) throw ValidationError("ActionIndexer::at: index out of range");
  return actions_[static_cast<size_t>(index)];
}

int ActionIndexer::index_of(const Action& w) const {
  const int idx = try_index_of(w);
  if (idx < 0) throw ValidationError("ActionIndexer::index_of: unknown action");
  return idx;
}

int ActionIndexer::try_index_of(const Action& w) const {
  if (static_cast<int>(w.size()) > max_set_size_) return -1;
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] >= w[i + 1]) throw ValidationError("ActionIndexer: action items must be strictly increasing");
  }
  for (int item : w) {
    if (item < 0 || item >= num_items_) return -1;
  }
  const auto it = by_mask_.find(action_mask(w));
  return it == by_mask_.end() ? -1 : it->second;
}

}  // namespace oneshot
