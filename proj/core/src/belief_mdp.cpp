#include "oneshot/belief_mdp.hpp"

#include "oneshot/errors.hpp"

namespace oneshot {

BeliefMdpAdapter::BeliefMdpAdapter(UserTypeModel model, BeliefNet net, int max_set_size,
                                   uint64_t table_cap)
    : model_(std::move(model)),
      net_(std::move(net)),
      indexer_(model_.num_items(), max_set_size) {
  if (net_.num_types() != model_.num_types()) {
    throw ValidationError("BeliefMdpAdapter: net and model disagree on type count");
  }
  const uint64_t cells = static_cast<uint64_t>(net_.size()) * static_cast<uint64_t>(indexer_.count());
  if (cells > table_cap) {
    throw GuardError("BeliefMdpAdapter: table would have " + std::to_string(cells) +
                     " (state, action) cells, above the cap of " + std::to_string(table_cap));
  }

  const int S = net_.size();
  const int A = indexer_.count();
  rewards_.assign(static_cast<size_t>(S) * static_cast<size_t>(A), 0.0);
  offsets_.assign(static_cast<size_t>(S) * static_cast<size_t>(A) + 1, 0);
  transitions_.reserve(static_cast<size_t>(S) * static_cast<size_t>(A));

  for (int s = 0; s < S; ++s) {
    const Belief& c = net_.point(s);
    for (int a = 0; a < A; ++a) {
      const Action& w = indexer_.at(a);
      double continuation = 0.0;
      for (int item : w) {
        const double p = mixture_choice_prob(model_, c, w, item);
        if (p > 0.0) {
          continuation += p;
          const int next = net_.snap(posterior(model_, c, w, item));
          transitions_.push_back(Transition{next, p});
          clicked_item_.push_back(item);
        }
      }
      rewards_[static_cast<size_t>(s) * static_cast<size_t>(A) + static_cast<size_t>(a)] = continuation;
      offsets_[static_cast<size_t>(s) * static_cast<size_t>(A) + static_cast<size_t>(a) + 1] =
          static_cast<uint32_t>(transitions_.size());
    }
  }
}

double BeliefMdpAdapter::reward(int state, const Action& w) const {
  if (state < 0 || state >= net_.size()) throw ValidationError("reward: state out of range");
  const int a = indexer_.index_of(w);
  return rewards_[static_cast<size_t>(state) * static_cast<size_t>(indexer_.count()) + static_cast<size_t>(a)];
}

void BeliefMdpAdapter::transitions(int state, const Action& w, std::vector<Transition>& out) const {
  out.clear();
  if (state < 0 || state >= net_.size()) throw ValidationError("transitions: state out of range");
  const int a = indexer_.index_of(w);
  const size_t cell = static_cast<size_t>(state) * static_cast<size_t>(indexer_.count()) + static_cast<size_t>(a);
  out.insert(out.end(), transitions_.begin() + offsets_[cell], transitions_.begin() + offsets_[cell + 1]);
}

int BeliefMdpAdapter::next_state_of(int state, const Action& w, int item) const {
  const int a = indexer_.index_of(w);
  const size_t cell = static_cast<size_t>(state) * static_cast<size_t>(indexer_.count()) + static_cast<size_t>(a);
  for (uint32_t i = offsets_[cell]; i < offsets_[cell + 1]; ++i) {
    if (clicked_item_[i] == item) return transitions_[i].next_state;
  }
  throw ValidationError("next_state_of: item has zero click probability at this state");
}

}  // namespace oneshot
