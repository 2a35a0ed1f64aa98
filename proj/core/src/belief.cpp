#include "oneshot/belief.hpp"

#include <cmath>

#include "oneshot/errors.hpp"

namespace oneshot {

Belief::Belief(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ValidationError("Belief: at least one type required");
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
      throw ValidationError("Belief: weights must lie in [0,1]");
    }
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-12) throw ValidationError("Belief: weights must sum to 1 within 1e-12");
}

Belief Belief::uniform(int num_types) {
  if (num_types <= 0) throw ValidationError("Belief::uniform: positive type count required");
  return Belief(std::vector<double>(static_cast<size_t>(num_types), 1.0 / num_types));
}

Belief Belief::vertex(int num_types, int type) {
  if (type < 0 || type >= num_types) throw ValidationError("Belief::vertex: type out of range");
  std::vector<double> w(static_cast<size_t>(num_types), 0.0);
  w[static_cast<size_t>(type)] = 1.0;
  return Belief(std::move(w));
}

double Belief::l1_distance(const Belief& other) const {
  if (other.num_types() != num_types()) throw ValidationError("l1_distance: dimension mismatch");
  double d = 0.0;
  for (size_t i = 0; i < weights_.size(); ++i) d += std::fabs(weights_[i] - other.weights_[i]);
  return d;
}

double mixture_choice_prob(const UserTypeModel& model, const Belief& c, const Action& w, int item) {
  if (c.num_types() != model.num_types()) throw ValidationError("mixture_choice_prob: belief/model dimension mismatch");
  double p = 0.0;
  for (int m = 0; m < model.num_types(); ++m) p += c[m] * model.choice_prob(m, w, item);
  return p;
}

double mixture_continuation_prob(const UserTypeModel& model, const Belief& c, const Action& w) {
  if (c.num_types() != model.num_types()) throw ValidationError("mixture_continuation_prob: belief/model dimension mismatch");
  double p = 0.0;
  for (int m = 0; m < model.num_types(); ++m) p += c[m] * model.continuation_prob(m, w);
  return p;
}

Belief posterior(const UserTypeModel& model, const Belief& c, const Action& w, int item) {
  if (c.num_types() != model.num_types()) throw ValidationError("posterior: belief/model dimension mismatch");
  std::vector<double> numer(static_cast<size_t>(model.num_types()));
  double total = 0.0;
  for (int m = 0; m < model.num_types(); ++m) {
    numer[static_cast<size_t>(m)] = c[m] * model.choice_prob(m, w, item);
    total += numer[static_cast<size_t>(m)];
  }
  if (total <= 0.0) {
    throw ValidationError("posterior: observation has zero probability under this belief");
  }
  for (double& v : numer) v /= total;
  return Belief(std::move(numer));
}

BeliefNet BeliefNet::build(int num_types, int resolution, uint64_t max_points) {
  if (num_types < 1) throw ValidationError("BeliefNet: positive type count required");
  if (resolution < 1) throw ValidationError("BeliefNet: positive resolution required");
  // C(resolution + num_types - 1, num_types - 1) grid points.
  uint64_t expected = 1;
  for (int i = 1; i <= num_types - 1; ++i) {
    expected = expected * static_cast<uint64_t>(resolution + i) / static_cast<uint64_t>(i);
  }
  if (expected > max_points) {
    throw GuardError("BeliefNet: grid would have " + std::to_string(expected) +
                     " points, above the cap of " + std::to_string(max_points));
  }

  BeliefNet net;
  net.num_types_ = num_types;
  net.resolution_ = resolution;
  net.points_.reserve(expected);
  net.compositions_.reserve(expected);

  // Enumerate compositions of `resolution` into num_types parts in
  // lexicographic order, from (0,...,0,r) up to (r,0,...,0).
  std::vector<int> comp(static_cast<size_t>(num_types), 0);
  comp.back() = resolution;
  while (true) {
    std::vector<double> weights(static_cast<size_t>(num_types));
    for (int i = 0; i < num_types; ++i) {
      weights[static_cast<size_t>(i)] = static_cast<double>(comp[static_cast<size_t>(i)]) / resolution;
    }
    net.index_.emplace(comp, static_cast<int>(net.points_.size()));
    net.compositions_.push_back(comp);
    net.points_.emplace_back(std::move(weights));

    // Lexicographic successor: move one unit from the rightmost nonzero
    // position (past index 0) to its left neighbor, and dump that position's
    // remainder into the last slot (the lex-smallest tail arrangement).
    int last = num_types - 1;
    while (last >= 1 && comp[static_cast<size_t>(last)] == 0) --last;
    if (last < 1) break;  // all mass at index 0: this was the maximum
    const int moved = comp[static_cast<size_t>(last)];
    comp[static_cast<size_t>(last)] = 0;
    comp[static_cast<size_t>(last) - 1] += 1;
    comp[static_cast<size_t>(num_types) - 1] += moved - 1;
  }
  return net;
}

int BeliefNet::index_of_composition(const std::vector<int>& composition) const {
  const auto it = index_.find(composition);
  if (it == index_.end()) throw ValidationError("BeliefNet: unknown composition");
  return it->second;
}

int BeliefNet::snap(const Belief& c) const {
  if (c.num_types() != num_types_) throw ValidationError("BeliefNet::snap: dimension mismatch");
  int best = 0;
  double best_dist = points_.front().l1_distance(c);
  for (int i = 1; i < size(); ++i) {
    const double d = points_[static_cast<size_t>(i)].l1_distance(c);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

}  // namespace oneshot
