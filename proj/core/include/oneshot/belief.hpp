#pragma once

#include <map>
#include <vector>

#include "oneshot/actions.hpp"
#include "oneshot/user_model.hpp"

namespace oneshot {

// A probability distribution over the user types: a point of the simplex.
class Belief {
 public:
  // Validates: every weight in [0,1] (tiny negative rounding is rejected,
  // not clamped) and the total within 1e-12 of 1.
  explicit Belief(std::vector<double> weights);

  static Belief uniform(int num_types);
  static Belief vertex(int num_types, int type);

  int num_types() const { return static_cast<int>(weights_.size()); }
  double operator[](int m) const { return weights_[static_cast<size_t>(m)]; }
  const std::vector<double>& weights() const { return weights_; }

  double l1_distance(const Belief& other) const;
  bool operator==(const Belief& other) const { return weights_ == other.weights_; }

 private:
  std::vector<double> weights_;
};

// Type-marginal probability that a user with belief c picks item `item` from
// the displayed set w:  p(l|c,w) = sum_m c(m) p(l|m,w).
double mixture_choice_prob(const UserTypeModel& model, const Belief& c, const Action& w, int item);

// Sum of mixture choice probabilities over w (the belief-level continuation
// probability).
double mixture_continuation_prob(const UserTypeModel& model, const Belief& c, const Action& w);

// Bayes update after observing that a c-distributed user picked `item` from
// w:  c'(m) = p(item|m,w) c(m) / p(item|c,w). Throws ValidationError when the
// observation has zero probability under c; callers must never feed
// impossible observations (silent renormalization would mask bugs).
Belief posterior(const UserTypeModel& model, const Belief& c, const Action& w, int item);

// Finite grid over the simplex: all beliefs whose weights are integer
// multiples of 1/resolution, in lexicographic order of the integer
// compositions. Covers the simplex within L1 distance 2/resolution, so it is
// an epsilon-net with epsilon = 2/resolution.
class BeliefNet {
 public:
  static BeliefNet build(int num_types, int resolution, uint64_t max_points = 2'000'000);

  int num_types() const { return num_types_; }
  int resolution() const { return resolution_; }
  int size() const { return static_cast<int>(points_.size()); }
  const Belief& point(int index) const { return points_[static_cast<size_t>(index)]; }
  const std::vector<Belief>& points() const { return points_; }
  const std::vector<int>& composition(int index) const { return compositions_[static_cast<size_t>(index)]; }
  double epsilon() const { return 2.0 / resolution_; }

  // Index of a grid point given its integer composition; throws if absent.
  int index_of_composition(const std::vector<int>& composition) const;

  // Index of the L1-closest grid point; ties resolve to the lexicographically
  // smallest point, so snapping is deterministic. Snapping a grid point
  // returns that point.
  int snap(const Belief& c) const;

 private:
  BeliefNet() = default;
  int num_types_ = 0;
  int resolution_ = 0;
  std::vector<Belief> points_;
  std::vector<std::vector<int>> compositions_;
  std::map<std::vector<int>, int> index_;
};

}  // namespace oneshot
