#pragma once

#include <memory>
#include <string>
#include <vector>

#include "oneshot/actions.hpp"

namespace oneshot {

// Result of the choice-axiom residual scan: the largest deviation from the
// decomposition p(l|m,w) = p(l|m,w+l') + p(l'|m,w+l') * p(l|m,w), together
// with where it was attained.
struct IiaReport {
  double max_residual = 0.0;
  int type = -1;
  Action w;
  int item = -1;
  int extra_item = -1;
  uint64_t tuples_checked = 0;
};

// Per-type user choice model. A user of type m, shown the item set w, picks
// item l with probability
//
//     P(l | m, w) = score[m][l] / (sum_{l' in w} score[m][l'] + p_m)
//
// and terminates the session with the complementary probability. Items not
// shown have probability exactly 0. The ratio form is the primary
// representation; a raw probability table P(l|m,w) is accepted as an
// alternative constructor for generality and for constructing counterexamples
// that violate the choice axiom.
class UserTypeModel {
 public:
  // Ratio-form constructor. scores is indexed [type][item]; all entries must
  // be >= 0 and every termination score must be > 0.
  UserTypeModel(std::vector<std::vector<double>> scores, std::vector<double> termination_scores);

  // Raw-table constructor. table[m][a][slot] is the probability that a type-m
  // user shown action a (index in ActionIndexer(num_items, max_set_size)
  // order) picks the slot-th item of that action. Each row must sum to
  // strictly less than 1.
  static UserTypeModel from_probability_table(int num_types, int num_items, int max_set_size,
                                              std::vector<std::vector<std::vector<double>>> table);

  int num_types() const { return num_types_; }
  int num_items() const { return num_items_; }
  bool ratio_form() const { return ratio_form_; }

  // Scores are only available on ratio-form models.
  const std::vector<std::vector<double>>& scores() const;
  const std::vector<double>& termination_scores() const;

  // P(l | m, w); exactly 0 when l is not in w.
  double choice_prob(int type, const Action& w, int item) const;

  // Sum of choice probabilities over the items of w; the complement is the
  // probability that the session terminates on this round.
  double continuation_prob(int type, const Action& w) const;

  // Assumption "B": the largest continuation probability over all types and
  // all item sets of size <= max_set_size is 1/B. Returns +infinity when all
  // scores are zero (sessions always terminate). For ratio-form models the
  // per-type maximum is attained at the k highest-scoring items, so no subset
  // enumeration is needed; table models are enumerated.
  double assumption_B(int max_set_size) const;

  // Scans every (type, w, l in w, l' not in w) tuple for deviations from the
  // choice-axiom decomposition. |w| ranges up to max_set_size for ratio
  // models; up to max_set_size-1 for table models (w + l' must stay a valid
  // action). Refuses with GuardError when C(|L|,k) * |L|^2 exceeds the work
  // cap; exhaustiveness is never silently downgraded to sampling.
  IiaReport check_iia(int max_set_size, uint64_t work_cap = 10'000'000) const;

  bool operator==(const UserTypeModel& other) const;

 private:
  UserTypeModel() = default;

  int num_types_ = 0;
  int num_items_ = 0;
  bool ratio_form_ = true;
  std::vector<std::vector<double>> scores_;       // [type][item], ratio form
  std::vector<double> termination_scores_;        // [type], ratio form
  int table_max_set_size_ = 0;                    // table form
  std::shared_ptr<const ActionIndexer> table_indexer_;
  std::vector<std::vector<std::vector<double>>> table_;  // [type][action][slot]
};

}  // namespace oneshot
