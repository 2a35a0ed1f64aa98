#include "oneshot/user_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oneshot/errors.hpp"

namespace oneshot {

namespace {

void check_item_indices(const Action& w, int num_items) {
  int prev = -1;
  for (int item : w) {
    if (item < 0 || item >= num_items) throw ValidationError("action item index out of range");
    if (item <= prev) throw ValidationError("action items must be strictly increasing");
    prev = item;
  }
}

}  // namespace

UserTypeModel::UserTypeModel(std::vector<std::vector<double>> scores,
                             std::vector<double> termination_scores) {
  if (scores.empty()) throw ValidationError("UserTypeModel: at least one type required");
  if (scores.size() != termination_scores.size()) {
    throw ValidationError("UserTypeModel: scores and termination_scores disagree on type count");
  }
  const size_t items = scores.front().size();
  if (items == 0) throw ValidationError("UserTypeModel: at least one item required");
  for (const auto& row : scores) {
    if (row.size() != items) throw ValidationError("UserTypeModel: ragged score matrix");
    for (double s : row) {
      if (!(s >= 0.0) || !std::isfinite(s)) throw ValidationError("UserTypeModel: scores must be finite and >= 0");
    }
  }
  for (double p : termination_scores) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("UserTypeModel: termination scores must be finite and > 0");
  }
  num_types_ = static_cast<int>(scores.size());
  num_items_ = static_cast<int>(items);
  ratio_form_ = true;
  scores_ = std::move(scores);
  termination_scores_ = std::move(termination_scores);
}

UserTypeModel UserTypeModel::from_probability_table(
    int num_types, int num_items, int max_set_size,
    std::vector<std::vector<std::vector<double>>> table) {
  if (num_types <= 0 || num_items <= 0) throw ValidationError("probability table: positive dimensions required");
  if (max_set_size < 1) throw ValidationError("probability table: max_set_size must be >= 1");
  auto indexer = std::make_shared<const ActionIndexer>(num_items, max_set_size);
  if (static_cast<int>(table.size()) != num_types) {
    throw ValidationError("probability table: wrong number of types");
  }
  for (const auto& per_type : table) {
    if (static_cast<int>(per_type.size()) != indexer->count()) {
      throw ValidationError("probability table: one row per action required (canonical order)");
    }
    for (int a = 0; a < indexer->count(); ++a) {
      const Action& w = indexer->at(a);
      if (per_type[a].size() != w.size()) {
        throw ValidationError("probability table: row length must match action size");
      }
      double sum = 0.0;
      for (double p : per_type[a]) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("probability table: entries must be finite and >= 0");
        sum += p;
      }
      if (!(sum < 1.0)) throw ValidationError("probability table: row sums must be strictly below 1");
    }
  }
  UserTypeModel m;
  m.num_types_ = num_types;
  m.num_items_ = num_items;
  m.ratio_form_ = false;
  m.table_max_set_size_ = indexer->max_set_size();
  m.table_indexer_ = std::move(indexer);
  m.table_ = std::move(table);
  return m;
}

const std::vector<std::vector<double>>& UserTypeModel::scores() const {
  if (!ratio_form_) throw ValidationError("scores(): model is table-form");
  return scores_;
}

const std::vector<double>& UserTypeModel::termination_scores() const {
  if (!ratio_form_) throw ValidationError("termination_scores(): model is table-form");
  return termination_scores_;
}

double UserTypeModel::choice_prob(int type, const Action& w, int item) const {
  if (type < 0 || type >= num_types_) throw ValidationError("choice_prob: type index out of range");
  if (item < 0 || item >= num_items_) throw ValidationError("choice_prob: item index out of range");
  check_item_indices(w, num_items_);
  if (ratio_form_) {
    bool shown = false;
    double denom = termination_scores_[static_cast<size_t>(type)];
    for (int l : w) {
      denom += scores_[static_cast<size_t>(type)][static_cast<size_t>(l)];
      shown |= (l == item);
    }
    if (!shown) return 0.0;
    return scores_[static_cast<size_t>(type)][static_cast<size_t>(item)] / denom;
  }
  const int a = table_indexer_->try_index_of(w);
  if (a < 0) throw ValidationError("choice_prob: action not covered by the probability table");
  const auto& row = table_[static_cast<size_t>(type)][static_cast<size_t>(a)];
  for (size_t slot = 0; slot < w.size(); ++slot) {
    if (w[slot] == item) return row[slot];
  }
  return 0.0;
}

double UserTypeModel::continuation_prob(int type, const Action& w) const {
  if (type < 0 || type >= num_types_) throw ValidationError("continuation_prob: type index out of range");
  check_item_indices(w, num_items_);
  if (ratio_form_) {
    double sum = 0.0;
    double denom = termination_scores_[static_cast<size_t>(type)];
    for (int l : w) {
      const double s = scores_[static_cast<size_t>(type)][static_cast<size_t>(l)];
      sum += s;
      denom += s;
    }
    return sum == 0.0 ? 0.0 : sum / denom;
  }
  const int a = table_indexer_->try_index_of(w);
  if (a < 0) throw ValidationError("continuation_prob: action not covered by the probability table");
  const auto& row = table_[static_cast<size_t>(type)][static_cast<size_t>(a)];
  double sum = 0.0;
  for (double p : row) sum += p;
  return sum;
}

double UserTypeModel::assumption_B(int max_set_size) const {
  if (max_set_size < 1) throw ValidationError("assumption_B: max_set_size must be >= 1");
  double max_cont = 0.0;
  if (ratio_form_) {
    // The continuation probability S/(S+p) is increasing in the displayed
    // score sum S, so the per-type maximum is attained at the k largest
    // scores.
    const int k = std::min(max_set_size, num_items_);
    std::vector<double> row;
    for (int m = 0; m < num_types_; ++m) {
      row = scores_[static_cast<size_t>(m)];
      std::partial_sort(row.begin(), row.begin() + k, row.end(), std::greater<double>());
      double top = 0.0;
      for (int i = 0; i < k; ++i) top += row[static_cast<size_t>(i)];
      if (top > 0.0) {
        max_cont = std::max(max_cont, top / (top + termination_scores_[static_cast<size_t>(m)]));
      }
    }
  } else {
    if (max_set_size > table_max_set_size_) {
      throw ValidationError("assumption_B: max_set_size exceeds the probability table's");
    }
    for (int m = 0; m < num_types_; ++m) {
      for (int a = 0; a < table_indexer_->count(); ++a) {
        if (static_cast<int>(table_indexer_->at(a).size()) > max_set_size) continue;
        double sum = 0.0;
        for (double p : table_[static_cast<size_t>(m)][static_cast<size_t>(a)]) sum += p;
        max_cont = std::max(max_cont, sum);
      }
    }
  }
  if (max_cont == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / max_cont;
}

IiaReport UserTypeModel::check_iia(int max_set_size, uint64_t work_cap) const {
  if (max_set_size < 1) throw ValidationError("check_iia: max_set_size must be >= 1");
  const int k = std::min(max_set_size, num_items_);
  const uint64_t work = count_actions(num_items_, k) *
                        static_cast<uint64_t>(num_items_) * static_cast<uint64_t>(num_items_);
  if (work > work_cap) {
    throw GuardError("check_iia: exhaustive scan would need " + std::to_string(work) +
                     " evaluations, above the cap of " + std::to_string(work_cap));
  }
  // Table-form models cannot evaluate w + l' beyond their table's set size.
  const int w_cap = ratio_form_ ? k : std::min(k, table_max_set_size_ - 1);

  IiaReport report;
  Action extended;
  for (const Action& w : enumerate_actions(num_items_, w_cap)) {
    if (w.empty()) continue;  // no l in w: the identity is vacuous
    for (int extra = 0; extra < num_items_; ++extra) {
      if (std::binary_search(w.begin(), w.end(), extra)) continue;
      extended = w;
      extended.insert(std::upper_bound(extended.begin(), extended.end(), extra), extra);
      for (int m = 0; m < num_types_; ++m) {
        const double p_extra = choice_prob(m, extended, extra);
        for (int item : w) {
          const double lhs = choice_prob(m, w, item);
          const double rhs = choice_prob(m, extended, item) + p_extra * lhs;
          const double residual = std::fabs(lhs - rhs);
          ++report.tuples_checked;
          if (residual > report.max_residual) {
            report.max_residual = residual;
            report.type = m;
            report.w = w;
            report.item = item;
            report.extra_item = extra;
          }
        }
      }
    }
  }
  return report;
}

bool UserTypeModel::operator==(const UserTypeModel& other) const {
  return num_types_ == other.num_types_ && num_items_ == other.num_items_ &&
         ratio_form_ == other.ratio_form_ && scores_ == other.scores_ &&
         termination_scores_ == other.termination_scores_ && table_ == other.table_;
}

}  // namespace oneshot
