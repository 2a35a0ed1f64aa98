#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "oneshot/actions.hpp"
#include "oneshot/errors.hpp"
#include "oneshot/rng.hpp"
#include "oneshot/user_model.hpp"

using namespace oneshot;

namespace {

UserTypeModel random_ratio_model(Rng& rng, int num_types, int num_items) {
  std::vector<std::vector<double>> scores(static_cast<size_t>(num_types));
  std::vector<double> terms(static_cast<size_t>(num_types));
  for (int m = 0; m < num_types; ++m) {
    scores[static_cast<size_t>(m)].resize(static_cast<size_t>(num_items));
    for (int l = 0; l < num_items; ++l) {
      scores[static_cast<size_t>(m)][static_cast<size_t>(l)] = rng.uniform(0.0, 1.0);
    }
    terms[static_cast<size_t>(m)] = rng.uniform(0.1, 1.0);
  }
  return UserTypeModel(std::move(scores), std::move(terms));
}

// Brute-force reference for assumption_B: enumerate every set of size <= k.
double brute_force_B(const UserTypeModel& model, int k) {
  double best = 0.0;
  for (const Action& w : enumerate_actions(model.num_items(), k)) {
    for (int m = 0; m < model.num_types(); ++m) {
      best = std::max(best, model.continuation_prob(m, w));
    }
  }
  return best > 0.0 ? 1.0 / best : std::numeric_limits<double>::infinity();
}

}  // namespace

TEST_CASE("choice probability: single item splits score against the no-click mass") {
  const UserTypeModel model({{0.5}}, {0.5});
  CHECK(model.choice_prob(0, {0}, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(model.continuation_prob(0, {0}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(model.assumption_B(1) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("choice probability: two displayed items share the denominator") {
  const UserTypeModel model({{0.3, 0.2}}, {0.5});
  const Action w = {0, 1};
  CHECK(model.choice_prob(0, w, 0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(model.choice_prob(0, w, 1) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(model.continuation_prob(0, w) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("items outside the display have probability exactly zero") {
  const UserTypeModel model({{0.3, 0.2}}, {0.5});
  CHECK(model.choice_prob(0, {1}, 0) == 0.0);
  CHECK(model.choice_prob(0, {}, 0) == 0.0);
}

TEST_CASE("empty display and all-zero scores terminate with certainty") {
  const UserTypeModel model({{0.3, 0.2}}, {0.5});
  CHECK(model.continuation_prob(0, {}) == 0.0);

  const UserTypeModel dead({{0.0, 0.0}}, {0.5});
  CHECK(dead.continuation_prob(0, {0, 1}) == 0.0);
  CHECK(std::isinf(dead.assumption_B(2)));
}

TEST_CASE("assumption_B on the three-equal-scores instance") {
  // Top-3 scores are 1,1,1 with no-click mass 0.5: the best continuation is
  // 3/3.5 = 6/7, so B = 7/6.
  const UserTypeModel model({{1.0, 1.0, 1.0, 0.25}}, {0.5});
  CHECK(model.assumption_B(3) == doctest::Approx(7.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("assumption_B top-k shortcut agrees with full enumeration") {
  Rng rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    const int M = 1 + static_cast<int>(rng.next_below(3));
    const int L = 2 + static_cast<int>(rng.next_below(11));  // up to 12 items
    const int k = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(std::min(L, 4))));
    const UserTypeModel model = random_ratio_model(rng, M, L);
    const double fast = model.assumption_B(k);
    const double slow = brute_force_B(model, k);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
  }
}

TEST_CASE("denominator monotonicity: adding items raises continuation, lowers each item's share") {
  Rng rng(55);
  const UserTypeModel model = random_ratio_model(rng, 2, 6);
  for (int m = 0; m < 2; ++m) {
    for (const Action& w : enumerate_actions(6, 2)) {
      for (int extra = 0; extra < 6; ++extra) {
        if (std::binary_search(w.begin(), w.end(), extra)) continue;
        Action bigger = w;
        bigger.insert(std::lower_bound(bigger.begin(), bigger.end(), extra), extra);
        CHECK(model.continuation_prob(m, bigger) >= model.continuation_prob(m, w) - 1e-15);
        for (int item : w) {
          CHECK(model.choice_prob(m, bigger, item) <= model.choice_prob(m, w, item) + 1e-15);
        }
      }
    }
  }
}

TEST_CASE("continuation probability is monotone and submodular in the display") {
  Rng rng(56);
  for (int trial = 0; trial < 8; ++trial) {
    const int L = 4 + static_cast<int>(rng.next_below(4));  // 4..7
    const UserTypeModel model = random_ratio_model(rng, 1, L);
    const std::vector<Action> all = enumerate_actions(L, L);
    // Exhaustive nested-pair scan over every (w_a subset w_b, extra) tuple.
    for (const Action& wb : all) {
      for (int extra = 0; extra < L; ++extra) {
        if (std::binary_search(wb.begin(), wb.end(), extra)) continue;
        Action wb_plus = wb;
        wb_plus.insert(std::lower_bound(wb_plus.begin(), wb_plus.end(), extra), extra);
        const double gain_b =
            model.continuation_prob(0, wb_plus) - model.continuation_prob(0, wb);
        CHECK(gain_b >= -1e-15);  // monotone
        for (const Action& wa : all) {
          if (wa.size() >= wb.size()) continue;
          if (!std::includes(wb.begin(), wb.end(), wa.begin(), wa.end())) continue;
          Action wa_plus = wa;
          wa_plus.insert(std::lower_bound(wa_plus.begin(), wa_plus.end(), extra), extra);
          const double gain_a =
              model.continuation_prob(0, wa_plus) - model.continuation_prob(0, wa);
          CHECK(gain_b <= gain_a + 1e-12);  // submodular
        }
      }
    }
  }
}

TEST_CASE("ratio models satisfy the choice-axiom decomposition to machine precision") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int M = 1 + static_cast<int>(rng.next_below(3));
    const int L = 3 + static_cast<int>(rng.next_below(4));
    const UserTypeModel model = random_ratio_model(rng, M, L);
    const IiaReport report = model.check_iia(3);
    CHECK(report.max_residual < 1e-12);
    CHECK(report.tuples_checked > 0);
  }
}

TEST_CASE("check_iia refuses oversized scans instead of sampling") {
  Rng rng(78);
  const UserTypeModel model = random_ratio_model(rng, 1, 12);
  CHECK_THROWS_AS(model.check_iia(6, /*work_cap=*/100), GuardError);
}

TEST_CASE("probability-table models can violate the choice axiom") {
  // Type 0 shown {0,1} picks each with 0.3, but alone picks either with 0.4:
  // 0.4 != 0.3 + 0.3*0.4, so the decomposition fails by 0.02.
  std::vector<std::vector<std::vector<double>>> table(1);
  const ActionIndexer indexer(2, 2);
  table[0].resize(static_cast<size_t>(indexer.count()));
  table[0][static_cast<size_t>(indexer.index_of({0}))] = {0.4};
  table[0][static_cast<size_t>(indexer.index_of({1}))] = {0.4};
  table[0][static_cast<size_t>(indexer.index_of({0, 1}))] = {0.3, 0.3};
  const UserTypeModel model = UserTypeModel::from_probability_table(1, 2, 2, table);

  CHECK_FALSE(model.ratio_form());
  CHECK(model.choice_prob(0, {0}, 0) == doctest::Approx(0.4));
  CHECK(model.choice_prob(0, {0, 1}, 1) == doctest::Approx(0.3));
  CHECK(model.continuation_prob(0, {0, 1}) == doctest::Approx(0.6));

  const IiaReport report = model.check_iia(2);
  CHECK(report.max_residual == doctest::Approx(0.02).epsilon(1e-9));
}

TEST_CASE("probability tables must leave strictly positive termination mass") {
  std::vector<std::vector<std::vector<double>>> table(1);
  const ActionIndexer indexer(2, 2);
  table[0].resize(static_cast<size_t>(indexer.count()));
  table[0][static_cast<size_t>(indexer.index_of({0}))] = {0.5};
  table[0][static_cast<size_t>(indexer.index_of({1}))] = {0.5};
  table[0][static_cast<size_t>(indexer.index_of({0, 1}))] = {0.5, 0.5};  // sums to 1
  CHECK_THROWS_AS(UserTypeModel::from_probability_table(1, 2, 2, table), ValidationError);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(UserTypeModel({{0.5}}, {0.0}), ValidationError);   // zero no-click mass
  CHECK_THROWS_AS(UserTypeModel({{-0.1}}, {0.5}), ValidationError);  // negative score
  CHECK_THROWS_AS(UserTypeModel({{0.5}, {0.5, 0.5}}, {0.5, 0.5}),
                  ValidationError);  // ragged rows
  CHECK_THROWS_AS(UserTypeModel({{0.5}}, {0.5, 0.5}), ValidationError);  // term count mismatch
}

TEST_CASE("model equality compares the full parameterization") {
  const UserTypeModel a({{0.3, 0.2}}, {0.5});
  const UserTypeModel b({{0.3, 0.2}}, {0.5});
  const UserTypeModel c({{0.3, 0.2}}, {0.6});
  CHECK(a == b);
  CHECK_FALSE(a == c);
}
