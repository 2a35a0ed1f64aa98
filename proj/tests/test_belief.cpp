#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "oneshot/belief.hpp"
#include "oneshot/errors.hpp"
#include "oneshot/rng.hpp"

using namespace oneshot;

namespace {

Belief random_belief(Rng& rng, int num_types) {
  std::vector<double> w(static_cast<size_t>(num_types));
  double sum = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - rng.next_double());  // Exp(1): normalized = Dirichlet(1,..,1)
    sum += x;
  }
  for (double& x : w) x /= sum;
  // Repair rounding so the constructor's 1e-12 sum check always holds.
  w.back() = 1.0 - std::accumulate(w.begin(), w.end() - 1, 0.0);
  return Belief(std::move(w));
}

UserTypeModel random_ratio_model(Rng& rng, int num_types, int num_items) {
  std::vector<std::vector<double>> scores(static_cast<size_t>(num_types));
  std::vector<double> terms(static_cast<size_t>(num_types));
  for (int m = 0; m < num_types; ++m) {
    scores[static_cast<size_t>(m)].resize(static_cast<size_t>(num_items));
    for (int l = 0; l < num_items; ++l) {
      scores[static_cast<size_t>(m)][static_cast<size_t>(l)] = rng.uniform(0.05, 1.0);
    }
    terms[static_cast<size_t>(m)] = rng.uniform(0.1, 1.0);
  }
  return UserTypeModel(std::move(scores), std::move(terms));
}

uint64_t binomial(int n, int k) {
  uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<uint64_t>(n - k + i) / static_cast<uint64_t>(i);
  return r;
}

}  // namespace

TEST_CASE("Belief constructor validates the simplex") {
  CHECK_NOTHROW(Belief({0.25, 0.75}));
  CHECK_THROWS_AS(Belief({0.5, 0.6}), ValidationError);           // sums above 1
  CHECK_THROWS_AS(Belief({1.1, -0.1}), ValidationError);          // out of range
  CHECK_THROWS_AS(Belief({-1e-9, 1.0 + 1e-9}), ValidationError);  // tiny negatives rejected
  CHECK_THROWS_AS(Belief({}), ValidationError);
}

TEST_CASE("uniform and vertex beliefs") {
  const Belief u = Belief::uniform(4);
  for (int m = 0; m < 4; ++m) CHECK(u[m] == doctest::Approx(0.25).epsilon(1e-15));
  const Belief v = Belief::vertex(3, 1);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 1.0);
  CHECK(v[2] == 0.0);
  CHECK(Belief({0.5, 0.5}).l1_distance(Belief({1.0, 0.0})) == doctest::Approx(1.0));
}

TEST_CASE("mixture choice probability averages the per-type probabilities") {
  // Per-type choice probabilities 0.2 and 0.4 under a 50/50 belief blend to 0.3.
  const UserTypeModel model({{0.2}, {0.4}}, {0.8, 0.6});
  const Belief c({0.5, 0.5});
  CHECK(model.choice_prob(0, {0}, 0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(model.choice_prob(1, {0}, 0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(mixture_choice_prob(model, c, {0}, 0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(mixture_continuation_prob(model, c, {0}) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("posterior reweights types by their likelihood of the click") {
  // Types click with probability 0.4 vs 0.1; from a 50/50 prior the click
  // posterior is (0.8, 0.2).
  const UserTypeModel model({{0.4}, {0.1}}, {0.6, 0.9});
  const Belief c({0.5, 0.5});
  const Belief post = posterior(model, c, {0}, 0);
  CHECK(post[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(post[1] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("posterior fixed points: vertices and identical types") {
  const UserTypeModel model({{0.4, 0.3}, {0.1, 0.2}}, {0.6, 0.9});
  const Belief vertex = Belief::vertex(2, 0);
  const Belief post = posterior(model, vertex, {0, 1}, 0);
  CHECK(post[0] == doctest::Approx(1.0).epsilon(1e-15));

  // Identical rows: observations carry no information.
  const UserTypeModel flat({{0.4, 0.3}, {0.4, 0.3}}, {0.5, 0.5});
  const Belief c({0.3, 0.7});
  const Belief post2 = posterior(flat, c, {0, 1}, 1);
  CHECK(post2[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(post2[1] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("posterior rejects zero-probability observations") {
  const UserTypeModel model({{0.0}, {0.5}}, {0.5, 0.5});
  const Belief sure = Belief::vertex(2, 0);  // type 0 never clicks item 0
  CHECK_THROWS_AS(posterior(model, sure, {0}, 0), ValidationError);
  // An item outside the display is impossible under any belief.
  const UserTypeModel two({{0.3, 0.4}, {0.2, 0.1}}, {0.5, 0.5});
  CHECK_THROWS_AS(posterior(two, Belief::uniform(2), {1}, 0), ValidationError);
}

TEST_CASE("posterior is normalized and satisfies the total-probability identity") {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const int M = 2 + static_cast<int>(rng.next_below(3));
    const int L = 3 + static_cast<int>(rng.next_below(3));
    const UserTypeModel model = random_ratio_model(rng, M, L);
    const Belief c = random_belief(rng, M);
    const Action w = {0, 1, 2};
    for (int item : w) {
      const Belief post = posterior(model, c, w, item);
      double sum = 0.0;
      for (int m = 0; m < M; ++m) sum += post[m];
      CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
    // sum_l p(l|c,w) posterior_l(m') = c(m') sum_l p(l|m',w) for every m'.
    for (int m = 0; m < M; ++m) {
      double lhs = 0.0;
      for (int item : w) {
        lhs += mixture_choice_prob(model, c, w, item) * posterior(model, c, w, item)[m];
      }
      const double rhs = c[m] * model.continuation_prob(m, w);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("net enumeration: two types at resolution two") {
  const BeliefNet net = BeliefNet::build(2, 2);
  REQUIRE(net.size() == 3);
  CHECK(net.point(0).weights() == std::vector<double>{0.0, 1.0});
  CHECK(net.point(1).weights() == std::vector<double>{0.5, 0.5});
  CHECK(net.point(2).weights() == std::vector<double>{1.0, 0.0});
  CHECK(net.epsilon() == doctest::Approx(1.0));  // 2 / resolution
}

TEST_CASE("net sizes follow the compositions count") {
  CHECK(BeliefNet::build(4, 10).size() == 286);  // C(13,3)
  CHECK(BeliefNet::build(1, 7).size() == 1);
  CHECK(BeliefNet::build(3, 4).size() == static_cast<int>(binomial(6, 2)));
  CHECK(BeliefNet::build(2, 6).size() == 7);
}

TEST_CASE("net compositions are lexicographically ordered and indexable") {
  const BeliefNet net = BeliefNet::build(3, 4);
  for (int i = 0; i < net.size(); ++i) {
    CHECK(net.index_of_composition(net.composition(i)) == i);
    if (i > 0) CHECK(net.composition(i - 1) < net.composition(i));
    int total = 0;
    for (int part : net.composition(i)) total += part;
    CHECK(total == 4);
  }
  CHECK_THROWS_AS(net.index_of_composition({4, 1, -1}), ValidationError);
}

TEST_CASE("snap picks the L1-closest point, ties to the lexicographically smaller") {
  const BeliefNet net = BeliefNet::build(2, 2);
  // (0.6, 0.4): distances 0.2 to (0.5,0.5) and 0.8 to (1,0).
  CHECK(net.snap(Belief({0.6, 0.4})) == 1);
  // (0.75, 0.25): equidistant at 0.5 between (0.5,0.5) and (1,0); the tie
  // goes to (0.5,0.5), which sorts first.
  CHECK(net.snap(Belief({0.75, 0.25})) == 1);
  CHECK(net.snap(Belief({0.9, 0.1})) == 2);
}

TEST_CASE("snapping a net point returns that point") {
  for (int M : {2, 3, 4}) {
    const BeliefNet net = BeliefNet::build(M, 5);
    for (int i = 0; i < net.size(); ++i) CHECK(net.snap(net.point(i)) == i);
  }
}

TEST_CASE("snap never moves a belief farther than the covering radius") {
  // The 2/r radius is a <=4-type guarantee: the grid's exact L1 covering
  // radius is 2*floor(M/2)*ceil(M/2)/(M*r), which crosses 2/r at M = 5.
  Rng rng(91);
  for (int M : {2, 3, 4}) {
    for (int r : {2, 3, 7}) {
      const BeliefNet net = BeliefNet::build(M, r);
      for (int trial = 0; trial < 50; ++trial) {
        const Belief c = random_belief(rng, M);
        const int idx = net.snap(c);
        CHECK(c.l1_distance(net.point(idx)) <= 2.0 / r + 1e-12);
      }
    }
  }
  // The four-type barycenter sits exactly at the radius when r = 2.
  const BeliefNet boundary = BeliefNet::build(4, 2);
  const Belief center = Belief::uniform(4);
  CHECK(center.l1_distance(boundary.point(boundary.snap(center))) == doctest::Approx(1.0));
}

TEST_CASE("net construction is guarded against explosive sizes") {
  CHECK_THROWS_AS(BeliefNet::build(10, 100, /*max_points=*/1000), GuardError);
  CHECK_THROWS_AS(BeliefNet::build(0, 5), ValidationError);
  CHECK_THROWS_AS(BeliefNet::build(2, 0), ValidationError);
}
