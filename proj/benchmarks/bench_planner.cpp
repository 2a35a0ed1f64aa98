// Microbenchmarks for the hot paths: net construction, adapter table
// builds, the three Bellman sweeps, belief snapping, and session rollout.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "oneshot/belief.hpp"
#include "oneshot/belief_mdp.hpp"
#include "oneshot/planner.hpp"
#include "oneshot/rng.hpp"
#include "oneshot/simulator.hpp"
#include "oneshot/user_model.hpp"

namespace {

using namespace oneshot;

UserTypeModel benchmark_model() {
  Rng rng(7);
  return sample_scores(rng, ScoreProtocol{});
}

const BeliefMdpAdapter& benchmark_adapter() {
  static const BeliefMdpAdapter adapter(benchmark_model(), BeliefNet::build(4, 10), 3);
  return adapter;
}

void BM_BuildNet(benchmark::State& state) {
  const int types = static_cast<int>(state.range(0));
  const int resolution = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BeliefNet::build(types, resolution));
  }
}
BENCHMARK(BM_BuildNet)->Args({4, 10})->Args({4, 20})->Args({6, 10});

void BM_AdapterBuild(benchmark::State& state) {
  const UserTypeModel model = benchmark_model();
  const BeliefNet net = BeliefNet::build(4, 10);
  for (auto _ : state) {
    BeliefMdpAdapter adapter(model, net, 3);
    benchmark::DoNotOptimize(adapter.state_count());
  }
}
BENCHMARK(BM_AdapterBuild);

void bellman_sweep(benchmark::State& state, BellmanOperator op) {
  const BeliefMdpAdapter& mdp = benchmark_adapter();
  const ValueFunction v0 = ValueFunction::zero(mdp.state_count());
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_operator(op, mdp, v0, 1.0));
  }
}
void BM_ExactSweep(benchmark::State& state) { bellman_sweep(state, BellmanOperator::kExact); }
void BM_GreedySweep(benchmark::State& state) { bellman_sweep(state, BellmanOperator::kGreedy); }
void BM_SimpleGreedySweep(benchmark::State& state) {
  bellman_sweep(state, BellmanOperator::kSimpleGreedy);
}
BENCHMARK(BM_ExactSweep);
BENCHMARK(BM_GreedySweep);
BENCHMARK(BM_SimpleGreedySweep);

void BM_Snap(benchmark::State& state) {
  const BeliefNet net = BeliefNet::build(4, 10);
  Rng rng(11);
  std::vector<Belief> beliefs;
  for (int i = 0; i < 256; ++i) {
    std::vector<double> w(4);
    double total = 0.0;
    for (double& x : w) {
      x = -std::log(1.0 - rng.next_double());
      total += x;
    }
    for (double& x : w) x /= total;
    beliefs.emplace_back(std::move(w));
  }
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.snap(beliefs[i++ & 255]));
  }
}
BENCHMARK(BM_Snap);

void BM_Session(benchmark::State& state) {
  const UserTypeModel model = benchmark_model();
  const BeliefNet net = BeliefNet::build(4, 10);
  const Belief prior = Belief::uniform(4);
  const SessionPolicy policy = [&](int, int, Rng& rng) {
    return sample_k_subset(rng, model.num_items(), 3);
  };
  Rng rng(99);
  SessionOptions options;
  options.adapter = &benchmark_adapter();
  for (auto _ : state) {
    const int true_type = static_cast<int>(rng.next_below(4));
    benchmark::DoNotOptimize(run_session(model, true_type, policy, net, prior, rng, options));
  }
}
BENCHMARK(BM_Session);

}  // namespace

BENCHMARK_MAIN();
