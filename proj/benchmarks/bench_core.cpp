#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rwer/engine.hpp"
#include "rwer/learner.hpp"
#include "rwer/solver.hpp"
#include "rwer/synthetic.hpp"

using namespace rwer;

namespace {

SparseGraph make_graph(std::size_t edges) {
  NodeId n = static_cast<NodeId>(std::max<std::size_t>(10, edges / 10));
  return synthetic::random_strongly_connected(n, edges - n, 7);
}

void BM_ApplyTransposed(benchmark::State& state) {
  SparseGraph g = make_graph(static_cast<std::size_t>(state.range(0)));
  TransitionMatrix t = row_normalize(g);
  std::vector<double> x(t.n, 1.0 / t.n), y(t.n);
  for (auto _ : state) {
    apply_transposed(t, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.m));
}
BENCHMARK(BM_ApplyTransposed)->Range(1 << 12, 1 << 18);

void BM_PowerIteration(benchmark::State& state) {
  SparseGraph g = make_graph(static_cast<std::size_t>(state.range(0)));
  TransitionMatrix t = row_normalize(g);
  RestartVector c = RestartVector::constant(t, 0.2);
  std::size_t iterations = 0;
  for (auto _ : state) {
    ScoreVector s = rwer_power_iteration(t, c, 0);
    iterations += s.iterations;
    benchmark::DoNotOptimize(s.r.data());
  }
  state.counters["inner_iters"] =
      benchmark::Counter(static_cast<double>(iterations), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_PowerIteration)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_AdjointSolve(benchmark::State& state) {
  SparseGraph g = make_graph(static_cast<std::size_t>(state.range(1)));
  TransitionMatrix t = row_normalize(g);
  RestartVector c = RestartVector::constant(t, 0.2);
  AdjointOperator op(t, c, 0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> rhs(t.n);
  for (auto& v : rhs) v = dist(rng);
  SolveConfig cfg;
  cfg.backend = state.range(0) == 0 ? SolveBackend::kGmres : SolveBackend::kRichardson;
  for (auto _ : state) {
    std::vector<double> x = solve_adjoint(op, rhs, cfg);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_AdjointSolve)
    ->ArgsProduct({{0, 1}, {1 << 14, 1 << 16}})
    ->Unit(benchmark::kMillisecond);

void BM_LearnEpoch(benchmark::State& state) {
  SparseGraph g = make_graph(static_cast<std::size_t>(state.range(0)));
  TransitionMatrix t = row_normalize(g);
  SupervisionInstance inst{0, {1, 2, 3}, {4, 5, 6}};
  LearnConfig cfg;
  cfg.b = 0.01;
  cfg.max_epochs = 1;
  cfg.grad_tol = 0.0;
  cfg.step_tol = 0.0;
  for (auto _ : state) {
    LearnResult res = sure_learn(t, inst, cfg);
    benchmark::DoNotOptimize(res.restart.data());
  }
}
BENCHMARK(BM_LearnEpoch)->Range(1 << 14, 1 << 17)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
