// Microbenchmarks for the hot paths: Bregman projections on large
// cardinality-based polymatroids, the sorted-prefix line search, greedy
// linear optimization, and matrix-tree marginals.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "polygame/counting.hpp"
#include "polygame/graph.hpp"
#include "polygame/inc_fix.hpp"
#include "polygame/mirror_map.hpp"
#include "polygame/mwu.hpp"
#include "polygame/submodular.hpp"
#include "polygame/vec.hpp"

namespace {

using namespace polygame;

SubmodularOracle sqrt_profile_oracle(int m) {
  std::vector<double> profile(m + 1, 0.0);
  for (int j = 1; j <= m; ++j) profile[j] = std::sqrt(static_cast<double>(j));
  return SubmodularOracle::cardinality(GroundSet(m), profile);
}

Vec random_target(int m, bool positive, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(positive ? 0.05 : -1.0, 2.0);
  Vec y(m);
  for (double& v : y) v = dist(rng);
  return y;
}

void bench_inc_fix_euclidean(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const SubmodularOracle f = sqrt_profile_oracle(m);
  const MirrorMap map = MirrorMap::euclidean();
  const Vec y = random_target(m, false, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inc_fix(f, map, y).point);
  }
}
// Tight-set detection works on 64-bit subset masks, so projections are
// benchmarked up to the largest supported ground set (m = 63).
BENCHMARK(bench_inc_fix_euclidean)->Arg(16)->Arg(32)->Arg(63);

void bench_inc_fix_entropy(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const SubmodularOracle f = sqrt_profile_oracle(m);
  const MirrorMap map = MirrorMap::entropy();
  const Vec y = random_target(m, true, 18);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inc_fix(f, map, y).point);
  }
}
BENCHMARK(bench_inc_fix_entropy)->Arg(16)->Arg(32)->Arg(63);

void bench_line_search_cardinality(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const SubmodularOracle f = sqrt_profile_oracle(m);
  const Vec x(m, 0.0);
  const Vec d = random_target(m, true, 19);
  for (auto _ : state) {
    benchmark::DoNotOptimize(line_search(f, x, d));
  }
}
BENCHMARK(bench_line_search_cardinality)->Arg(64)->Arg(1024);

void bench_greedy_linear_opt(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const SubmodularOracle f = sqrt_profile_oracle(m);
  const Vec w = random_target(m, false, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_linear_opt(f, w, /*maximize=*/false));
  }
}
BENCHMARK(bench_greedy_linear_opt)->Arg(64)->Arg(1024);

void bench_matrix_tree_marginals(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = Graph::complete(n);
  const CountingOracle oracle = CountingOracle::matrix_tree(g);
  const Vec lambda = random_target(g.edge_count(), true, 21);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.marginals(lambda));
  }
}
BENCHMARK(bench_matrix_tree_marginals)->Arg(6)->Arg(8)->Arg(10);

void bench_mwu_update(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Vec lambda(m, 1.0);
  const Vec loss = random_target(m, true, 22);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mwu_update(lambda, loss, 0.9, 2.0));
  }
}
BENCHMARK(bench_mwu_update)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
