#include <benchmark/benchmark.h>

#include <random>

#include "lgnv/cnf.hpp"
#include "lgnv/evaluator.hpp"
#include "lgnv/oracle.hpp"
#include "lgnv/property.hpp"

using namespace lgnv;

namespace {

FeatureSchema bench_schema(std::uint32_t cats) {
  std::vector<Feature> f;
  f.push_back(NumericFeature{"age", 6, equal_width_thresholds(0, 1, 6), 0.0, 1.0});
  for (std::uint32_t i = 0; i < cats; ++i)
    f.push_back(CategoricalFeature{"c" + std::to_string(i), 3, i == 0, {}});
  return FeatureSchema(std::move(f));
}

void BM_EncodeNetwork(benchmark::State& state) {
  const auto width = static_cast<std::uint32_t>(state.range(0));
  const Netlist net = random_netlist(64, {width, width, width, 2 * 64}, 2, 64, 1);
  for (auto _ : state) {
    CnfBuilder cnf;
    auto in = cnf.new_vars(64);
    benchmark::DoNotOptimize(encode_network(cnf, net, in));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(net.num_gates()));
}
BENCHMARK(BM_EncodeNetwork)->Arg(256)->Arg(1024)->Arg(4096);

void BM_SortBlock(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    CnfBuilder cnf;
    auto in = cnf.new_vars(n);
    benchmark::DoNotOptimize(sort_block(cnf, in));
  }
}
BENCHMARK(BM_SortBlock)->RangeMultiplier(4)->Range(16, 4096);

void BM_BuildQuery(benchmark::State& state) {
  const FeatureSchema schema = bench_schema(8);
  const auto block = static_cast<std::uint32_t>(state.range(0));
  const Netlist net = random_netlist(schema.width(), {512, 512, 2 * block}, 2, block, 3);
  for (auto _ : state) {
    auto q = build_query({&net, &schema, QueryMode::Fair, 1, Rational(3, 4)});
    benchmark::DoNotOptimize(q.formula.clauses.size());
  }
}
BENCHMARK(BM_BuildQuery)->Arg(16)->Arg(64)->Arg(256);

void BM_Forward(benchmark::State& state) {
  const Netlist net = random_netlist(128, {2048, 2048, 2048, 200}, 2, 100, 5);
  std::mt19937_64 rng(1);
  Bits x(128);
  for (auto& b : x) b = rng() & 1u;
  for (auto _ : state) benchmark::DoNotOptimize(forward(net, x));
}
BENCHMARK(BM_Forward);

void BM_BruteForceVerify(benchmark::State& state) {
  const FeatureSchema schema = bench_schema(static_cast<std::uint32_t>(state.range(0)));
  const Netlist net = random_netlist(schema.width(), {8, 8, 4}, 2, 2, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_force_verify(net, schema, Mode::Robust, 1, Rational(1, 2)));
}
BENCHMARK(BM_BruteForceVerify)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
