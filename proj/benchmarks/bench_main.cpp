#include <benchmark/benchmark.h>

#include <cstdint>

#include <fiberwalk/basis.hpp>
#include <fiberwalk/fiber.hpp>
#include <fiberwalk/gof.hpp>
#include <fiberwalk/model.hpp>
#include <fiberwalk/rng.hpp>

namespace {

using namespace fiberwalk;

IntVector iv(std::initializer_list<long> xs) {
  IntVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

IntMatrix random_square(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a.at(i, j) = static_cast<long>(rng.below(19)) - 9;
  return a;
}

void bm_hermite_normal_form(benchmark::State& state) {
  const auto a = random_square(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(hermite_normal_form(a));
}

void bm_lattice_kernel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = independence_design(n, n).design;
  for (auto _ : state) benchmark::DoNotOptimize(lattice_kernel_basis(a));
}

void bm_toric_basis(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = independence_design(n, n).design;
  for (auto _ : state) benchmark::DoNotOptimize(toric_markov_basis(a));
}

void bm_enumerate_fiber(benchmark::State& state) {
  const auto spec = independence_design(3, 3);
  const Table u(spec.shape(), iv({1, 1, 1, 1, 1, 1, 1, 1, 1}));
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_fiber(spec.design, u, 1000));
}

void bm_walk_steps(benchmark::State& state) {
  const auto spec = independence_design(3, 3);
  const auto basis = independence_basis(3, 3);
  const Table u(spec.shape(), iv({1, 1, 1, 1, 1, 1, 1, 1, 1}));
  WalkConfig cfg;
  cfg.steps = 10000;
  cfg.burn_in = 0;
  cfg.thin = cfg.steps;
  cfg.target = static_cast<Target>(state.range(0));
  cfg.seed = 42;
  for (auto _ : state)
    benchmark::DoNotOptimize(walk_visit(spec, basis, u, cfg,
                                        [](const IntVector&) {}));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(cfg.steps));
}

void bm_walk_steps_dynamic(benchmark::State& state) {
  const auto spec = p1_design(5, Reciprocity::constant);
  const Table u = graph_to_table(Graph(
      5, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {0, 3}, {3, 0},
          {4, 0}, {2, 4}, {3, 1}}));
  MarkovBasis empty;
  empty.design = spec.design;
  WalkConfig cfg;
  cfg.steps = 10000;
  cfg.burn_in = 0;
  cfg.thin = cfg.steps;
  cfg.proposal = ProposalKind::dynamic_p1;
  cfg.seed = 42;
  for (auto _ : state)
    benchmark::DoNotOptimize(walk_visit(spec, empty, u, cfg,
                                        [](const IntVector&) {}));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(cfg.steps));
}

void bm_fit_mle(benchmark::State& state) {
  const auto spec = p1_design(4, Reciprocity::constant);
  const Table u =
      graph_to_table(Graph(4, {{0, 1}, {0, 3}, {1, 0}, {2, 0}, {2, 3},
                               {3, 2}}));
  for (auto _ : state) benchmark::DoNotOptimize(fit_mle(spec, u));
}

void bm_exact_pvalue_enumerated(benchmark::State& state) {
  const auto spec = independence_design(3, 3);
  const Table u(spec.shape(), iv({2, 3, 4, 0, 3, 4, 0, 0, 1}));
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_pvalue_enumerated(spec, u, 10000));
}

void bm_exact_pvalue_mc(benchmark::State& state) {
  const auto spec = independence_design(3, 3);
  const auto basis = independence_basis(3, 3);
  const Table u(spec.shape(), iv({2, 3, 4, 0, 3, 4, 0, 0, 1}));
  WalkConfig cfg;
  cfg.steps = 10000;
  cfg.burn_in = 1000;
  cfg.seed = 42;
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_pvalue_mc(spec, u, basis, cfg));
}

BENCHMARK(bm_hermite_normal_form)->Arg(6)->Arg(10);
BENCHMARK(bm_lattice_kernel)->Arg(3)->Arg(5);
BENCHMARK(bm_toric_basis)->Arg(3)->Arg(4);
BENCHMARK(bm_enumerate_fiber);
BENCHMARK(bm_walk_steps)
    ->Arg(static_cast<int>(Target::uniform))
    ->Arg(static_cast<int>(Target::hypergeometric));
BENCHMARK(bm_walk_steps_dynamic);
BENCHMARK(bm_fit_mle);
BENCHMARK(bm_exact_pvalue_enumerated);
BENCHMARK(bm_exact_pvalue_mc);

}  // namespace

BENCHMARK_MAIN();
