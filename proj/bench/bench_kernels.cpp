// Serial reference kernels against their OpenMP counterparts on workloads
// taken from the collision-avoidance system.

#include <benchmark/benchmark.h>

#include <random>

#include "alginv/algorithms.hpp"
#include "alginv/kernels.hpp"
#include "alginv/spec_io.hpp"

using namespace alginv;

namespace {

struct Workload {
  BuiltSystem sys;
  std::vector<Polynomial> components;
  std::vector<Polynomial> products;
  std::vector<Polynomial> basis;
  std::vector<kernels::CompiledPolynomial> compiled;
  std::vector<std::vector<double>> initial;
  std::vector<kernels::IntRow> matrix;
};

const Workload& workload() {
  static const Workload w = [] {
    Workload w{build_system(load_spec(std::filesystem::path(ALGINV_CORPUS_DIR) / "collision_avoidance.yaml"))};
    w.components = w.sys.templ->components();
    for (std::size_t i = 0; i + 1 < w.components.size(); i += 3)
      w.products.push_back(w.components[i] * w.components[i + 1]);
    w.basis = post(w.sys.precondition, *w.sys.templ, w.sys.field).invariant_ideal.groebner_basis();
    for (const auto& d : w.sys.field.drifts()) w.compiled.emplace_back(d);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 256; ++k) {
      std::vector<double> x(w.sys.field.dimension());
      for (auto& v : x) v = u(rng);
      w.initial.push_back(std::move(x));
    }
    std::uniform_int_distribution<int> c(-50, 50);
    for (int r = 0; r < 400; ++r) {
      kernels::IntRow row(400);
      for (auto& v : row) v = c(rng);
      w.matrix.push_back(std::move(row));
    }
    return w;
  }();
  return w;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_lie_derivatives(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::lie_derivatives(w.components, w.sys.field.drifts(), exec_of(state)));
}

void BM_normal_forms(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::normal_forms(w.products, w.basis, exec_of(state)));
}

void BM_integrate_rk4(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::integrate_rk4(w.compiled, w.initial, 1e-3, 1000, 0.0, exec_of(state)));
}

void BM_eliminate_column(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) {
    state.PauseTiming();
    auto rows = w.matrix;
    state.ResumeTiming();
    for (std::size_t col = 0; col < 8; ++col) kernels::eliminate_column(rows, col, col, exec_of(state));
    benchmark::DoNotOptimize(rows);
  }
}

}  // namespace

BENCHMARK(BM_lie_derivatives)->ArgName("omp")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_normal_forms)->ArgName("omp")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_integrate_rk4)->ArgName("omp")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eliminate_column)->ArgName("omp")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
