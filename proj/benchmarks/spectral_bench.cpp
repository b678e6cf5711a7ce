#include <benchmark/benchmark.h>

#include "dlab/constructions.hpp"
#include "dlab/form.hpp"
#include "dlab/heat.hpp"
#include "dlab/spectrum.hpp"

using namespace dlab;

namespace {

FormMatrix lattice_form(int d, int r) {
  const auto section = lattice_section(d, r, BoundaryMode::Dirichlet);
  return FormMatrix(section.graph, power_measure(section.graph.size(), 1.0));
}

}  // namespace

static void BM_Assemble(benchmark::State& state) {
  const auto section = lattice_section(3, static_cast<int>(state.range(0)), BoundaryMode::Dirichlet);
  const auto ms = MeasureSpace::uniform(section.graph.size(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(section.graph, ms));
  state.counters["n"] = static_cast<double>(section.graph.size());
}
BENCHMARK(BM_Assemble)->Arg(4)->Arg(8)->Arg(12);

static void BM_EigensolveDense(benchmark::State& state) {
  const auto fm = lattice_form(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigensolve(fm));
  state.counters["n"] = static_cast<double>(fm.size());
}
BENCHMARK(BM_EigensolveDense)->Arg(5)->Arg(10)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_EigensolveKrylov(benchmark::State& state) {
  const auto fm = lattice_form(2, static_cast<int>(state.range(0)));
  EigenOptions opt;
  opt.force_krylov = true;
  for (auto _ : state) benchmark::DoNotOptimize(eigensolve(fm, 32, opt));
  state.counters["n"] = static_cast<double>(fm.size());
}
BENCHMARK(BM_EigensolveKrylov)->Arg(5)->Arg(10)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_HeatKernel(benchmark::State& state) {
  const auto fm = lattice_form(2, static_cast<int>(state.range(0)));
  const auto spec = eigensolve(fm);
  for (auto _ : state) benchmark::DoNotOptimize(heat_kernel(spec, fm.measure(), 1.0));
  state.counters["n"] = static_cast<double>(fm.size());
}
BENCHMARK(BM_HeatKernel)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
