#include <benchmark/benchmark.h>

#include "conequant/cone_lie.hpp"
#include "conequant/sl2_pencil.hpp"
#include "conequant/spectral.hpp"

using namespace conequant;

namespace {

void BM_StructureConstants(benchmark::State& state) {
  const QuadraticForm q = QuadraticForm::standard_lorentzian(static_cast<std::size_t>(state.range(0)));
  const auto basis = build_spanning_set(q);
  for (auto _ : state) benchmark::DoNotOptimize(structure_constants(q, basis));
}

void BM_StructureConstantsSerial(benchmark::State& state) {
  const QuadraticForm q = QuadraticForm::standard_lorentzian(static_cast<std::size_t>(state.range(0)));
  const auto basis = build_spanning_set(q);
  for (auto _ : state) benchmark::DoNotOptimize(structure_constants_serial(q, basis));
}

void BM_AssemblePencil(benchmark::State& state) {
  const RadialBasis b = build_basis(1, static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_pencil(b, 1.0));
}

void BM_AssemblePencilSerial(benchmark::State& state) {
  const RadialBasis b = build_basis(1, static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_pencil_serial(b, 1.0));
}

void BM_DegeneracyTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(degeneracy_table(1.0, 5, static_cast<std::size_t>(state.range(0))));
}

void BM_DegeneracyTableSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(degeneracy_table_serial(1.0, 5, static_cast<std::size_t>(state.range(0))));
}

void BM_MonodromyScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(monodromy_scan(-1.2, -0.01, 0.001));
}

void BM_MonodromyScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(monodromy_scan_serial(-1.2, -0.01, 0.001));
}

}  // namespace

BENCHMARK(BM_StructureConstants)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StructureConstantsSerial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssemblePencil)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssemblePencilSerial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DegeneracyTable)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DegeneracyTableSerial)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonodromyScan)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonodromyScanSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
