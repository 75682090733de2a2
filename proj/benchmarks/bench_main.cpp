#include <benchmark/benchmark.h>

#include <complex>
#include <numbers>

#include "qcircle/operator_lab.hpp"
#include "qcircle/qmath.hpp"
#include "qcircle/states.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

void BM_Theta3(benchmark::State& state) {
  const std::complex<double> z{0.3, 0.5 / kPi};
  const std::complex<double> tau{0.0, 1.0 / kPi};
  for (auto _ : state) benchmark::DoNotOptimize(qcircle::theta3(z, tau));
}
BENCHMARK(BM_Theta3);

void BM_NormSquared(benchmark::State& state) {
  const double q = static_cast<double>(state.range(0)) / 10.0;
  const qcircle::StateLabel label{1.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(qcircle::norm_squared(label, {q}));
}
BENCHMARK(BM_NormSquared)->Arg(3)->Arg(5)->Arg(10)->Arg(20)->Arg(50);

void BM_Overlap(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcircle::overlap({1.0, 0.2}, {0.5, 2.0}, {0.5}));
}
BENCHMARK(BM_Overlap);

void BM_DistPhi512(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcircle::dist_phi({1.0, kPi}, {0.5}, 512));
}
BENCHMARK(BM_DistPhi512)->Unit(benchmark::kMillisecond);

void BM_DistJ(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcircle::dist_j({2.0, 0.0}, {0.5}));
}
BENCHMARK(BM_DistJ);

void BM_EigenResidual(benchmark::State& state) {
  const int half_width = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcircle::eigen_residual({1.0, 0.0}, {0.5}, half_width));
}
BENCHMARK(BM_EigenResidual)->Arg(32)->Arg(64)->Arg(128);

void BM_CommutatorResidual(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcircle::commutator_residual(0.5, qcircle::kAlgebraHalfWidth));
}
BENCHMARK(BM_CommutatorResidual);

}  // namespace
BENCHMARK_MAIN();
