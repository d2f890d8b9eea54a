#include <numbers>

#include <benchmark/benchmark.h>

#include "aqc/aqc.hpp"

using namespace aqc;

namespace {

const SplittingProfile kFig4 = FlatEnds{1.0, 2.0, -4.0, 4.0};

void BM_ProfileOperator(benchmark::State& st) {
  FockSpace s(int(st.range(0)), 1.0, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(profile_operator(s, kFig4));
}
BENCHMARK(BM_ProfileOperator)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ProfileOperatorSpectral(benchmark::State& st) {
  FockSpace s(int(st.range(0)), 1.0, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(profile_operator(s, kFig4, OperatorMethod::SpectralCalculus));
}
BENCHMARK(BM_ProfileOperatorSpectral)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Diagonalize(benchmark::State& st) {
  FockSpace s(int(st.range(0)), 1.0, 1.0);
  auto j = joint_hamiltonian(s, kFig4);
  for (auto _ : st) benchmark::DoNotOptimize(diagonalize(j.H_e));
}
BENCHMARK(BM_Diagonalize)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

// one full Fig. 4 point: both directions and all error measures
void BM_RunAqc(benchmark::State& st) {
  FockSpace s(256, 1.0, 1.0);
  BranchDynamics dyn(joint_hamiltonian(s, kFig4));
  auto psi = prepare_state(s, Coherent{-6.0}), phi = prepare_state(s, Coherent{6.0});
  for (auto _ : st) benchmark::DoNotOptimize(run_aqc(dyn, psi, phi, std::numbers::pi));
}
BENCHMARK(BM_RunAqc)->Unit(benchmark::kMillisecond);

void BM_Wigner(benchmark::State& st) {
  FockSpace s(256, 1.0, 1.0);
  auto psi = prepare_state(s, symmetric_cat(4.0));
  auto grid = GridSpec::fitted(psi, int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(wigner_of_state(s, psi, grid));
}
BENCHMARK(BM_Wigner)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_IdentityOracle(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(identity_oracle(int(st.range(0)), 0.3, -0.1));
}
BENCHMARK(BM_IdentityOracle)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
