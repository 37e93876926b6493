#include <random>

#include <benchmark/benchmark.h>

#include "carent/campaign.hpp"
#include "carent/kernels.hpp"

using namespace carent;

namespace {

struct Fixture {
  std::vector<PauliString> basis;
  Matrix x;
  std::vector<Complex> coeffs;
};

Fixture make_fixture(int sites) {
  std::vector<int> pos;
  for (int p = 1; p <= sites; ++p) pos.push_back(p);
  Fixture f{majorana_monomials(sites, pos), Matrix(Eigen::Index{1} << sites, Eigen::Index{1} << sites), {}};
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (Eigen::Index k = 0; k < f.x.size(); ++k) f.x.data()[k] = Complex(g(rng), g(rng));
  f.coeffs = kernels::expand_serial(f.basis, f.x);
  return f;
}

void BM_ExpandSerial(benchmark::State& state) {
  const auto f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::expand_serial(f.basis, f.x));
}

void BM_ExpandParallel(benchmark::State& state) {
  const auto f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::expand_parallel(f.basis, f.x));
  state.counters["threads"] = kernels::max_threads();
}

void BM_AssembleSerial(benchmark::State& state) {
  const auto f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::assemble_serial(f.basis, f.coeffs, f.x.rows()));
}

void BM_AssembleParallel(benchmark::State& state) {
  const auto f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::assemble_parallel(f.basis, f.coeffs, f.x.rows()));
  state.counters["threads"] = kernels::max_threads();
}

VerifyConfig campaign(int sites) {
  VerifyConfig cfg;
  cfg.sites = sites;
  cfg.trials = 64;
  cfg.seed = 3;
  cfg.parity = ParityMode::Mixed;
  return cfg;
}

void BM_VerifySerial(benchmark::State& state) {
  const auto cfg = campaign(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_verify_serial(cfg));
}

void BM_VerifyParallel(benchmark::State& state) {
  const auto cfg = campaign(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_verify(cfg));
  state.counters["threads"] = kernels::max_threads();
}

}  // namespace

BENCHMARK(BM_ExpandSerial)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpandParallel)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleSerial)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleParallel)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
