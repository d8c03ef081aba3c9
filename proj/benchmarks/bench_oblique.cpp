// Microbenchmarks for the oblique QR variants and the kernels they lean on.
// The CLI's perf mode reports min-of-reps tables; these are for profiling.

#include <benchmark/benchmark.h>

#include "obqr/harness.hpp"
#include "obqr/kernels.hpp"
#include "obqr/oblique.hpp"

using namespace obqr;

namespace {

constexpr std::size_t kTridiagM = 20000;
constexpr std::size_t kDenseM = 300;
constexpr std::uint64_t kSeed = 20240101;

struct Problem {
  InnerProduct a;
  DenseMatrix z;
};

Problem make_problem(harness::InnerKind kind, std::size_t m, std::size_t n) {
  Rng rng = Rng::substream(kSeed, 5);
  return {harness::perf_inner_product(kind, m, kSeed), kernels::gaussian_matrix(m, n, rng)};
}

void run(benchmark::State& state, Algorithm alg, harness::InnerKind kind, std::size_t m) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Problem p = make_problem(kind, m, n);
  const MgsOptions options{.full_norm_ratio = false};
  for (auto _ : state) {
    auto out = factorize(alg, p.a, p.z, options);
    benchmark::DoNotOptimize(out);
  }
  const double flops = harness::normalized_flops(kind, m, n);
  state.counters["GFLOPS"] =
      benchmark::Counter(flops * 1e-9, benchmark::Counter::kIsIterationInvariantRate);
}

void BM_Tridiag(benchmark::State& state, Algorithm alg) { run(state, alg, harness::InnerKind::Tridiagonal, kTridiagM); }
void BM_Dense(benchmark::State& state, Algorithm alg) { run(state, alg, harness::InnerKind::Dense, kDenseM); }

void BM_ApplyTridiag(benchmark::State& state) {
  const Problem p = make_problem(harness::InnerKind::Tridiagonal, kTridiagM, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ip_apply(p.a, p.z));
}

void BM_HouseholderQr(benchmark::State& state) {
  Rng rng = Rng::substream(kSeed, 5);
  const DenseMatrix z = kernels::gaussian_matrix(kTridiagM, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::householder_qr(z));
}

void BM_SymEig(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const InnerProduct a = harness::perf_inner_product(harness::InnerKind::Dense, m, kSeed);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sym_eig(a.matrix()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Tridiag, cholqr, Algorithm::Cholqr)->RangeMultiplier(4)->Range(8, 128);
BENCHMARK_CAPTURE(BM_Tridiag, pre_cholqr, Algorithm::PreCholqr)->RangeMultiplier(4)->Range(8, 128);
BENCHMARK_CAPTURE(BM_Tridiag, chol_eqr, Algorithm::CholEqr)->RangeMultiplier(4)->Range(8, 128);
BENCHMARK_CAPTURE(BM_Tridiag, cgs, Algorithm::Cgs)->RangeMultiplier(4)->Range(8, 128);
BENCHMARK_CAPTURE(BM_Tridiag, mgs_col, Algorithm::MgsCol)->RangeMultiplier(4)->Range(8, 128);
BENCHMARK_CAPTURE(BM_Tridiag, mgs_row, Algorithm::MgsRow)->RangeMultiplier(4)->Range(8, 128);
BENCHMARK_CAPTURE(BM_Tridiag, cgs2, Algorithm::Cgs2)->RangeMultiplier(4)->Range(8, 128);

BENCHMARK_CAPTURE(BM_Dense, cholqr, Algorithm::Cholqr)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_Dense, chol_eqr, Algorithm::CholEqr)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_Dense, syev_eqr, Algorithm::SyevEqr)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Dense, mgs_row, Algorithm::MgsRow)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_Dense, cgs2, Algorithm::Cgs2)->Arg(16)->Arg(64);

BENCHMARK(BM_ApplyTridiag)->Arg(32)->Arg(128);
BENCHMARK(BM_HouseholderQr)->Arg(32)->Arg(128);
BENCHMARK(BM_SymEig)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
