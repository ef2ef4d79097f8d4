// Serial reference vs OpenMP kernels (and the every-tuple path) on the main checkers.
#include <benchmark/benchmark.h>

#include "nary/catalog.hpp"
#include "nary/ldendriform.hpp"

using namespace nary;

namespace {

constexpr Exec kModes[] = {Exec::serial, Exec::parallel, Exec::exhaustive};

void label(benchmark::State& st, Exec e) {
  st.SetLabel(e == Exec::serial ? "serial" : e == Exec::parallel ? "parallel" : "exhaustive");
}

const NLieAlgebra& a_tilde(int m) {
  static std::map<int, NLieAlgebra> cache;
  auto it = cache.find(m);
  if (it == cache.end()) {
    NLieAlgebra s3 = levi_civita(3);
    certify(s3);
    it = cache.emplace(m, build_a_m(s3, m).metric.algebra).first;
  }
  return it->second;
}

void BM_filippov_levi_civita(benchmark::State& st) {
  const Exec e = kModes[st.range(1)];
  NLieAlgebra a = levi_civita(static_cast<int>(st.range(0)));
  label(st, e);
  for (auto _ : st) benchmark::DoNotOptimize(check_n_lie(a, {e}).instances);
}

void BM_filippov_a_m(benchmark::State& st) {
  const Exec e = kModes[st.range(1)];
  const NLieAlgebra& a = a_tilde(static_cast<int>(st.range(0)));
  label(st, e);
  for (auto _ : st) benchmark::DoNotOptimize(check_n_lie(a, {e}).instances);
}

void BM_nprelie_double(benchmark::State& st) {
  const Exec e = kModes[st.range(0)];
  NPreLieAlgebra p3 = catalog::p3();
  certify(p3);
  PhaseSpace ps = phase_space(p3);
  NPreLieAlgebra p = symplectic_to_nprelie(ps.total);
  label(st, e);
  for (auto _ : st) benchmark::DoNotOptimize(check_nprelie(p, {e}).instances);
}

void BM_ldend_rb(benchmark::State& st) {
  const Exec e = kModes[st.range(0)];
  NPreLieAlgebra p3 = catalog::p3();
  certify(p3);
  SearchSpace space;
  space.cells = diagonal_cells(3);
  NLDendriform l = rb_to_ldend(p3, rb_search(p3, space).back());
  label(st, e);
  for (auto _ : st) benchmark::DoNotOptimize(check_ldend(l, {e}).instances);
}

}  // namespace

// the every-tuple path on the 5-Lie algebra takes minutes; left out
BENCHMARK(BM_filippov_levi_civita)
    ->Args({4, 0})->Args({4, 1})->Args({4, 2})->Args({5, 0})->Args({5, 1})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_filippov_a_m)->ArgsProduct({{3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nprelie_double)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ldend_rb)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
