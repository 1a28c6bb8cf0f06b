#include <benchmark/benchmark.h>

#include "lhdeform/milne_pinney.hpp"
#include "lhdeform/sl2_plane.hpp"
#include "lhdeform/verify.hpp"

using namespace lhd;

static void BM_IntegrateMpTwoCopy(benchmark::State& st) {
  MpParams p;
  p.c = 4;
  p.z = 0.2;
  p.omega = TimeCoefficient::sinusoid(1, 0.1, 1);
  const OdeField f = mp_two_copy_field(p);
  IntegratorConfig cfg;
  cfg.abs_tol = cfg.rel_tol = 1e-10;
  for (auto _ : st) benchmark::DoNotOptimize(integrate_adaptive(f, 0, 10, {1.0, 0.2, 1.5, -0.4}, cfg).size());
}
BENCHMARK(BM_IntegrateMpTwoCopy)->Unit(benchmark::kMillisecond);

static void BM_GenericDeformation(benchmark::State& st) {
  const DeformedTriple tr = mt_deform(sl2_class_family(Sl2Class::P2), 0.2);
  PhasePoint q{0.6, 1.3};
  for (auto _ : st) {
    for (int k = 0; k < 3; ++k) benchmark::DoNotOptimize(tr.X[k](q));
    q.x += 1e-12;
  }
}
BENCHMARK(BM_GenericDeformation);

static void BM_ClosedFormDeformation(benchmark::State& st) {
  const DeformedTriple tr = table42_triple(Sl2Class::P2, 0.2);
  PhasePoint q{0.6, 1.3};
  for (auto _ : st) {
    for (int k = 0; k < 3; ++k) benchmark::DoNotOptimize(tr.X[k](q));
    q.x += 1e-12;
  }
}
BENCHMARK(BM_ClosedFormDeformation);

static void BM_CopyValues(benchmark::State& st) {
  const DeformedTriple tr = table42_triple(Sl2Class::I5, 0.2);
  std::vector<PhasePoint> pts;
  for (int i = 0; i < st.range(0); ++i) pts.push_back({0.3 + 0.01 * i, 1.1 + 0.02 * i});
  for (auto _ : st) benchmark::DoNotOptimize(n_copy_values(tr, pts, true).v);
}
BENCHMARK(BM_CopyValues)->Arg(2)->Arg(8)->Arg(32);

static void BM_BracketCheck(benchmark::State& st) {
  const auto tr = table42_triple(Sl2Class::I4, 0.2);
  const auto rel = deformed_sl2_relations(tr);
  SampleSpec spec;
  for (auto _ : st) benchmark::DoNotOptimize(check_brackets(tr, rel, spec).max_rel);
}
BENCHMARK(BM_BracketCheck)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
