#include <benchmark/benchmark.h>

#include "grs/suite.hpp"
#include "grs/surface.hpp"
#include "grs/verifier.hpp"

namespace {

grs::FamilyDescriptor descriptor(grs::FamilyCase id, std::map<std::string, double> params,
                                 double alpha, double beta, double u0, double u1) {
  grs::FamilyDescriptor d;
  d.id = id;
  d.params = std::move(params);
  d.alpha = alpha;
  d.beta = beta;
  d.interval = {u0, u1};
  return d;
}

void BM_InvariantsClosedForm(benchmark::State& state) {
  const auto s = grs::build_surface(
      descriptor(grs::FamilyCase::PnmcvEll, {{"C", 2.0}}, 1, 3, 2.1, 6));
  double u = 2.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grs::invariants(s, u));
    u = u < 5.9 ? u + 1e-3 : 2.2;
  }
}
BENCHMARK(BM_InvariantsClosedForm);

void BM_InvariantsVectorRoute(benchmark::State& state) {
  const auto s = grs::build_surface(
      descriptor(grs::FamilyCase::FncEllI, {{"c", 1.2}}, 1, 2, 0.5, 10));
  for (auto _ : state) benchmark::DoNotOptimize(grs::invariants_at(s, 1.0, 0.3));
}
BENCHMARK(BM_InvariantsVectorRoute);

// Each iteration builds a fresh family, so the lazy integration runs every time.
void BM_ConstrainedIntegration(benchmark::State& state) {
  const auto d = descriptor(grs::FamilyCase::FlatEllI, {{"a", 1}, {"c", 0}, {"f0", 0.5}}, 1, 2,
                            1, 2);
  for (auto _ : state) {
    const auto fam = grs::build_family(d);
    benchmark::DoNotOptimize(fam.samples());
  }
}
BENCHMARK(BM_ConstrainedIntegration)->Unit(benchmark::kMillisecond);

void BM_VerifyFamily(benchmark::State& state) {
  const auto d = descriptor(grs::FamilyCase::MinHypI, {{"c", 1}}, 2, 1, 0.5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(grs::verify_family(d));
}
BENCHMARK(BM_VerifyFamily)->Unit(benchmark::kMillisecond);

void BM_DefaultSuite(benchmark::State& state) {
  const auto cfg = grs::default_suite();
  for (auto _ : state) benchmark::DoNotOptimize(grs::run_suite(cfg));
}
BENCHMARK(BM_DefaultSuite)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
