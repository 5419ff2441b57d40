#include <benchmark/benchmark.h>

#include <string>

#include "holocurve/fieldexpr.hpp"

using namespace holocurve;

namespace {

const std::string kSource = "exp(z0)*z1 - sin(t*z2)/(2 + t^2), cos(z1)^3 + (1.5-2i)*z0*z2, exp(-z2)/4 - t^2";

}  // namespace

static void BM_ParseField(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_field(kSource, 3));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(kSource.size()));
}
BENCHMARK(BM_ParseField);

static void BM_EvaluateField(benchmark::State& state) {
  const FieldExpr f = parse_field(kSource, 3);
  const CVector z{0.1, Complex(0.2, 0.3), -0.4};
  for (auto _ : state) benchmark::DoNotOptimize(f.evaluate(0.25, z));
}
BENCHMARK(BM_EvaluateField);
