#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cec/cost_equivalent.hpp"
#include "cec/isotonic.hpp"
#include "cec/mixing.hpp"
#include "cec/textify.hpp"

namespace {

std::vector<cec::MonotoneSample> noisy_curve(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);
  std::vector<cec::MonotoneSample> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i + 1);
    const double y = 1.0 - 1.0 / std::sqrt(x) + noise(rng);
    samples.push_back({x, y, 1.0});
  }
  return samples;
}

void FitIsotonic(benchmark::State& state) {
  const auto samples = noisy_curve(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    auto fit = cec::fit_isotonic(samples, cec::Direction::increasing);
    benchmark::DoNotOptimize(fit);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(FitIsotonic)->RangeMultiplier(8)->Range(64, 1 << 17)->Complexity();

void Predict(benchmark::State& state) {
  const auto fit = cec::fit_isotonic(noisy_curve(10000, 2),
                                     cec::Direction::increasing);
  double x = 0.0;
  for (auto _ : state) {
    x += 7.77;
    if (x > 10000.0) x = 0.0;
    benchmark::DoNotOptimize(fit.predict(x));
  }
}
BENCHMARK(Predict);

void ComputeCec(benchmark::State& state) {
  const auto control = noisy_curve(static_cast<std::size_t>(state.range(0)), 3);
  auto treatment = control;
  for (auto& s : treatment) s.cost *= 0.5;
  for (auto _ : state) {
    auto curve = cec::compute_cec(control, treatment, cec::GridSpec::dense(200));
    benchmark::DoNotOptimize(curve);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(ComputeCec)->RangeMultiplier(8)->Range(64, 1 << 14)->Complexity();

void SerializeExample(benchmark::State& state) {
  cec::TaskExample example{
      "socialiqa",
      {{"context", "Quinn wanted to help me clean my room up because it was "
                   "so messy."},
       {"question", "What will Quinn want to do next?"},
       {"answerA", "Eat messy snacks"},
       {"answerB", "Help out a friend"},
       {"answerC", "Pick up the dirty clothes"}},
      "B"};
  for (auto _ : state) {
    auto pair = cec::serialize_example(example);
    benchmark::DoNotOptimize(pair);
  }
}
BENCHMARK(SerializeExample);

void SampleStream(benchmark::State& state) {
  cec::MixtureSpec spec;
  for (int i = 0; i < 6; ++i) {
    spec.tasks.push_back({"task" + std::to_string(i), 1});
  }
  spec.seed = 4;
  for (auto _ : state) {
    auto stream = cec::sample_stream(spec, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(stream);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SampleStream)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity();

}  // namespace

BENCHMARK_MAIN();
