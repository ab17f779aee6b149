#include "scenepilot/normalize.hpp"
#include "scenepilot/scene_semantics.hpp"
#include "scenepilot/scorecard.hpp"
#include "scenepilot/stats.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

using namespace scenepilot;

// Exercises all three branches of the piecewise curve in one pass.
void BM_NormalizeError(benchmark::State& state) {
  const auto params = default_norm_params().at(MetricId::ade);
  std::vector<double> errors(1024);
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> dist(0.0, 3.0 * params.x2);
  for (auto& e : errors) e = dist(gen);

  for (auto _ : state) {
    double acc = 0.0;
    for (double e : errors) acc += normalize_error(e, params);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * errors.size());
}
BENCHMARK(BM_NormalizeError);

// n = 200 matches the foreground-mask point counts seen per object.
void BM_Percentile(benchmark::State& state) {
  std::vector<double> data(200);
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> dist(0.0, 50.0);
  for (auto& d : data) d = dist(gen);

  std::vector<double> scratch(data.size());
  for (auto _ : state) {
    scratch = data;  // percentile partially sorts its input copy
    benchmark::DoNotOptimize(percentile(scratch, 0.05));
  }
}
BENCHMARK(BM_Percentile);

void BM_ParseScene(benchmark::State& state) {
  const Lexicon lex = Lexicon::builtin();
  const std::string text =
      "The weather is sunny, and it is daytime. The road type is urban and "
      "the road has four lanes. It is an intersection, and the risk level "
      "score is 4. There are cars and pedestrians nearby.";
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_scene(text, lex));
  }
}
BENCHMARK(BM_ParseScene);

void BM_Spice(benchmark::State& state) {
  const Lexicon lex = Lexicon::builtin();
  const std::string cand =
      "The weather is rainy, and it is night. The road type is highway and "
      "the road has two lanes. There are trucks nearby.";
  const std::string ref =
      "The weather is sunny, and it is daytime. The road type is urban and "
      "the road has four lanes. It is an intersection.";
  for (auto _ : state) {
    benchmark::DoNotOptimize(spice(cand, ref, lex));
  }
}
BENCHMARK(BM_Spice);

void BM_AggregateScorecard(benchmark::State& state) {
  const WeightTable weights = WeightTable::defaults();
  ScoreCard card;
  double v = 20.0;
  for (MetricId m : kAllMetrics) {
    card.metrics[m] = MetricEntry{0.0, v, 100};
    v += 5.0;
  }
  for (auto _ : state) {
    aggregate_scorecard(card, weights);
    benchmark::DoNotOptimize(card.overall);
  }
}
BENCHMARK(BM_AggregateScorecard);

}  // namespace

BENCHMARK_MAIN();
