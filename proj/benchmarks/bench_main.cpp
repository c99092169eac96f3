#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "ddp/decode.hpp"
#include "ddp/features.hpp"
#include "ddp/graph_parser.hpp"
#include "ddp/parser_model.hpp"

namespace {

ddp::ScoreMatrix random_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ddp::ScoreMatrix s(n);
  for (int h = 0; h <= n; ++h) {
    for (int d = 1; d <= n; ++d) s(h, d) = dist(rng);
  }
  return s;
}

// Right-branching documents with sentence-final texts every few EDUs.
std::vector<ddp::DepDocument> synthetic_corpus(int docs, int n, std::uint64_t seed) {
  static const char* kPieces[] = {"公司", "扩大", "生产", "因为", "市场", "需求", "所以", "但是", "增长", "会议"};
  std::mt19937_64 rng(seed);
  std::vector<ddp::DepDocument> out;
  for (int k = 0; k < docs; ++k) {
    std::vector<std::string> texts;
    std::vector<int> heads;
    for (int i = 1; i <= n; ++i) {
      std::string t;
      for (int j = 0; j < 3; ++j) t += kPieces[rng() % 10];
      t += (i % 3 == 0) ? "。" : "，";
      texts.push_back(t);
      heads.push_back(i == 1 ? 0 : static_cast<int>(rng() % (i - 1)) + 1);
    }
    out.push_back(ddp::make_document("b" + std::to_string(k), texts, heads));
  }
  return out;
}

void BM_Eisner(benchmark::State& state) {
  const auto s = random_matrix(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ddp::eisner_decode(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eisner)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNCubed);

void BM_Mst(benchmark::State& state) {
  const auto s = random_matrix(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(ddp::mst_decode(s));
}
BENCHMARK(BM_Mst)->RangeMultiplier(2)->Range(8, 64);

void BM_ArcFeatureCache(benchmark::State& state) {
  const auto doc = synthetic_corpus(1, static_cast<int>(state.range(0)), 3).front();
  for (auto _ : state) {
    ddp::ArcFeatureCache cache(doc);
    benchmark::DoNotOptimize(cache.size());
  }
}
BENCHMARK(BM_ArcFeatureCache)->Arg(10)->Arg(30);

void BM_TrainEpoch(benchmark::State& state) {
  const auto corpus = synthetic_corpus(50, 12, 4);
  ddp::TrainConfig cfg;
  cfg.kind = static_cast<ddp::ParserKind>(state.range(0));
  cfg.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(ddp::train_parser(corpus, cfg));
}
BENCHMARK(BM_TrainEpoch)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_ParseCorpus(benchmark::State& state) {
  const auto corpus = synthetic_corpus(50, 12, 5);
  ddp::TrainConfig cfg;
  cfg.epochs = 1;
  const auto model = ddp::train_parser(corpus, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(ddp::parse_corpus(model, corpus, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ParseCorpus)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
