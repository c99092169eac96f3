#include "ddp/graph_parser.hpp"

#include <numeric>
#include <random>

#include "ddp/error.hpp"
#include "ddp/rng.hpp"

namespace ddp {

ArcScorer ArcScorer::from_weights(WeightTable weights) {
  ArcScorer m;
  m.weights_ = AveragedWeights::fixed(std::move(weights));
  return m;
}

ArcFeatureCache::ArcFeatureCache(const DepDocument& doc) : n_(doc.size()), table_((n_ + 1) * (n_ + 1)) {
  for (int h = 0; h <= n_; ++h) {
    for (int d = 1; d <= n_; ++d) {
      if (h != d) table_[h * (n_ + 1) + d] = extract_arc_features(doc, h, d);
    }
  }
}

ScoreMatrix score_matrix(const ArcScorer& model, const ArcFeatureCache& cache, bool use_averaged) {
  const int n = cache.size();
  ScoreMatrix s(n);
  for (int h = 0; h <= n; ++h) {
    for (int d = 1; d <= n; ++d) {
      if (h != d) s(h, d) = model.score(cache.at(h, d), use_averaged);
    }
  }
  return s;
}

ScoreMatrix score_matrix(const ArcScorer& model, const DepDocument& doc, bool use_averaged) {
  return score_matrix(model, ArcFeatureCache(doc), use_averaged);
}

std::vector<int> decode(const ScoreMatrix& s, Decoder decoder, bool single_root) {
  return decoder == Decoder::eisner ? eisner_decode(s, single_root) : mst_decode(s, single_root);
}

ArcScorer train_graph_parser(const std::vector<DepDocument>& corpus, const GraphTrainOptions& options,
                             const std::function<void(const EpochReport&, const ArcScorer&)>& on_epoch) {
  if (corpus.empty()) throw DataError("cannot train on an empty corpus");
  std::vector<ArcFeatureCache> caches;
  std::vector<std::vector<int>> gold;
  caches.reserve(corpus.size());
  for (const auto& doc : corpus) {
    if (!is_valid_tree(doc)) throw DataError("training document " + doc.doc_id + " is not a valid tree");
    caches.emplace_back(doc);
    gold.push_back(heads_of(doc));
  }

  ArcScorer model;
  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    if (options.shuffle) portable_shuffle(order, rng);
    long long correct = 0, total = 0;
    for (std::size_t i : order) {
      const auto& cache = caches[i];
      const auto predicted = decode(score_matrix(model, cache, false), options.decoder);
      const auto& g = gold[i];
      FeatureVector delta;
      for (int d = 1; d <= cache.size(); ++d) {
        ++total;
        if (predicted[d - 1] == g[d - 1]) {
          ++correct;
          continue;
        }
        delta.merge(cache.at(g[d - 1], d), 1.0);
        delta.merge(cache.at(predicted[d - 1], d), -1.0);
      }
      if (!delta.empty()) model.update(delta, 1.0);
      model.tick();
    }
    if (on_epoch) {
      on_epoch(EpochReport{epoch, total ? static_cast<double>(correct) / total : 1.0, model.update_count()}, model);
    }
  }
  return model;
}

std::vector<int> parse_graph(const ArcScorer& model, const DepDocument& doc, Decoder decoder) {
  if (doc.size() == 0) return {};
  return decode(score_matrix(model, doc, true), decoder);
}

}  // namespace ddp
