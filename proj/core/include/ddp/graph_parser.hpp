#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ddp/averaged.hpp"
#include "ddp/decode.hpp"
#include "ddp/features.hpp"
#include "ddp/tree.hpp"

namespace ddp {

enum class Decoder { eisner, mst };

/// Linear arc-scoring model trained as an averaged structured perceptron.
class ArcScorer {
 public:
  double score(const FeatureVector& fv, bool use_averaged) const {
    return use_averaged ? weights_.dot_averaged(fv, steps_) : weights_.dot_raw(fv);
  }

  /// w += scale * fv, recorded at the current step.
  void update(const FeatureVector& fv, double scale) {
    ++updates_;
    weights_.update(fv, scale, steps_);
  }
  /// Advances the averaging clock by one instance.
  void tick() { ++steps_; }

  const WeightTable& weights() const { return weights_.raw(); }
  WeightTable averaged_weights() const { return weights_.averaged(steps_); }
  long long update_count() const { return updates_; }

  /// A model whose raw and averaged weights are both `weights`, as loaded
  /// from a model file.
  static ArcScorer from_weights(WeightTable weights);

 private:
  AveragedWeights weights_;
  long long steps_ = 1;
  long long updates_ = 0;
};

/// Arc features for every (head, dependent) pair of a document, computed
/// once and reused across decoding passes.
class ArcFeatureCache {
 public:
  explicit ArcFeatureCache(const DepDocument& doc);
  const FeatureVector& at(int head, int dep) const { return table_[head * (n_ + 1) + dep]; }
  int size() const { return n_; }

 private:
  int n_;
  std::vector<FeatureVector> table_;
};

ScoreMatrix score_matrix(const ArcScorer& model, const DepDocument& doc, bool use_averaged);
ScoreMatrix score_matrix(const ArcScorer& model, const ArcFeatureCache& cache, bool use_averaged);

std::vector<int> decode(const ScoreMatrix& s, Decoder decoder, bool single_root = true);

struct GraphTrainOptions {
  int epochs = 10;
  std::uint64_t seed = 1;
  Decoder decoder = Decoder::eisner;
  bool shuffle = true;
};

struct EpochReport {
  int epoch = 0;
  double train_uas = 0.0;
  long long updates = 0;
};

/// Structured perceptron: decode each document with the current weights
/// and, when the prediction differs from gold, add the gold tree's features
/// and subtract the predicted tree's. Document order is reshuffled every
/// epoch with a generator seeded from `seed`. Throws DataError on an empty
/// corpus.
ArcScorer train_graph_parser(const std::vector<DepDocument>& corpus, const GraphTrainOptions& options,
                             const std::function<void(const EpochReport&, const ArcScorer&)>& on_epoch = {});

/// Heads predicted with the averaged weights.
std::vector<int> parse_graph(const ArcScorer& model, const DepDocument& doc, Decoder decoder);

}  // namespace ddp
