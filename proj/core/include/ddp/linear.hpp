#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ddp/averaged.hpp"
#include "ddp/features.hpp"

namespace ddp {

/// Multiclass linear classifier with one sparse weight table per class.
/// Trained with a multiclass hinge loss by stochastic subgradient steps,
/// with weight averaging over steps.
class LinearClassifier {
 public:
  LinearClassifier() = default;
  explicit LinearClassifier(std::vector<std::string> classes);

  const std::vector<std::string>& classes() const { return classes_; }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  /// -1 when unknown.
  int class_index(std::string_view name) const;

  double score(int cls, const FeatureVector& fv, bool use_averaged = true) const;
  std::vector<double> scores(const FeatureVector& fv, bool use_averaged = true) const;

  /// Highest-scoring class among `allowed` (all classes when empty). Ties go
  /// to the class listed first. Returns -1 if nothing is allowed.
  int predict(const FeatureVector& fv, const std::vector<bool>& allowed = {}, bool use_averaged = true) const;

  void update(int cls, const FeatureVector& fv, double scale);
  void tick() { ++steps_; }

  WeightTable averaged_weights(int cls) const { return weights_.at(cls).averaged(steps_); }

  /// Builds a classifier from stored (already averaged) weights.
  static LinearClassifier from_weights(std::vector<std::string> classes, std::vector<WeightTable> weights);

 private:
  std::vector<std::string> classes_;
  std::vector<AveragedWeights> weights_;
  long long steps_ = 1;
};

struct TrainingExample {
  FeatureVector features;
  int label = 0;
  /// Classes the example may be assigned; empty means all.
  std::vector<bool> allowed;
};

struct MarginTrainOptions {
  int epochs = 10;
  double margin = 1.0;
  double learning_rate = 1.0;
  std::uint64_t seed = 1;
};

/// Per epoch: reshuffle, then for every example find the best-scoring
/// allowed wrong class; if it comes within `margin` of the gold class,
/// step the gold class toward the features and the rival away from them.
/// `on_epoch` receives (epoch, training accuracy before updates, model).
LinearClassifier train_margin_classifier(std::vector<std::string> classes,
                                         const std::vector<TrainingExample>& examples,
                                         const MarginTrainOptions& options,
                                         const std::function<void(int, double, const LinearClassifier&)>& on_epoch = {});

}  // namespace ddp
