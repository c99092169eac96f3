#include "ddp/linear.hpp"

#include <limits>
#include <numeric>
#include <random>

#include "ddp/error.hpp"
#include "ddp/rng.hpp"

namespace ddp {

LinearClassifier::LinearClassifier(std::vector<std::string> classes)
    : classes_(std::move(classes)), weights_(classes_.size()) {}

int LinearClassifier::class_index(std::string_view name) const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

double LinearClassifier::score(int cls, const FeatureVector& fv, bool use_averaged) const {
  const auto& w = weights_.at(cls);
  return use_averaged ? w.dot_averaged(fv, steps_) : w.dot_raw(fv);
}

std::vector<double> LinearClassifier::scores(const FeatureVector& fv, bool use_averaged) const {
  std::vector<double> out(classes_.size());
  for (int c = 0; c < num_classes(); ++c) out[c] = score(c, fv, use_averaged);
  return out;
}

int LinearClassifier::predict(const FeatureVector& fv, const std::vector<bool>& allowed, bool use_averaged) const {
  int best = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < num_classes(); ++c) {
    if (!allowed.empty() && !allowed[c]) continue;
    const double s = score(c, fv, use_averaged);
    if (best == -1 || s > best_score) {
      best = c;
      best_score = s;
    }
  }
  return best;
}

void LinearClassifier::update(int cls, const FeatureVector& fv, double scale) {
  weights_.at(cls).update(fv, scale, steps_);
}

LinearClassifier LinearClassifier::from_weights(std::vector<std::string> classes, std::vector<WeightTable> weights) {
  if (weights.size() != classes.size()) throw DataError("weight tables do not match class inventory");
  LinearClassifier c(std::move(classes));
  for (std::size_t i = 0; i < weights.size(); ++i) c.weights_[i] = AveragedWeights::fixed(std::move(weights[i]));
  return c;
}

LinearClassifier train_margin_classifier(std::vector<std::string> classes,
                                         const std::vector<TrainingExample>& examples,
                                         const MarginTrainOptions& options,
                                         const std::function<void(int, double, const LinearClassifier&)>& on_epoch) {
  if (classes.empty()) throw DataError("classifier needs at least one class");
  LinearClassifier model(std::move(classes));
  const int k = model.num_classes();
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.seed);

  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    portable_shuffle(order, rng);
    std::size_t correct = 0;
    for (std::size_t i : order) {
      const auto& ex = examples[i];
      const int predicted = model.predict(ex.features, ex.allowed, false);
      if (predicted == ex.label) ++correct;
      const double gold_score = model.score(ex.label, ex.features, false);
      int rival = -1;
      double rival_score = -std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        if (c == ex.label || (!ex.allowed.empty() && !ex.allowed[c])) continue;
        const double s = model.score(c, ex.features, false);
        if (rival == -1 || s > rival_score) {
          rival = c;
          rival_score = s;
        }
      }
      if (rival != -1 && gold_score - rival_score < options.margin) {
        model.update(ex.label, ex.features, options.learning_rate);
        model.update(rival, ex.features, -options.learning_rate);
      }
      model.tick();
    }
    if (on_epoch) on_epoch(epoch, examples.empty() ? 1.0 : static_cast<double>(correct) / examples.size(), model);
  }
  return model;
}

}  // namespace ddp
