#pragma once

#include "ddp/features.hpp"

namespace ddp {

/// Sparse weights with an online average over training steps.
///
/// Alongside the raw weights w we keep u = sum over updates of
/// (step * delta); the average over all steps is then w - u / step, so an
/// update only touches the features it changes.
class AveragedWeights {
 public:
  double dot_raw(const FeatureVector& fv) const { return dot(weights_, fv); }
  double dot_averaged(const FeatureVector& fv, long long steps) const;

  void update(const FeatureVector& fv, double scale, long long step);

  const WeightTable& raw() const { return weights_; }
  WeightTable averaged(long long steps) const;

  static AveragedWeights fixed(WeightTable weights);
  bool is_fixed() const { return fixed_; }

 private:
  WeightTable weights_;
  WeightTable accumulated_;
  bool fixed_ = false;
};

}  // namespace ddp
