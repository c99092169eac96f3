#include "ddp/averaged.hpp"

namespace ddp {

double AveragedWeights::dot_averaged(const FeatureVector& fv, long long steps) const {
  if (fixed_) return dot(weights_, fv);
  const double inv = 1.0 / static_cast<double>(steps);
  double s = 0.0;
  for (const auto& [k, v] : fv) {
    auto w = weights_.find(k);
    if (w == weights_.end()) continue;
    double a = w->second;
    auto u = accumulated_.find(k);
    if (u != accumulated_.end()) a -= u->second * inv;
    s += a * v;
  }
  return s;
}

void AveragedWeights::update(const FeatureVector& fv, double scale, long long step) {
  fixed_ = false;
  for (const auto& [k, v] : fv) {
    weights_[k] += scale * v;
    accumulated_[k] += static_cast<double>(step) * scale * v;
  }
}

WeightTable AveragedWeights::averaged(long long steps) const {
  if (fixed_) return weights_;
  WeightTable out;
  const double inv = 1.0 / static_cast<double>(steps);
  for (const auto& [k, w] : weights_) {
    auto u = accumulated_.find(k);
    const double a = w - (u == accumulated_.end() ? 0.0 : u->second * inv);
    if (a != 0.0) out.emplace(k, a);
  }
  return out;
}

AveragedWeights AveragedWeights::fixed(WeightTable weights) {
  AveragedWeights w;
  w.weights_ = std::move(weights);
  w.fixed_ = true;
  return w;
}

}  // namespace ddp
