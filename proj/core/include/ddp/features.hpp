#pragma once

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>

#include "ddp/tree.hpp"

namespace ddp {

/// Sparse feature counts. Zero-valued entries are never stored.
class FeatureVector {
 public:
  void add(std::string_view name, double value = 1.0);
  void merge(const FeatureVector& other, double scale = 1.0);

  double get(std::string_view name) const;
  bool contains(std::string_view name) const { return values_.find(std::string(name)) != values_.end(); }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::map<std::string, double, std::less<>> values_;
};

using WeightTable = std::unordered_map<std::string, double>;

double dot(const WeightTable& weights, const FeatureVector& fv);

// Bucketing shared by the feature templates.
std::string distance_bucket(int distance);  // absolute distance
std::string length_bucket(int chars);
std::string position_bucket(int index, int n);

/// Whether EDU `index` opens a sentence (first EDU, or the previous EDU
/// ends in sentence-final punctuation).
bool starts_sentence(const DepDocument& doc, int index);

/// Features of the candidate arc head -> dependent (head may be 0).
///
/// Atoms: boundary characters and length buckets of both EDUs, direction,
/// distance bucket, document-position and sentence-start buckets, and a
/// root flag. Pairwise conjunctions combine the structural atoms with each
/// other and with the boundary characters.
FeatureVector extract_arc_features(const DepDocument& doc, int head, int dependent);

/// Structural features of an attached edge: depth, sibling and child
/// counts, signed head distance.
FeatureVector extract_tree_features(const DepDocument& doc, int dependent);

}  // namespace ddp
