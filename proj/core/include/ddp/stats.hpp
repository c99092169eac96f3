#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <string>
#include <vector>

#include "ddp/tree.hpp"

namespace ddp {

enum class LabelView { original, unified };

std::string_view to_string(LabelView v);
std::optional<LabelView> parse_label_view(std::string_view s);

struct LabelCount {
  std::string label;
  int count = 0;
  double percent = 0.0;
};

struct CorpusStats {
  int n_docs = 0;
  int n_relations = 0;
  int n_edus = 0;
  double avg_edus_per_doc = 0.0;
  double avg_chars_per_doc = 0.0;
  /// Sorted by descending count, then label.
  std::vector<LabelCount> relation_histogram;
};

struct StatsOptions {
  LabelView view = LabelView::original;
  /// Count the artificial root edge as a relation.
  bool count_root = false;
};

/// Size and relation distribution of a corpus. Unmapped unified labels
/// are counted under "_".
CorpusStats corpus_stats(const std::vector<DepDocument>& docs, StatsOptions options = {});

/// key<TAB>value summary lines followed by label<TAB>count<TAB>percent rows.
std::string format_stats(const CorpusStats& stats);

struct CorpusSplit {
  std::vector<DepDocument> train;
  std::vector<DepDocument> dev;
  std::vector<DepDocument> test;
};

/// Seeded shuffle of whole documents, then prefix partition. Within each
/// part documents keep their input order. Throws DataError when the sizes
/// do not add up to the corpus size.
CorpusSplit split_corpus(const std::vector<DepDocument>& docs, int n_train, int n_dev, int n_test,
                         std::uint64_t seed);

}  // namespace ddp
