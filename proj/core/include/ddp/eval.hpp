#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ddp/stats.hpp"
#include "ddp/tree.hpp"

namespace ddp {

struct EvalOptions {
  /// Label view used for the confusion matrix and the headline LAS.
  LabelView view = LabelView::original;
  /// Skip EDUs whose gold head is the root.
  bool exclude_root = false;
  /// Average per document instead of over all EDUs.
  bool macro = false;
};

struct EvalResult {
  double uas = 0.0;
  double las_original = 0.0;
  double las_unified = 0.0;
  int n_edus_scored = 0;
  int n_docs = 0;
  /// (gold label, predicted label) -> count, over EDUs whose gold head is
  /// not the root.
  std::map<std::pair<std::string, std::string>, int> per_label_confusion;

  double las(LabelView view) const { return view == LabelView::original ? las_original : las_unified; }
};

/// Attachment scores of `predicted` against `gold`. Documents are matched by
/// id; every gold document must have a prediction with the same EDU count.
/// Throws DataError naming the first misaligned document.
EvalResult score(const std::vector<DepDocument>& gold, const std::vector<DepDocument>& predicted,
                 const EvalOptions& options = {});

struct Agreement {
  double uas = 0.0;
  double las = 0.0;
};

/// Inter-annotator agreement: attachment scores of one annotation against
/// the other. Symmetric in its arguments.
Agreement agreement(const std::vector<DepDocument>& a, const std::vector<DepDocument>& b,
                    LabelView view = LabelView::original);

/// metric<TAB>value lines: UAS, then LAS_O or LAS_U per `view`.
std::string format_eval_tsv(const EvalResult& r, LabelView view);
/// Aligned, human-readable block with the headline scores.
std::string format_eval_summary(const EvalResult& r, LabelView view);
/// gold<TAB>predicted<TAB>count lines.
std::string format_confusion_tsv(const EvalResult& r);

}  // namespace ddp
