#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddp/graph_parser.hpp"
#include "ddp/linear.hpp"
#include "ddp/stats.hpp"
#include "ddp/transition.hpp"
#include "ddp/tree.hpp"

namespace ddp {

enum class ParserKind { graph_eisner, graph_mst, transition, two_stage };

std::string_view to_string(ParserKind k);
std::optional<ParserKind> parse_parser_kind(std::string_view s);

struct TrainConfig {
  ParserKind kind = ParserKind::graph_eisner;
  LabelView view = LabelView::original;
  int epochs = 10;
  std::uint64_t seed = 1;
  double margin = 1.0;
  NonProjective non_projective = NonProjective::lift;
};

/// A trained parser. Graph parsers carry an arc scorer and a relation
/// labeller over arc features; the transition parser carries a labelled
/// action classifier; the two-stage parser an unlabelled action classifier
/// and a relation labeller that also sees tree features.
struct ParserModel {
  ParserKind kind = ParserKind::graph_eisner;
  LabelView view = LabelView::original;
  std::optional<ArcScorer> arcs;
  std::optional<LinearClassifier> actions;
  std::optional<LinearClassifier> relations;
};

/// One row of the training log. Dev scores are present when a dev corpus
/// was given.
struct TrainLogRow {
  std::string stage;  // "arcs", "actions" or "relations"
  int epoch = 0;
  double train_score = 0.0;
  std::optional<double> dev_uas;
  std::optional<double> dev_las;
};

ParserModel train_parser(const std::vector<DepDocument>& train, const TrainConfig& config,
                         const std::vector<DepDocument>* dev = nullptr,
                         const std::function<void(const TrainLogRow&)>& log = {});

/// Parses one document (its edges are ignored). The output is a valid tree.
DepDocument parse_document(const ParserModel& model, const DepDocument& doc);

/// Parses every document, using up to `jobs` threads. Output order follows
/// the input order and does not depend on `jobs`.
std::vector<DepDocument> parse_corpus(const ParserModel& model, const std::vector<DepDocument>& docs, int jobs = 1);

std::string format_log_header();
std::string format_log_row(const TrainLogRow& row);

/// Plain-text model files: a header naming kind, view and class
/// inventories, then feature<TAB>weight lines per weight table.
void save_model(std::ostream& out, const ParserModel& model);
ParserModel load_model(std::istream& in);

}  // namespace ddp
