#include "ddp/parser_model.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>

#include "ddp/error.hpp"
#include "ddp/eval.hpp"
#include "ddp/parallel.hpp"
#include "ddp/text.hpp"

namespace ddp {

std::string_view to_string(ParserKind k) {
  switch (k) {
    case ParserKind::graph_eisner: return "graph-eisner";
    case ParserKind::graph_mst: return "graph-mst";
    case ParserKind::transition: return "transition";
    case ParserKind::two_stage: return "two-stage";
  }
  return "?";
}

std::optional<ParserKind> parse_parser_kind(std::string_view s) {
  for (auto k : {ParserKind::graph_eisner, ParserKind::graph_mst, ParserKind::transition, ParserKind::two_stage}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

namespace {

bool is_graph(ParserKind k) { return k == ParserKind::graph_eisner || k == ParserKind::graph_mst; }
Decoder decoder_of(ParserKind k) { return k == ParserKind::graph_mst ? Decoder::mst : Decoder::eisner; }

DepDocument heads_to_doc(const DepDocument& doc, const std::vector<int>& heads) {
  DepDocument out;
  out.doc_id = doc.doc_id;
  out.edus = doc.edus;
  for (int d = 1; d <= doc.size(); ++d) {
    DepEdge e;
    e.head = heads[d - 1];
    e.dependent = d;
    e.rel_original = e.head == kRoot ? std::string(kRootLabel) : std::string(kUnlabeled);
    if (e.head == kRoot) e.rel_unified = std::string(kRootLabel);
    e.provenance = Provenance::converted;
    out.edges.push_back(std::move(e));
  }
  return out;
}

DepDocument parse_graph_doc(const ArcScorer& arcs, const LinearClassifier* relations, ParserKind kind,
                            LabelView view, const DepDocument& doc) {
  DepDocument out = heads_to_doc(doc, parse_graph(arcs, doc, decoder_of(kind)));
  if (relations) out = label_relations(out, *relations, false, view);
  return out;
}

std::vector<DepDocument> parse_all(const std::vector<DepDocument>& docs,
                                   const std::function<DepDocument(const DepDocument&)>& f) {
  std::vector<DepDocument> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(f(d));
  return out;
}

}  // namespace

ParserModel train_parser(const std::vector<DepDocument>& train, const TrainConfig& config,
                         const std::vector<DepDocument>* dev,
                         const std::function<void(const TrainLogRow&)>& log) {
  if (train.empty()) throw DataError("cannot train on an empty corpus");
  ParserModel model;
  model.kind = config.kind;
  model.view = config.view;
  const EvalOptions eval_options{config.view, false, false};

  auto emit = [&](const char* stage, int epoch, double train_score,
                  const std::function<DepDocument(const DepDocument&)>& parser, bool labelled) {
    if (!log) return;
    TrainLogRow row{stage, epoch, train_score, std::nullopt, std::nullopt};
    if (dev && parser) {
      EvalResult r = score(*dev, parse_all(*dev, parser), eval_options);
      row.dev_uas = r.uas;
      if (labelled) row.dev_las = r.las(config.view);
    }
    log(row);
  };

  if (is_graph(config.kind)) {
    GraphTrainOptions go{config.epochs, config.seed, decoder_of(config.kind), true};
    model.arcs = train_graph_parser(train, go, [&](const EpochReport& rep, const ArcScorer& arcs) {
      emit("arcs", rep.epoch, rep.train_uas,
           [&](const DepDocument& d) { return parse_graph_doc(arcs, nullptr, config.kind, config.view, d); }, false);
    });
    RelationTrainOptions ro{false, config.view, config.epochs, config.seed, config.margin};
    model.relations = train_relation_labeler(train, ro, [&](int epoch, double acc, const LinearClassifier& rel) {
      emit("relations", epoch, acc,
           [&](const DepDocument& d) { return parse_graph_doc(*model.arcs, &rel, config.kind, config.view, d); },
           true);
    });
    return model;
  }

  const bool labelled = config.kind == ParserKind::transition;
  TransitionTrainOptions to{labelled, config.view, config.epochs, config.seed, config.margin, config.non_projective};
  model.actions = train_transition_parser(train, to, [&](int epoch, double acc, const LinearClassifier& act) {
    emit("actions", epoch, acc,
         [&](const DepDocument& d) { return parse_transition(d, act, labelled, config.view); }, labelled);
  });
  if (config.kind == ParserKind::two_stage) {
    RelationTrainOptions ro{true, config.view, config.epochs, config.seed, config.margin};
    model.relations = train_relation_labeler(train, ro, [&](int epoch, double acc, const LinearClassifier& rel) {
      emit("relations", epoch, acc,
           [&](const DepDocument& d) { return two_stage_parse(d, *model.actions, rel, config.view); }, true);
    });
  }
  return model;
}

DepDocument parse_document(const ParserModel& model, const DepDocument& doc) {
  switch (model.kind) {
    case ParserKind::graph_eisner:
    case ParserKind::graph_mst:
      if (!model.arcs) throw DataError("model has no arc weights");
      return parse_graph_doc(*model.arcs, model.relations ? &*model.relations : nullptr, model.kind, model.view, doc);
    case ParserKind::transition:
      if (!model.actions) throw DataError("model has no action classifier");
      return parse_transition(doc, *model.actions, true, model.view);
    case ParserKind::two_stage:
      if (!model.actions || !model.relations) throw DataError("two-stage model is incomplete");
      return two_stage_parse(doc, *model.actions, *model.relations, model.view);
  }
  throw DataError("unknown parser kind");
}

std::vector<DepDocument> parse_corpus(const ParserModel& model, const std::vector<DepDocument>& docs, int jobs) {
  return parallel_map(docs, jobs, [&](const DepDocument& d) { return parse_document(model, d); });
}

std::string format_log_header() { return "stage\tepoch\ttrain\tdev_uas\tdev_las\n"; }

std::string format_log_row(const TrainLogRow& row) {
  auto fmt = [](std::optional<double> v) {
    if (!v) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return std::string(buf);
  };
  return row.stage + '\t' + std::to_string(row.epoch) + '\t' + fmt(row.train_score) + '\t' + fmt(row.dev_uas) +
         '\t' + fmt(row.dev_las) + '\n';
}

// Layout:
//   ddp-model<TAB>1
//   kind<TAB>two-stage
//   view<TAB>original
//   @arcs
//   feature<TAB>weight ...
//   @actions<TAB>class<TAB>class ...
//   @class<TAB>name
//   feature<TAB>weight ...
//   @relations<TAB>...
namespace {

void write_table(std::ostream& out, const WeightTable& table) {
  std::vector<std::pair<std::string_view, double>> rows;
  for (const auto& [k, v] : table) {
    if (v != 0.0) rows.emplace_back(k, v);
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& [k, v] : rows) out << k << '\t' << text::format_double(v) << '\n';
}

void write_classifier(std::ostream& out, const char* tag, const LinearClassifier& c) {
  out << '@' << tag;
  for (const auto& name : c.classes()) out << '\t' << name;
  out << '\n';
  for (int i = 0; i < c.num_classes(); ++i) {
    out << "@class\t" << c.classes()[i] << '\n';
    write_table(out, c.averaged_weights(i));
  }
}

}  // namespace

void save_model(std::ostream& out, const ParserModel& model) {
  out << "ddp-model\t1\n"
      << "kind\t" << to_string(model.kind) << '\n'
      << "view\t" << to_string(model.view) << '\n';
  if (model.arcs) {
    out << "@arcs\n";
    write_table(out, model.arcs->averaged_weights());
  }
  if (model.actions) write_classifier(out, "actions", *model.actions);
  if (model.relations) write_classifier(out, "relations", *model.relations);
}

ParserModel load_model(std::istream& in) {
  ParserModel model;
  std::string line;
  int line_no = 0;

  struct Pending {
    std::vector<std::string> classes;
    std::vector<WeightTable> tables;
  };
  std::optional<WeightTable> arcs;
  std::optional<Pending> actions, relations;
  WeightTable* current = nullptr;
  Pending* current_classifier = nullptr;
  bool have_kind = false, have_view = false;

  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next() || line != "ddp-model\t1") throw DataError("not a model file", 1);
  while (next()) {
    if (line.empty()) continue;
    auto fields = text::split(line, '\t');
    if (line.front() == '@') {
      const std::string& tag = fields[0];
      if (tag == "@arcs") {
        if (arcs) throw DataError("duplicate arc section", line_no);
        arcs.emplace();
        current = &*arcs;
        current_classifier = nullptr;
      } else if (tag == "@actions" || tag == "@relations") {
        auto& slot = tag == "@actions" ? actions : relations;
        if (slot) throw DataError("duplicate " + tag.substr(1) + " section", line_no);
        slot.emplace();
        slot->classes.assign(fields.begin() + 1, fields.end());
        if (slot->classes.empty()) throw DataError("classifier without classes", line_no);
        current_classifier = &*slot;
        current = nullptr;
      } else if (tag == "@class") {
        if (!current_classifier || fields.size() != 2) throw DataError("misplaced class section", line_no);
        const auto& cls = current_classifier->classes;
        const std::size_t k = current_classifier->tables.size();
        if (k >= cls.size() || cls[k] != fields[1]) {
          throw DataError("class section '" + fields[1] + "' out of order", line_no);
        }
        current_classifier->tables.emplace_back();
        current = &current_classifier->tables.back();
      } else {
        throw DataError("unknown section '" + tag + "'", line_no);
      }
      continue;
    }
    if (fields.size() != 2) throw DataError("expected 2 tab-separated fields", line_no);
    if (!current) {
      if (fields[0] == "kind") {
        auto k = parse_parser_kind(fields[1]);
        if (!k) throw DataError("unknown parser kind '" + fields[1] + "'", line_no);
        model.kind = *k;
        have_kind = true;
      } else if (fields[0] == "view") {
        auto v = parse_label_view(fields[1]);
        if (!v) throw DataError("unknown label view '" + fields[1] + "'", line_no);
        model.view = *v;
        have_view = true;
      } else {
        throw DataError("weight outside of a section", line_no);
      }
      continue;
    }
    double w = 0.0;
    if (!text::parse_double(fields[1], w)) throw DataError("malformed weight '" + fields[1] + "'", line_no);
    if (!current->emplace(fields[0], w).second) throw DataError("duplicate feature '" + fields[0] + "'", line_no);
  }
  if (!have_kind || !have_view) throw DataError("model header incomplete", line_no);

  auto finish = [&](std::optional<Pending>& p, const char* what) -> std::optional<LinearClassifier> {
    if (!p) return std::nullopt;
    if (p->tables.size() != p->classes.size()) {
      throw DataError(std::string(what) + " classifier is missing class sections", line_no);
    }
    return LinearClassifier::from_weights(std::move(p->classes), std::move(p->tables));
  };
  if (arcs) model.arcs = ArcScorer::from_weights(std::move(*arcs));
  model.actions = finish(actions, "action");
  model.relations = finish(relations, "relation");

  const bool ok = is_graph(model.kind)               ? model.arcs.has_value()
                  : model.kind == ParserKind::transition ? model.actions.has_value()
                                                         : model.actions && model.relations;
  if (!ok) throw DataError("model file lacks the sections its kind needs", line_no);
  return model;
}

}  // namespace ddp
