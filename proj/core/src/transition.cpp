#include "ddp/transition.hpp"

#include <algorithm>
#include <set>

#include "ddp/error.hpp"
#include "ddp/text.hpp"

namespace ddp {

std::string to_string(const Action& a) {
  std::string out;
  switch (a.type) {
    case ActionType::shift: return "SHIFT";
    case ActionType::left_arc: out = "LEFT_ARC"; break;
    case ActionType::right_arc: out = "RIGHT_ARC"; break;
  }
  if (!a.label.empty()) out += ":" + a.label;
  return out;
}

Action parse_action(std::string_view s) {
  if (s == "SHIFT") return Action::shift();
  auto colon = s.find(':');
  std::string_view head = s.substr(0, colon);
  std::string label = colon == std::string_view::npos ? std::string() : std::string(s.substr(colon + 1));
  if (head == "LEFT_ARC") return Action::left(std::move(label));
  if (head == "RIGHT_ARC") return Action::right(std::move(label));
  throw DataError("unknown action '" + std::string(s) + "'");
}

TransitionConfig TransitionConfig::initial(int n) {
  TransitionConfig cfg;
  cfg.stack = {kRoot};
  for (int i = 1; i <= n; ++i) cfg.buffer.push_back(i);
  cfg.heads.assign(n + 1, -1);
  cfg.labels.assign(n + 1, {});
  return cfg;
}

int TransitionConfig::attached_children(int node, bool left_side) const {
  int count = 0;
  for (int d = 1; d <= size(); ++d) {
    if (heads[d] == node && (left_side ? d < node : d > node)) ++count;
  }
  return count;
}

bool is_legal(const TransitionConfig& cfg, const Action& a) {
  if (a.type == ActionType::shift) return !cfg.buffer.empty();
  if (cfg.stack.size() < 2) return false;
  const int second = cfg.stack[cfg.stack.size() - 2];
  const bool root_label = a.label == kRootLabel;
  if (a.type == ActionType::left_arc) return second != kRoot && !root_label;
  // RIGHT_ARC
  if (second == kRoot) {
    return cfg.buffer.empty() && cfg.stack.size() == 2 && (a.label.empty() || root_label);
  }
  return !root_label;
}

void apply_action_in_place(TransitionConfig& cfg, const Action& a) {
  if (!is_legal(cfg, a)) throw DataError("illegal action " + to_string(a));
  switch (a.type) {
    case ActionType::shift:
      cfg.stack.push_back(cfg.buffer.front());
      cfg.buffer.pop_front();
      return;
    case ActionType::left_arc: {
      const int top = cfg.stack.back();
      const int second = cfg.stack[cfg.stack.size() - 2];
      cfg.heads[second] = top;
      cfg.labels[second] = a.label;
      cfg.stack.erase(cfg.stack.end() - 2);
      return;
    }
    case ActionType::right_arc: {
      const int top = cfg.stack.back();
      const int second = cfg.stack[cfg.stack.size() - 2];
      cfg.heads[top] = second;
      cfg.labels[top] = second == kRoot && a.label.empty() ? std::string(kRootLabel) : a.label;
      cfg.stack.pop_back();
      return;
    }
  }
}

TransitionConfig apply_action(const TransitionConfig& cfg, const Action& a) {
  TransitionConfig next = cfg;
  apply_action_in_place(next, a);
  return next;
}

std::vector<Action> oracle_actions(const DepDocument& gold, bool labeled) {
  auto report = validate_tree(gold);
  if (!report.empty()) throw DataError("invalid tree (document " + gold.doc_id + "): " + report.front().message);
  if (!is_projective(gold)) throw DataError("non-projective, projectivize first (document " + gold.doc_id + ")");
  const int n = gold.size();
  std::vector<int> pending(n + 1, 0);  // gold dependents not yet attached
  for (const auto& e : gold.edges) ++pending[e.head];

  auto label_of = [&](int d) { return labeled ? gold.edge_of(d).rel_original : std::string(); };

  TransitionConfig cfg = TransitionConfig::initial(n);
  std::vector<Action> actions;
  while (!cfg.terminal()) {
    Action a = Action::shift();
    if (cfg.stack.size() >= 2) {
      const int top = cfg.stack.back();
      const int second = cfg.stack[cfg.stack.size() - 2];
      if (second != kRoot && gold.edge_of(second).head == top) {
        a = Action::left(label_of(second));
      } else if (gold.edge_of(top).head == second && pending[top] == 0) {
        a = Action::right(second == kRoot && labeled ? std::string(kRootLabel) : label_of(top));
      }
    }
    if (a.type == ActionType::shift && cfg.buffer.empty()) {
      throw DataError("oracle is stuck on document " + gold.doc_id);
    }
    if (a.type == ActionType::left_arc) --pending[cfg.stack.back()];
    if (a.type == ActionType::right_arc) --pending[cfg.stack[cfg.stack.size() - 2]];
    apply_action_in_place(cfg, a);
    actions.push_back(std::move(a));
  }
  return actions;
}

namespace {

void add_node_features(FeatureVector& fv, const DepDocument& doc, const TransitionConfig& cfg, std::string_view name,
                       int node) {
  const std::string p(name);
  if (node < 0) {
    fv.add(p + "=NONE");
    return;
  }
  if (node == kRoot) {
    fv.add(p + "=ROOT");
    return;
  }
  const Edu& e = doc.edu(node);
  fv.add(p + "f=" + text::first_char(e.text));
  fv.add(p + "l=" + text::last_char(e.text));
  fv.add(p + "len=" + length_bucket(e.char_len));
  fv.add(p + "sent=" + (starts_sentence(doc, node) ? std::string("start") : std::string("inner")));
  if (p != "b0") {
    fv.add(p + "lc=" + std::to_string(std::min(cfg.attached_children(node, true), 3)));
    fv.add(p + "rc=" + std::to_string(std::min(cfg.attached_children(node, false), 3)));
  }
}

std::string node_token(const DepDocument& doc, int node, bool last) {
  if (node < 0) return "NONE";
  if (node == kRoot) return "ROOT";
  return last ? text::last_char(doc.edu(node).text) : text::first_char(doc.edu(node).text);
}

}  // namespace

FeatureVector extract_config_features(const DepDocument& doc, const TransitionConfig& cfg) {
  FeatureVector fv;
  const auto& st = cfg.stack;
  const int s0 = st.empty() ? -1 : st.back();
  const int s1 = st.size() >= 2 ? st[st.size() - 2] : -1;
  const int b0 = cfg.buffer.empty() ? -1 : cfg.buffer.front();

  fv.add("bias");
  add_node_features(fv, doc, cfg, "s0", s0);
  add_node_features(fv, doc, cfg, "s1", s1);
  add_node_features(fv, doc, cfg, "b0", b0);

  const std::string b0_state = b0 < 0 ? "none" : "some";
  const std::string s1_state = s1 < 0 ? "none" : (s1 == kRoot ? "root" : "edu");
  fv.add("s1=" + s1_state + "&b0=" + b0_state);
  if (s0 > 0 && s1 > 0) {
    const std::string dist = distance_bucket(s0 - s1);
    fv.add("dist=" + dist);
    fv.add("dist=" + dist + "&b0=" + b0_state);
    fv.add("s1l=" + node_token(doc, s1, true) + "&s0f=" + node_token(doc, s0, false));
    fv.add("s1l=" + node_token(doc, s1, true) + "&s0l=" + node_token(doc, s0, true));
    fv.add("s1f=" + node_token(doc, s1, false) + "&s0f=" + node_token(doc, s0, false));
    bool same_sentence = true;
    for (int i = s1 + 1; i <= s0; ++i) same_sentence &= !starts_sentence(doc, i);
    fv.add("s01sent=" + std::string(same_sentence ? "same" : "cross"));
    fv.add("s01sent=" + std::string(same_sentence ? "same" : "cross") + "&b0=" + b0_state);
  }
  if (s0 > 0) {
    fv.add("s0l=" + node_token(doc, s0, true) + "&b0f=" + node_token(doc, b0, false));
  }
  return fv;
}

std::vector<std::string> action_inventory(const std::vector<std::string>& labels, bool labeled) {
  if (!labeled) return {"SHIFT", "LEFT_ARC", "RIGHT_ARC"};
  std::set<std::string> uniq;
  for (const auto& l : labels) {
    if (l != kRootLabel && !l.empty()) uniq.insert(l);
  }
  std::vector<std::string> out{"SHIFT"};
  for (const auto& l : uniq) out.push_back(to_string(Action::left(l)));
  for (const auto& l : uniq) out.push_back(to_string(Action::right(l)));
  out.push_back(to_string(Action::right(std::string(kRootLabel))));
  return out;
}

std::string edge_label(const DepEdge& e, LabelView view) {
  if (view == LabelView::original) return e.rel_original;
  return e.rel_unified ? *e.rel_unified : std::string();
}

namespace {

// A copy of `doc` whose rel_original carries the view's labels, so the
// oracle can read them from one place.
DepDocument with_view_labels(const DepDocument& doc, LabelView view) {
  if (view == LabelView::original) return doc;
  DepDocument out = doc;
  for (auto& e : out.edges) {
    e.rel_original = e.head == kRoot ? std::string(kRootLabel) : edge_label(e, view);
  }
  return out;
}

std::vector<bool> legal_mask(const TransitionConfig& cfg, const std::vector<Action>& actions) {
  std::vector<bool> mask(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) mask[i] = is_legal(cfg, actions[i]);
  return mask;
}

void store_label(DepEdge& e, std::string label, LabelView view) {
  if (e.head == kRoot) {
    e.rel_original = kRootLabel;
    e.rel_unified = std::string(kRootLabel);
    return;
  }
  if (view == LabelView::original || label == kUnlabeled) {
    e.rel_unified.reset();
  } else {
    e.rel_unified = label;
  }
  e.rel_original = std::move(label);
}

}  // namespace

LinearClassifier train_transition_parser(const std::vector<DepDocument>& corpus, const TransitionTrainOptions& options,
                                         const std::function<void(int, double, const LinearClassifier&)>& on_epoch) {
  std::vector<DepDocument> usable;
  std::vector<std::string> labels;
  for (const auto& raw : corpus) {
    if (!is_valid_tree(raw)) throw DataError("training document " + raw.doc_id + " is not a valid tree");
    DepDocument doc = with_view_labels(raw, options.view);
    if (options.labeled && options.view == LabelView::unified) {
      bool unmapped = false;
      for (const auto& e : doc.edges) unmapped |= e.rel_original.empty();
      if (unmapped) continue;
    }
    if (!is_projective(doc)) {
      if (options.non_projective == NonProjective::skip) continue;
      doc = projectivize(doc);
    }
    for (const auto& e : doc.edges) labels.push_back(e.rel_original);
    usable.push_back(std::move(doc));
  }
  if (usable.empty()) throw DataError("no usable training documents");

  const auto inventory = action_inventory(labels, options.labeled);
  std::vector<Action> actions;
  for (const auto& c : inventory) actions.push_back(parse_action(c));

  std::vector<TrainingExample> examples;
  for (const auto& doc : usable) {
    TransitionConfig cfg = TransitionConfig::initial(doc.size());
    for (auto& a : oracle_actions(doc, options.labeled)) {
      TrainingExample ex;
      ex.features = extract_config_features(doc, cfg);
      ex.label = static_cast<int>(std::find(actions.begin(), actions.end(), a) - actions.begin());
      ex.allowed = legal_mask(cfg, actions);
      examples.push_back(std::move(ex));
      apply_action_in_place(cfg, a);
    }
  }
  MarginTrainOptions mo{options.rounds, options.margin, 1.0, options.seed};
  return train_margin_classifier(inventory, examples, mo, on_epoch);
}

DepDocument parse_transition(const DepDocument& doc, const LinearClassifier& model, bool labeled, LabelView view) {
  const int n = doc.size();
  std::vector<Action> actions;
  for (const auto& c : model.classes()) actions.push_back(parse_action(c));
  TransitionConfig cfg = TransitionConfig::initial(n);
  while (!cfg.terminal()) {
    auto mask = legal_mask(cfg, actions);
    const int best = model.predict(extract_config_features(doc, cfg), mask);
    Action a = best >= 0 ? actions[best] : Action::shift();
    if (best < 0) {
      // The inventory has no legal action here; fall back to a bare action
      // so decoding still completes.
      if (!is_legal(cfg, a)) a = Action::right(cfg.stack.size() == 2 ? std::string(kRootLabel) : std::string());
    }
    apply_action_in_place(cfg, a);
  }
  DepDocument out;
  out.doc_id = doc.doc_id;
  out.edus = doc.edus;
  for (int d = 1; d <= n; ++d) {
    DepEdge e;
    e.head = cfg.heads[d];
    e.dependent = d;
    e.provenance = Provenance::converted;
    e.confidence = Confidence::high;
    std::string label = cfg.labels[d];
    if (e.head == kRoot) {
      label = kRootLabel;
    } else if (!labeled || label.empty()) {
      label = kUnlabeled;
    }
    store_label(e, std::move(label), view);
    out.edges.push_back(std::move(e));
  }
  return out;
}

FeatureVector extract_relation_features(const DepDocument& doc, int dependent, bool use_tree_features) {
  FeatureVector fv = extract_arc_features(doc, doc.edge_of(dependent).head, dependent);
  fv.add("bias");
  if (use_tree_features) fv.merge(extract_tree_features(doc, dependent));
  return fv;
}

LinearClassifier train_relation_labeler(const std::vector<DepDocument>& corpus, const RelationTrainOptions& options,
                                        const std::function<void(int, double, const LinearClassifier&)>& on_epoch) {
  std::set<std::string> label_set;
  for (const auto& doc : corpus) {
    for (const auto& e : doc.edges) {
      const std::string l = edge_label(e, options.view);
      if (e.head != kRoot && !l.empty() && l != kRootLabel) label_set.insert(l);
    }
  }
  if (label_set.empty()) throw DataError("no labelled relations to train on");
  std::vector<std::string> classes(label_set.begin(), label_set.end());
  std::vector<TrainingExample> examples;
  for (const auto& doc : corpus) {
    if (!is_valid_tree(doc)) throw DataError("training document " + doc.doc_id + " is not a valid tree");
    for (const auto& e : doc.edges) {
      const std::string l = edge_label(e, options.view);
      if (e.head == kRoot || l.empty() || l == kRootLabel) continue;
      TrainingExample ex;
      ex.features = extract_relation_features(doc, e.dependent, options.use_tree_features);
      ex.label = static_cast<int>(std::find(classes.begin(), classes.end(), l) - classes.begin());
      examples.push_back(std::move(ex));
    }
  }
  MarginTrainOptions mo{options.epochs, options.margin, 1.0, options.seed};
  return train_margin_classifier(classes, examples, mo, on_epoch);
}

DepDocument label_relations(const DepDocument& doc, const LinearClassifier& model, bool use_tree_features,
                            LabelView view) {
  auto report = validate_tree(doc);
  if (!report.empty()) throw DataError("cannot label document " + doc.doc_id + ": " + report.front().message);
  DepDocument out = doc;
  for (auto& e : out.edges) {
    if (e.head == kRoot) {
      store_label(e, std::string(kRootLabel), view);
      continue;
    }
    const int best = model.predict(extract_relation_features(doc, e.dependent, use_tree_features));
    store_label(e, best >= 0 ? model.classes()[best] : std::string(kUnlabeled), view);
  }
  return out;
}

DepDocument two_stage_parse(const DepDocument& doc, const LinearClassifier& structure,
                            const LinearClassifier& relations, LabelView view) {
  return label_relations(parse_transition(doc, structure, false, view), relations, true, view);
}

}  // namespace ddp
