#pragma once

// Arc-standard transition parsing over EDUs.
//
// The artificial root sits at the bottom of the stack from the start, so a
// document of n EDUs is parsed in exactly 2n transitions: n SHIFTs and n
// arc actions, the last of which attaches the top EDU to the root.
//
//   SHIFT         move the buffer front onto the stack
//   LEFT_ARC(l)   second-top becomes a dependent of top; pop second-top
//   RIGHT_ARC(l)  top becomes a dependent of second-top; pop top

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ddp/features.hpp"
#include "ddp/linear.hpp"
#include "ddp/stats.hpp"
#include "ddp/tree.hpp"

namespace ddp {

/// Label given to non-root edges by the unlabelled first stage.
inline constexpr std::string_view kUnlabeled = "_";

enum class ActionType { shift, left_arc, right_arc };

struct Action {
  ActionType type = ActionType::shift;
  std::string label;  // empty for unlabelled actions and SHIFT

  static Action shift() { return {ActionType::shift, {}}; }
  static Action left(std::string label = {}) { return {ActionType::left_arc, std::move(label)}; }
  static Action right(std::string label = {}) { return {ActionType::right_arc, std::move(label)}; }

  friend bool operator==(const Action&, const Action&) = default;
};

/// "SHIFT", "LEFT_ARC", "RIGHT_ARC:joint", ...
std::string to_string(const Action& a);
Action parse_action(std::string_view s);

struct TransitionConfig {
  std::vector<int> stack;  // top is back()
  std::deque<int> buffer;
  std::vector<int> heads;  // heads[d], -1 while unattached; heads[0] unused
  std::vector<std::string> labels;

  static TransitionConfig initial(int n);
  int size() const { return static_cast<int>(heads.size()) - 1; }
  bool terminal() const { return buffer.empty() && stack.size() == 1; }
  int attached_children(int node, bool left_side) const;
};

bool is_legal(const TransitionConfig& cfg, const Action& a);

/// Applies `a`, throwing DataError("illegal action ...") when it is not
/// legal in `cfg`.
TransitionConfig apply_action(const TransitionConfig& cfg, const Action& a);
void apply_action_in_place(TransitionConfig& cfg, const Action& a);

/// Static arc-standard oracle. With `labeled` the arc actions carry gold
/// labels (the root attachment carries "root"). Throws DataError for a
/// non-projective gold tree.
std::vector<Action> oracle_actions(const DepDocument& gold, bool labeled = true);

/// Features of a parser configuration: boundary characters, lengths and
/// sentence-start flags of the two stack tops and the buffer front, their
/// distance, and partial-arc counts.
FeatureVector extract_config_features(const DepDocument& doc, const TransitionConfig& cfg);

/// Class inventory of a transition classifier. SHIFT comes first, then all
/// LEFT_ARC classes, then all RIGHT_ARC classes, which fixes the tie-break
/// order of greedy decoding.
std::vector<std::string> action_inventory(const std::vector<std::string>& labels, bool labeled);

enum class NonProjective { lift, skip };

struct TransitionTrainOptions {
  bool labeled = true;
  LabelView view = LabelView::original;
  int rounds = 10;
  std::uint64_t seed = 1;
  double margin = 1.0;
  NonProjective non_projective = NonProjective::lift;
};

/// Trains the action classifier on oracle derivations of the corpus.
/// Throws DataError when no document is usable.
LinearClassifier train_transition_parser(const std::vector<DepDocument>& corpus, const TransitionTrainOptions& options,
                                         const std::function<void(int, double, const LinearClassifier&)>& on_epoch = {});

/// Greedy decoding with illegal actions masked. The result is always a
/// valid tree. Labels go to rel_original (or rel_unified for the unified
/// view); unlabelled parses use "_" for non-root edges.
DepDocument parse_transition(const DepDocument& doc, const LinearClassifier& model, bool labeled,
                             LabelView view = LabelView::original);

struct RelationTrainOptions {
  bool use_tree_features = true;
  LabelView view = LabelView::original;
  int epochs = 10;
  std::uint64_t seed = 1;
  double margin = 1.0;
};

/// Relation label of an edge under a view; empty for an unmapped unified
/// label.
std::string edge_label(const DepEdge& e, LabelView view);

FeatureVector extract_relation_features(const DepDocument& doc, int dependent, bool use_tree_features);

/// Trains a relation classifier on the gold non-root edges of the corpus.
LinearClassifier train_relation_labeler(const std::vector<DepDocument>& corpus, const RelationTrainOptions& options,
                                        const std::function<void(int, double, const LinearClassifier&)>& on_epoch = {});

/// Predicts a label for every non-root edge of a valid tree; the root edge
/// keeps "root". Throws DataError for an invalid tree.
DepDocument label_relations(const DepDocument& doc, const LinearClassifier& model, bool use_tree_features = true,
                            LabelView view = LabelView::original);

/// Unlabelled transition parse followed by relation labelling.
DepDocument two_stage_parse(const DepDocument& doc, const LinearClassifier& structure,
                            const LinearClassifier& relations, LabelView view = LabelView::original);

/// Makes a tree projective by lifting: while some arc is non-projective,
/// the dependent of the shortest such arc is reattached to its
/// grandparent. Labels are kept; projective input is returned unchanged.
DepDocument projectivize(const DepDocument& doc);

}  // namespace ddp
