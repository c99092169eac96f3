#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ddp {

/// Index of the artificial root node. EDUs are numbered from 1.
inline constexpr int kRoot = 0;

/// Label carried by the single edge attached to the artificial root.
inline constexpr std::string_view kRootLabel = "root";

/// Elementary discourse unit.
struct Edu {
  int index = 0;
  std::string text;
  int char_len = 0;

  friend bool operator==(const Edu&, const Edu&) = default;
};

/// Builds an Edu whose char_len is the UTF-8 code point count of `text`.
Edu make_edu(int index, std::string text);

enum class Provenance { annotated, complemented, converted };
enum class Confidence { high, review };

std::string_view to_string(Provenance p);
std::string_view to_string(Confidence c);
std::optional<Provenance> parse_provenance(std::string_view s);
std::optional<Confidence> parse_confidence(std::string_view s);

struct DepEdge {
  int head = kRoot;
  int dependent = 1;
  std::string rel_original;
  std::optional<std::string> rel_unified;
  Provenance provenance = Provenance::annotated;
  Confidence confidence = Confidence::high;

  friend bool operator==(const DepEdge&, const DepEdge&) = default;
};

/// A document with a dependency tree over its EDUs. The tree is stored as a
/// head sequence: `edges[k]` is the incoming edge of EDU `k + 1`.
struct DepDocument {
  std::string doc_id;
  std::vector<Edu> edus;
  std::vector<DepEdge> edges;

  int size() const { return static_cast<int>(edus.size()); }
  const DepEdge& edge_of(int dependent) const { return edges.at(dependent - 1); }
  DepEdge& edge_of(int dependent) { return edges.at(dependent - 1); }
  const Edu& edu(int index) const { return edus.at(index - 1); }

  friend bool operator==(const DepDocument&, const DepDocument&) = default;
};

/// Convenience constructor for tests and synthetic data: one head and label
/// per EDU, all edges annotated/high.
DepDocument make_document(std::string doc_id, const std::vector<std::string>& texts,
                          const std::vector<int>& heads,
                          const std::vector<std::string>& labels = {});

/// Head of each EDU in order (size n).
std::vector<int> heads_of(const DepDocument& doc);

enum class ViolationKind {
  edge_count_mismatch,
  bad_edu_index,
  empty_text,
  dependent_mismatch,
  self_loop,
  head_out_of_range,
  no_root,
  multiple_root_children,
  cycle,
  unreachable,
};

std::string_view to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  int edu = 0;  // offending EDU index, 0 when the violation is document-wide
  std::string message;
};

struct ValidationPolicy {
  bool single_root_child = true;
};

using ValidationReport = std::vector<Violation>;

/// Checks every DepDocument invariant. Never throws; an empty report means
/// the document is a valid rooted tree.
ValidationReport validate_tree(const DepDocument& doc, ValidationPolicy policy = {});

bool is_valid_tree(const DepDocument& doc, ValidationPolicy policy = {});

/// True iff no two arcs cross with the root laid out at position 0.
/// Throws DataError("invalid tree") if the document fails validation.
bool is_projective(const DepDocument& doc);

/// Same check over a raw head sequence (heads[k] is the head of k+1). The
/// sequence must describe a tree rooted at 0; this is not re-validated.
bool is_projective_heads(const std::vector<int>& heads);

/// The unique member of `edu_set` whose head lies outside the set.
/// Throws DataError("not a subtree") when there is none or more than one.
int subtree_root(const DepDocument& doc, const std::set<int>& edu_set);

struct TreeFeatures {
  int depth = 0;
  int sibling_count = 0;
  int child_count = 0;
  int head_distance = 0;

  friend bool operator==(const TreeFeatures&, const TreeFeatures&) = default;
};

/// Structural context of one EDU in a valid tree. `head_distance` is the
/// signed offset dependent - head.
TreeFeatures tree_features(const DepDocument& doc, int dependent);

}  // namespace ddp
