#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddp/tree.hpp"

namespace ddp {

enum class RelationKind { explicit_, implicit };

std::string_view to_string(RelationKind k);
std::optional<RelationKind> parse_relation_kind(std::string_view s);

/// One predicate-argument relation: a connective relating two EDU sets.
/// Argument sets are kept sorted and free of duplicates.
struct PdtbRelationRecord {
  std::string doc_id;
  RelationKind kind = RelationKind::explicit_;
  std::string connective;
  std::string label;
  std::vector<int> arg1;
  std::vector<int> arg2;

  friend bool operator==(const PdtbRelationRecord&, const PdtbRelationRecord&) = default;
};

enum class Attach { left, right };

/// A discourse marker for a relation type. `attach` names which EDU of an
/// adjacent pair becomes the head.
struct MarkerRule {
  std::string label;
  std::string marker;
  Attach attach = Attach::left;

  friend bool operator==(const MarkerRule&, const MarkerRule&) = default;
};

struct IntraEdge {
  int head_part = 1;  // 1-based part numbers
  int dep_part = 2;
  std::string label;

  friend bool operator==(const IntraEdge&, const IntraEdge&) = default;
};

/// Subdivision of one EDU into finer parts, with the relations between them.
struct EduSplitRecord {
  std::string doc_id;
  int original_index = 1;
  std::vector<std::string> parts;
  std::vector<IntraEdge> intra_edges;

  friend bool operator==(const EduSplitRecord&, const EduSplitRecord&) = default;
};

enum class ReviewReason { no_marker_match, ambiguous_marker, head_direction_default };

std::string_view to_string(ReviewReason r);
std::optional<ReviewReason> parse_review_reason(std::string_view s);

/// An automatically added edge queued for manual checking.
struct ReviewItem {
  std::string doc_id;
  DepEdge edge;
  ReviewReason reason = ReviewReason::no_marker_match;
  std::string suggestion;

  friend bool operator==(const ReviewItem&, const ReviewItem&) = default;
};

struct Correction {
  std::string doc_id;
  int dependent = 1;
  int new_head = 0;
  std::string new_label;

  friend bool operator==(const Correction&, const Correction&) = default;
};

}  // namespace ddp
