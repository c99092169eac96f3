#pragma once

// Readers and writers for the tab-separated corpus and configuration files.
//
// All files are UTF-8 with LF line endings (CR before LF is tolerated on
// read). Lines whose first character is '#' are comments unless a format
// gives them meaning. Readers throw DataError carrying the 1-based line
// number of the first problem. Writers emit the canonical form, so
// write(read(f)) reproduces a canonical file byte for byte.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ddp/records.hpp"
#include "ddp/schemes.hpp"
#include "ddp/tree.hpp"

namespace ddp {

/// Placeholder written for an absent unified label.
inline constexpr std::string_view kUnmappedLabel = "_";

// .ddep -- "# doc <id>" header, then one row per EDU:
//   index, text, head, rel_original, rel_unified, provenance, confidence
// Each document is followed by one blank line.
std::vector<DepDocument> read_dep_corpus(std::istream& in);
std::vector<DepDocument> parse_dep_corpus(std::string_view content);
void write_dep_corpus(std::ostream& out, const std::vector<DepDocument>& docs);
std::string format_dep_corpus(const std::vector<DepDocument>& docs);

/// Reads only the EDU columns of a .ddep file (index and text). Head and
/// label columns may hold anything, including "_". Returned documents have
/// no edges.
std::vector<DepDocument> read_edu_corpus(std::istream& in);

// .pdr -- doc_id, kind, connective, label, arg1, arg2 (comma lists)
std::vector<PdtbRelationRecord> read_pdtb_records(std::istream& in);
void write_pdtb_records(std::ostream& out, const std::vector<PdtbRelationRecord>& records);

// .mkr -- label, marker, left|right
std::vector<MarkerRule> read_marker_rules(std::istream& in);
void write_marker_rules(std::ostream& out, const std::vector<MarkerRule>& rules);

// .map -- scheme, original, unified. Duplicate (scheme, original) keys are
// rejected. Written sorted by key.
RelationMapping read_relation_mapping(std::istream& in);
void write_relation_mapping(std::ostream& out, const RelationMapping& mapping);

// .rvq -- doc_id, dependent, head, label, reason
std::vector<ReviewItem> read_review_queue(std::istream& in);
void write_review_queue(std::ostream& out, const std::vector<ReviewItem>& items);

// .fix -- doc_id, dependent, new_head, new_label
std::vector<Correction> read_corrections(std::istream& in);
void write_corrections(std::ostream& out, const std::vector<Correction>& corrections);

// .spl -- doc_id, original_index, part texts ('|'-separated),
//         intra edges (head:dep:label, comma list)
std::vector<EduSplitRecord> read_edu_splits(std::istream& in);
void write_edu_splits(std::ostream& out, const std::vector<EduSplitRecord>& splits);

/// Head-direction overrides for inter-argument edges: label<TAB>arg1|arg2.
struct HeadOverride {
  std::string label;
  bool arg2_is_head = false;

  friend bool operator==(const HeadOverride&, const HeadOverride&) = default;
};
std::vector<HeadOverride> read_head_overrides(std::istream& in);

}  // namespace ddp
