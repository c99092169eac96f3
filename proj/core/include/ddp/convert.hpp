#pragma once

#include <span>
#include <string>
#include <vector>

#include "ddp/corpus_io.hpp"
#include "ddp/records.hpp"
#include "ddp/rst.hpp"
#include "ddp/schemes.hpp"
#include "ddp/tree.hpp"

namespace ddp {

/// Flattens a constituency discourse tree into dependencies by head
/// percolation. The head of an internal node is the head of its leftmost
/// nucleus; every other child's head attaches to it with the node's label.
/// Edges are marked converted/high. Throws DataError on an invalid tree.
DepDocument rst_to_dep(const std::string& doc_id, const RstTree& tree);

/// Subdivides EDUs. The intra-tree root part inherits the original EDU's
/// incoming edge and its dependents; the remaining parts attach per the
/// record's intra edges. Indices after each split are renumbered. Records
/// for other documents are ignored.
DepDocument apply_edu_splits(const DepDocument& doc, std::span<const EduSplitRecord> splits);

struct ComplementResult {
  std::vector<DepEdge> edges;
  std::vector<ReviewItem> review;
  int root = 0;
};

/// Connects a run of EDUs into one subtree using discourse markers.
///
/// Adjacent pairs are scanned left to right. For each pair the matching
/// rule with the longest marker found in either EDU's text decides the
/// label and which side heads; ties go to the earlier rule. A left-headed
/// pair attaches the right EDU to the left one; a right-headed pair makes
/// the right EDU head the subtree built so far. Unmatched pairs fall back
/// to "joint", left-headed, and are queued for review.
ComplementResult complement_subtree(std::span<const Edu> edus, std::span<const MarkerRule> rules,
                                    const std::string& doc_id = {});

struct PdtbConversionOptions {
  std::vector<HeadOverride> head_overrides;
};

struct PdtbConversion {
  DepDocument doc;
  std::vector<ReviewItem> review;
};

/// Builds a dependency tree from predicate-argument relation records.
///
///   1. records are processed from the smallest argument span up; inside
///      each argument, unattached fragments are joined by complement rules
///   2. the root of ARG2's subtree attaches to the root of ARG1's subtree
///      with the record's label (an override may reverse the direction)
///   3. leftover fragments are joined by complement rules over their roots
///   4. the final root attaches to 0
///
/// Throws DataError for records that would create a cycle or give an EDU
/// two different heads, and for argument indices out of range.
PdtbConversion pdtb_to_dep(const std::string& doc_id, std::span<const Edu> edus,
                           std::span<const PdtbRelationRecord> records, std::span<const MarkerRule> rules,
                           const PdtbConversionOptions& options = {});

struct MappingResult {
  std::vector<DepDocument> docs;
  int misses = 0;
  std::vector<std::string> missing_labels;  // distinct, in first-seen order
};

/// Fills rel_unified from the mapping. Root edges get "root". Missing keys
/// throw in strict mode, otherwise the label stays unmapped and is counted.
MappingResult map_relations(const std::vector<DepDocument>& docs, const RelationMapping& mapping, SchemeId scheme,
                            bool strict);

/// Replaces edges per the corrections and returns the new document. The
/// batch is atomic: if the result is not a valid tree nothing is applied
/// and DataError is thrown. Corrected edges become high confidence and
/// lose their unified label.
DepDocument apply_corrections(const DepDocument& doc, std::span<const Correction> corrections);

}  // namespace ddp
