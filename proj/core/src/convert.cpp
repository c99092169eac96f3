#include "ddp/convert.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "ddp/error.hpp"
#include "ddp/text.hpp"

namespace ddp {

namespace {

constexpr std::string_view kFallbackLabel = "joint";

int percolate(const RstTree& t, std::vector<int>& head, std::vector<std::string>& label) {
  if (t.is_leaf()) return t.leaf().edu_index;
  const auto& node = t.internal();
  std::vector<int> child_heads;
  child_heads.reserve(node.children.size());
  for (const auto& c : node.children) child_heads.push_back(percolate(c.tree, head, label));
  std::size_t nucleus = 0;
  while (node.children[nucleus].nuclearity != Nuclearity::N) ++nucleus;
  const int h = child_heads[nucleus];
  for (std::size_t i = 0; i < child_heads.size(); ++i) {
    if (i == nucleus) continue;
    head[child_heads[i]] = h;
    label[child_heads[i]] = node.label;
  }
  return h;
}

std::string set_string(const std::vector<int>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

struct MarkerDecision {
  std::string label;
  Attach attach = Attach::left;
  bool matched = false;
  std::optional<std::string> competing_label;
};

MarkerDecision decide_pair(std::string_view left, std::string_view right, std::span<const MarkerRule> rules) {
  MarkerDecision d;
  d.label = kFallbackLabel;
  int best_len = -1;
  const MarkerRule* best = nullptr;
  for (const auto& rule : rules) {
    if (rule.marker.empty()) continue;
    if (left.find(rule.marker) == std::string_view::npos && right.find(rule.marker) == std::string_view::npos) {
      continue;
    }
    const int len = text::utf8_length(rule.marker);
    if (len > best_len) {
      best_len = len;
      best = &rule;
      d.competing_label.reset();
    } else if (len == best_len && !d.competing_label &&
               (rule.label != best->label || rule.attach != best->attach)) {
      d.competing_label = rule.label;
    }
  }
  if (best) {
    d.label = best->label;
    d.attach = best->attach;
    d.matched = true;
  }
  return d;
}

// Incrementally assembles a head sequence over EDUs 1..n, refusing any
// attachment that would give an EDU a second head or close a cycle.
class TreeBuilder {
 public:
  TreeBuilder(std::string doc_id, std::span<const Edu> edus, std::span<const MarkerRule> rules)
      : doc_id_(std::move(doc_id)), edus_(edus), rules_(rules) {
    for (const auto& e : edus_) {
      head_[e.index] = -1;
      text_[e.index] = e.text;
    }
  }

  bool attached(int d) const { return head_.at(d) != -1; }
  int head(int d) const { return head_.at(d); }

  void attach(int dep, int head, std::string label, Provenance prov, Confidence conf) {
    if (head_.at(dep) != -1) {
      throw DataError("conflicting heads for EDU " + std::to_string(dep) + " in document " + doc_id_);
    }
    if (head == dep) throw DataError("EDU " + std::to_string(dep) + " would head itself in document " + doc_id_);
    // Walking up from the new head must not reach the dependent.
    std::vector<int> chain{dep, head};
    for (int v = head; v != kRoot && v != -1; v = head_.at(v)) {
      if (v == dep) {
        std::string msg = "records induce a cycle in document " + doc_id_ + ":";
        for (int c : chain) msg += " " + std::to_string(c);
        throw DataError(msg);
      }
      if (v != head) chain.push_back(v);
    }
    head_[dep] = head;
    DepEdge e;
    e.head = head;
    e.dependent = dep;
    e.rel_original = std::move(label);
    e.provenance = prov;
    e.confidence = conf;
    edges_[dep] = std::move(e);
  }

  // Joins fragment roots (sorted by position) into one subtree. Members in
  // `locked` already have a head outside the span and cannot be moved.
  int join(const std::vector<int>& roots, const std::set<int>& locked) {
    int r = roots.front();
    for (std::size_t k = 1; k < roots.size(); ++k) {
      const int prev = roots[k - 1];
      const int cur = roots[k];
      MarkerDecision d = decide_pair(text_.at(prev), text_.at(cur), rules_);
      const Confidence conf = d.matched && !d.competing_label ? Confidence::high : Confidence::review;
      int dep = 0, head = 0;
      bool flipped = false;
      if (d.attach == Attach::left) {
        if (!locked.contains(cur)) {
          dep = cur, head = prev;
        } else {
          dep = r, head = cur, flipped = true;
        }
      } else {
        if (!locked.contains(r)) {
          dep = r, head = cur;
        } else {
          dep = cur, head = prev, flipped = true;
        }
      }
      attach(dep, head, d.label, Provenance::complemented, flipped ? Confidence::review : conf);
      if (head == cur) r = cur;
      const DepEdge& e = edges_.at(dep);
      if (!d.matched) queue(e, ReviewReason::no_marker_match, e.rel_original);
      if (d.competing_label) queue(e, ReviewReason::ambiguous_marker, *d.competing_label);
      if (flipped) queue(e, ReviewReason::head_direction_default, e.rel_original);
    }
    return r;
  }

  // Makes `span` a single subtree and returns its root.
  int settle(const std::vector<int>& span, const char* what) {
    std::set<int> members(span.begin(), span.end());
    std::vector<int> roots;
    std::set<int> locked;
    for (int m : span) {
      const int h = head_.at(m);
      if (h == -1) {
        roots.push_back(m);
      } else if (h == kRoot || !members.contains(h)) {
        roots.push_back(m);
        locked.insert(m);
      }
    }
    if (locked.size() > 1) {
      throw DataError(std::string(what) + " " + set_string(span) + " in document " + doc_id_ +
                      " cannot form a subtree");
    }
    if (roots.empty()) {
      throw DataError(std::string(what) + " " + set_string(span) + " in document " + doc_id_ + " has no root");
    }
    return join(roots, locked);
  }

  void queue(const DepEdge& e, ReviewReason reason, std::string suggestion) {
    review_.push_back(ReviewItem{doc_id_, e, reason, std::move(suggestion)});
  }

  std::vector<int> unattached() const {
    std::vector<int> out;
    for (const auto& e : edus_) {
      if (head_.at(e.index) == -1) out.push_back(e.index);
    }
    return out;
  }

  std::vector<DepEdge> edges_in_order() const {
    std::vector<DepEdge> out;
    for (const auto& e : edus_) {
      auto it = edges_.find(e.index);
      if (it != edges_.end()) out.push_back(it->second);
    }
    return out;
  }

  std::vector<ReviewItem> take_review() { return std::move(review_); }

 private:
  std::string doc_id_;
  std::span<const Edu> edus_;
  std::span<const MarkerRule> rules_;
  std::map<int, int> head_;
  std::map<int, std::string> text_;
  std::map<int, DepEdge> edges_;
  std::vector<ReviewItem> review_;
};

void check_split(const EduSplitRecord& rec, int n) {
  const std::string where = "split of EDU " + std::to_string(rec.original_index) + " in document " + rec.doc_id;
  if (rec.original_index < 1 || rec.original_index > n) throw DataError(where + ": index out of range");
  const int parts = static_cast<int>(rec.parts.size());
  if (parts < 2) throw DataError(where + ": needs at least two parts");
  for (const auto& p : rec.parts) {
    if (p.empty()) throw DataError(where + ": empty part text");
  }
  if (static_cast<int>(rec.intra_edges.size()) != parts - 1) throw DataError(where + ": intra edges do not form a tree");
  std::vector<int> head(parts + 1, 0);
  for (const auto& e : rec.intra_edges) {
    if (e.head_part < 1 || e.head_part > parts || e.dep_part < 1 || e.dep_part > parts || e.head_part == e.dep_part) {
      throw DataError(where + ": intra edge part out of range");
    }
    if (head[e.dep_part] != 0) throw DataError(where + ": intra edges do not form a tree");
    head[e.dep_part] = e.head_part;
  }
  for (int p = 1; p <= parts; ++p) {
    int steps = 0;
    for (int v = p; head[v] != 0; v = head[v]) {
      if (++steps > parts) throw DataError(where + ": intra edges contain a cycle");
    }
  }
}

int split_root(const EduSplitRecord& rec) {
  std::vector<bool> has_head(rec.parts.size() + 1, false);
  for (const auto& e : rec.intra_edges) has_head[e.dep_part] = true;
  for (int p = 1; p <= static_cast<int>(rec.parts.size()); ++p) {
    if (!has_head[p]) return p;
  }
  return 1;
}

}  // namespace

DepDocument rst_to_dep(const std::string& doc_id, const RstTree& tree) {
  auto problems = validate_rst(tree);
  if (!problems.empty()) throw DataError("invalid RST tree for document " + doc_id + ": " + problems.front());
  auto leaves = rst_leaves(tree);
  const int n = static_cast<int>(leaves.size());
  std::vector<int> head(n + 1, kRoot);
  std::vector<std::string> label(n + 1, std::string(kRootLabel));
  const int top = percolate(tree, head, label);
  head[top] = kRoot;
  label[top] = kRootLabel;

  DepDocument doc;
  doc.doc_id = doc_id;
  for (int i = 1; i <= n; ++i) {
    doc.edus.push_back(make_edu(i, leaves[i - 1]->text));
    DepEdge e;
    e.head = head[i];
    e.dependent = i;
    e.rel_original = label[i];
    e.provenance = Provenance::converted;
    e.confidence = Confidence::high;
    doc.edges.push_back(std::move(e));
  }
  return doc;
}

DepDocument apply_edu_splits(const DepDocument& doc, std::span<const EduSplitRecord> splits) {
  const int n = doc.size();
  std::map<int, const EduSplitRecord*> by_index;
  for (const auto& rec : splits) {
    if (rec.doc_id != doc.doc_id) continue;
    check_split(rec, n);
    if (!by_index.emplace(rec.original_index, &rec).second) {
      throw DataError("index collision: EDU " + std::to_string(rec.original_index) + " of document " + doc.doc_id +
                      " is split twice");
    }
  }
  if (by_index.empty()) return doc;

  // start[k]: new index of the first part of old EDU k; rep[k]: new index of
  // the part that stands in for old EDU k.
  std::vector<int> start(n + 1, 0), rep(n + 1, 0);
  int next = 1;
  for (int k = 1; k <= n; ++k) {
    start[k] = next;
    auto it = by_index.find(k);
    if (it == by_index.end()) {
      rep[k] = next;
      next += 1;
    } else {
      rep[k] = next + split_root(*it->second) - 1;
      next += static_cast<int>(it->second->parts.size());
    }
  }

  DepDocument out;
  out.doc_id = doc.doc_id;
  for (int k = 1; k <= n; ++k) {
    const DepEdge& orig = doc.edge_of(k);
    auto it = by_index.find(k);
    if (it == by_index.end()) {
      out.edus.push_back(make_edu(start[k], doc.edu(k).text));
      DepEdge e = orig;
      e.dependent = start[k];
      e.head = orig.head == kRoot ? kRoot : rep[orig.head];
      out.edges.push_back(std::move(e));
      continue;
    }
    const EduSplitRecord& rec = *it->second;
    std::vector<const IntraEdge*> incoming(rec.parts.size() + 1, nullptr);
    for (const auto& ie : rec.intra_edges) incoming[ie.dep_part] = &ie;
    for (int p = 1; p <= static_cast<int>(rec.parts.size()); ++p) {
      const int index = start[k] + p - 1;
      out.edus.push_back(make_edu(index, rec.parts[p - 1]));
      DepEdge e;
      if (incoming[p] == nullptr) {
        e = orig;
        e.head = orig.head == kRoot ? kRoot : rep[orig.head];
      } else {
        e.head = start[k] + incoming[p]->head_part - 1;
        e.rel_original = incoming[p]->label;
        e.provenance = Provenance::annotated;
        e.confidence = Confidence::high;
      }
      e.dependent = index;
      out.edges.push_back(std::move(e));
    }
  }
  return out;
}

ComplementResult complement_subtree(std::span<const Edu> edus, std::span<const MarkerRule> rules,
                                    const std::string& doc_id) {
  ComplementResult result;
  if (edus.empty()) return result;
  TreeBuilder builder(doc_id, edus, rules);
  std::vector<int> span;
  for (const auto& e : edus) span.push_back(e.index);
  result.root = builder.join(span, {});
  result.edges = builder.edges_in_order();
  result.review = builder.take_review();
  return result;
}

PdtbConversion pdtb_to_dep(const std::string& doc_id, std::span<const Edu> edus,
                           std::span<const PdtbRelationRecord> records, std::span<const MarkerRule> rules,
                           const PdtbConversionOptions& options) {
  const int n = static_cast<int>(edus.size());
  for (int i = 0; i < n; ++i) {
    if (edus[i].index != i + 1) throw DataError("EDUs of document " + doc_id + " are not numbered 1..n");
  }
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    for (const auto* arg : {&rec.arg1, &rec.arg2}) {
      if (arg->empty()) throw DataError("record " + std::to_string(r + 1) + " of document " + doc_id + " has an empty argument");
      for (int i : *arg) {
        if (i < 1 || i > n) {
          throw DataError("record " + std::to_string(r + 1) + " of document " + doc_id + " references EDU " +
                          std::to_string(i) + " out of range");
        }
      }
    }
    std::vector<int> common;
    std::set_intersection(rec.arg1.begin(), rec.arg1.end(), rec.arg2.begin(), rec.arg2.end(),
                          std::back_inserter(common));
    if (!common.empty()) throw DataError("record " + std::to_string(r + 1) + " of document " + doc_id + " has overlapping arguments");
  }

  std::map<std::string, bool> arg2_heads;
  for (const auto& o : options.head_overrides) arg2_heads[o.label] = o.arg2_is_head;

  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].arg1.size() + records[a].arg2.size() < records[b].arg1.size() + records[b].arg2.size();
  });

  PdtbConversion out;
  if (n == 0) {
    out.doc.doc_id = doc_id;
    return out;
  }
  TreeBuilder builder(doc_id, edus, rules);
  for (std::size_t idx : order) {
    const auto& rec = records[idx];
    const int root1 = builder.settle(rec.arg1, "ARG1");
    const int root2 = builder.settle(rec.arg2, "ARG2");
    auto ov = arg2_heads.find(rec.label);
    const bool reversed = ov != arg2_heads.end() && ov->second;
    const int head = reversed ? root2 : root1;
    const int dep = reversed ? root1 : root2;
    if (builder.attached(dep)) {
      if (builder.head(dep) == head) continue;  // duplicate record
      throw DataError("conflicting heads for EDU " + std::to_string(dep) + " in document " + doc_id);
    }
    builder.attach(dep, head, rec.label, Provenance::annotated, reversed ? Confidence::review : Confidence::high);
    if (reversed) {
      DepEdge e;
      e.head = head;
      e.dependent = dep;
      e.rel_original = rec.label;
      e.provenance = Provenance::annotated;
      e.confidence = Confidence::review;
      builder.queue(e, ReviewReason::head_direction_default, rec.label);
    }
  }

  const int top = builder.join(builder.unattached(), {});
  builder.attach(top, kRoot, std::string(kRootLabel), Provenance::complemented, Confidence::high);

  out.doc.doc_id = doc_id;
  out.doc.edus.assign(edus.begin(), edus.end());
  out.doc.edges = builder.edges_in_order();
  out.review = builder.take_review();
  return out;
}

MappingResult map_relations(const std::vector<DepDocument>& docs, const RelationMapping& mapping, SchemeId scheme,
                            bool strict) {
  MappingResult result;
  result.docs = docs;
  std::set<std::string> seen_missing;
  for (auto& doc : result.docs) {
    for (auto& e : doc.edges) {
      if (e.head == kRoot) {
        e.rel_unified = std::string(kRootLabel);
        continue;
      }
      if (const std::string* u = mapping.find(scheme, e.rel_original)) {
        e.rel_unified = *u;
        continue;
      }
      if (strict) {
        throw DataError("no mapping for " + std::string(to_string(scheme)) + " label '" + e.rel_original +
                        "' (document " + doc.doc_id + ", EDU " + std::to_string(e.dependent) + ")");
      }
      e.rel_unified.reset();
      ++result.misses;
      if (seen_missing.insert(e.rel_original).second) result.missing_labels.push_back(e.rel_original);
    }
  }
  return result;
}

DepDocument apply_corrections(const DepDocument& doc, std::span<const Correction> corrections) {
  DepDocument out = doc;
  std::set<int> touched;
  for (const auto& c : corrections) {
    if (!c.doc_id.empty() && c.doc_id != doc.doc_id) continue;
    if (c.dependent < 1 || c.dependent > doc.size()) {
      throw DataError("correction targets EDU " + std::to_string(c.dependent) + " outside document " + doc.doc_id);
    }
    if (c.new_head < 0 || c.new_head > doc.size()) {
      throw DataError("correction head " + std::to_string(c.new_head) + " out of range in document " + doc.doc_id);
    }
    if (c.new_label.empty()) throw DataError("correction for EDU " + std::to_string(c.dependent) + " has no label");
    if (!touched.insert(c.dependent).second) {
      throw DataError("EDU " + std::to_string(c.dependent) + " of document " + doc.doc_id + " corrected twice");
    }
    DepEdge& e = out.edge_of(c.dependent);
    e.head = c.new_head;
    e.rel_original = c.new_label;
    e.rel_unified.reset();
    e.confidence = Confidence::high;
  }
  auto report = validate_tree(out);
  if (!report.empty()) {
    throw DataError("corrections rejected for document " + doc.doc_id + ": " + report.front().message);
  }
  return out;
}

}  // namespace ddp
