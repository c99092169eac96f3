#include "ddp/tree.hpp"

#include <algorithm>
#include <deque>

#include "ddp/error.hpp"
#include "ddp/text.hpp"

namespace ddp {

Edu make_edu(int index, std::string text) {
  Edu e;
  e.index = index;
  e.char_len = text::utf8_length(text);
  e.text = std::move(text);
  return e;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::annotated: return "annotated";
    case Provenance::complemented: return "complemented";
    case Provenance::converted: return "converted";
  }
  return "annotated";
}

std::string_view to_string(Confidence c) {
  return c == Confidence::high ? "high" : "review";
}

std::optional<Provenance> parse_provenance(std::string_view s) {
  if (s == "annotated") return Provenance::annotated;
  if (s == "complemented") return Provenance::complemented;
  if (s == "converted") return Provenance::converted;
  return std::nullopt;
}

std::optional<Confidence> parse_confidence(std::string_view s) {
  if (s == "high") return Confidence::high;
  if (s == "review") return Confidence::review;
  return std::nullopt;
}

DepDocument make_document(std::string doc_id, const std::vector<std::string>& texts,
                          const std::vector<int>& heads,
                          const std::vector<std::string>& labels) {
  DepDocument doc;
  doc.doc_id = std::move(doc_id);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    int index = static_cast<int>(i) + 1;
    doc.edus.push_back(make_edu(index, texts[i]));
    DepEdge e;
    e.head = i < heads.size() ? heads[i] : kRoot;
    e.dependent = index;
    if (i < labels.size()) {
      e.rel_original = labels[i];
    } else {
      e.rel_original = e.head == kRoot ? std::string(kRootLabel) : "joint";
    }
    doc.edges.push_back(std::move(e));
  }
  return doc;
}

std::vector<int> heads_of(const DepDocument& doc) {
  std::vector<int> heads;
  heads.reserve(doc.edges.size());
  for (const auto& e : doc.edges) heads.push_back(e.head);
  return heads;
}

std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::edge_count_mismatch: return "edge count mismatch";
    case ViolationKind::bad_edu_index: return "bad EDU index";
    case ViolationKind::empty_text: return "empty EDU text";
    case ViolationKind::dependent_mismatch: return "dependent mismatch";
    case ViolationKind::self_loop: return "self loop";
    case ViolationKind::head_out_of_range: return "head out of range";
    case ViolationKind::no_root: return "no root edge";
    case ViolationKind::multiple_root_children: return "multiple root children";
    case ViolationKind::cycle: return "cycle";
    case ViolationKind::unreachable: return "unreachable";
  }
  return "unknown";
}

namespace {

void add(ValidationReport& report, ViolationKind kind, int edu, std::string message) {
  report.push_back(Violation{kind, edu, std::move(message)});
}

}  // namespace

ValidationReport validate_tree(const DepDocument& doc, ValidationPolicy policy) {
  ValidationReport report;
  const int n = doc.size();

  for (int i = 0; i < n; ++i) {
    const Edu& e = doc.edus[i];
    if (e.index != i + 1) {
      add(report, ViolationKind::bad_edu_index, i + 1,
          "EDU at position " + std::to_string(i + 1) + " has index " + std::to_string(e.index));
    }
    if (e.text.empty()) {
      add(report, ViolationKind::empty_text, i + 1, "EDU " + std::to_string(i + 1) + " has empty text");
    }
  }

  if (static_cast<int>(doc.edges.size()) != n) {
    add(report, ViolationKind::edge_count_mismatch, 0,
        std::to_string(doc.edges.size()) + " edges for " + std::to_string(n) + " EDUs");
  }

  // Heads by position; -1 marks an edge that cannot be used for the
  // structural checks below.
  std::vector<int> head(n + 1, -1);
  for (std::size_t k = 0; k < doc.edges.size(); ++k) {
    const DepEdge& e = doc.edges[k];
    const int pos = static_cast<int>(k) + 1;
    if (e.dependent != pos) {
      add(report, ViolationKind::dependent_mismatch, pos,
          "edge " + std::to_string(pos) + " names dependent " + std::to_string(e.dependent));
    }
    if (pos > n) continue;
    if (e.head == pos) {
      add(report, ViolationKind::self_loop, pos, "EDU " + std::to_string(pos) + " heads itself");
      continue;
    }
    if (e.head < 0 || e.head > n) {
      add(report, ViolationKind::head_out_of_range, pos,
          "EDU " + std::to_string(pos) + " has head " + std::to_string(e.head));
      continue;
    }
    head[pos] = e.head;
  }

  std::vector<int> root_children;
  for (int d = 1; d <= n; ++d) {
    if (head[d] == kRoot) root_children.push_back(d);
  }
  if (n > 0 && root_children.empty()) {
    add(report, ViolationKind::no_root, 0, "no EDU attaches to the root");
  }
  if (policy.single_root_child && root_children.size() > 1) {
    for (std::size_t i = 1; i < root_children.size(); ++i) {
      add(report, ViolationKind::multiple_root_children, root_children[i],
          "EDU " + std::to_string(root_children[i]) + " is an additional root child");
    }
  }

  // Cycle detection over the functional graph d -> head[d].
  // state: 0 unvisited, 1 on current path, 2 done
  std::vector<int> state(n + 1, 0);
  std::vector<bool> in_cycle(n + 1, false);
  for (int start = 1; start <= n; ++start) {
    if (state[start]) continue;
    std::vector<int> path;
    int v = start;
    while (v > 0 && state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = head[v];
    }
    if (v > 0 && state[v] == 1) {
      auto it = std::find(path.begin(), path.end(), v);
      std::vector<int> members(it, path.end());
      std::sort(members.begin(), members.end());
      std::string msg = "cycle through EDUs";
      for (int m : members) {
        in_cycle[m] = true;
        msg += " " + std::to_string(m);
      }
      add(report, ViolationKind::cycle, members.front(), msg);
    }
    for (int p : path) state[p] = 2;
  }

  // Reachability from the root, for EDUs not already reported in a cycle.
  std::vector<std::vector<int>> children(n + 1);
  for (int d = 1; d <= n; ++d) {
    if (head[d] >= 0) children[head[d]].push_back(d);
  }
  std::vector<bool> reached(n + 1, false);
  std::deque<int> queue{kRoot};
  reached[kRoot] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int c : children[v]) {
      if (!reached[c]) {
        reached[c] = true;
        queue.push_back(c);
      }
    }
  }
  for (int d = 1; d <= n; ++d) {
    if (!reached[d] && !in_cycle[d] && head[d] >= 0) {
      add(report, ViolationKind::unreachable, d,
          "EDU " + std::to_string(d) + " is not reachable from the root");
    }
  }
  return report;
}

bool is_valid_tree(const DepDocument& doc, ValidationPolicy policy) {
  return validate_tree(doc, policy).empty();
}

bool is_projective_heads(const std::vector<int>& heads) {
  const int n = static_cast<int>(heads.size());
  for (int a = 1; a <= n; ++a) {
    int l1 = std::min(a, heads[a - 1]);
    int r1 = std::max(a, heads[a - 1]);
    for (int b = a + 1; b <= n; ++b) {
      int l2 = std::min(b, heads[b - 1]);
      int r2 = std::max(b, heads[b - 1]);
      if ((l1 < l2 && l2 < r1 && r1 < r2) || (l2 < l1 && l1 < r2 && r2 < r1)) return false;
    }
  }
  return true;
}

bool is_projective(const DepDocument& doc) {
  if (!is_valid_tree(doc, ValidationPolicy{.single_root_child = false})) {
    throw DataError("invalid tree");
  }
  return is_projective_heads(heads_of(doc));
}

int subtree_root(const DepDocument& doc, const std::set<int>& edu_set) {
  if (edu_set.empty()) throw DataError("not a subtree: empty EDU set");
  int found = -1;
  for (int m : edu_set) {
    if (m < 1 || m > doc.size()) {
      throw DataError("not a subtree: EDU " + std::to_string(m) + " out of range");
    }
    int h = doc.edge_of(m).head;
    if (h == kRoot || !edu_set.contains(h)) {
      if (found != -1) throw DataError("not a subtree");
      found = m;
    }
  }
  if (found == -1) throw DataError("not a subtree");
  return found;
}

TreeFeatures tree_features(const DepDocument& doc, int dependent) {
  TreeFeatures f;
  const int head = doc.edge_of(dependent).head;
  for (int v = dependent; v != kRoot && f.depth <= doc.size(); v = doc.edge_of(v).head) {
    ++f.depth;
  }
  for (const auto& e : doc.edges) {
    if (e.head == dependent) ++f.child_count;
    if (e.head == head && e.dependent != dependent) ++f.sibling_count;
  }
  f.head_distance = dependent - head;
  return f;
}

}  // namespace ddp
