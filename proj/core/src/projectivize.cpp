#include <algorithm>

#include "ddp/error.hpp"
#include "ddp/transition.hpp"

namespace ddp {

namespace {

bool dominates(const std::vector<int>& heads, int ancestor, int node) {
  for (int v = node; v != kRoot; v = heads[v - 1]) {
    if (v == ancestor) return true;
  }
  return ancestor == kRoot;
}

// An arc is projective when its head dominates every EDU strictly between
// head and dependent.
bool arc_is_projective(const std::vector<int>& heads, int dep) {
  const int head = heads[dep - 1];
  for (int i = std::min(head, dep) + 1; i < std::max(head, dep); ++i) {
    if (!dominates(heads, head, i)) return false;
  }
  return true;
}

}  // namespace

DepDocument projectivize(const DepDocument& doc) {
  auto report = validate_tree(doc, ValidationPolicy{.single_root_child = false});
  if (!report.empty()) throw DataError("cannot projectivize document " + doc.doc_id + ": " + report.front().message);
  std::vector<int> heads = heads_of(doc);
  const int n = doc.size();
  while (true) {
    int shortest = -1;
    int shortest_len = 0;
    for (int d = 1; d <= n; ++d) {
      if (arc_is_projective(heads, d)) continue;
      const int len = std::abs(d - heads[d - 1]);
      if (shortest == -1 || len < shortest_len) {
        shortest = d;
        shortest_len = len;
      }
    }
    if (shortest == -1) break;
    // Arcs from the root never qualify, so the head has a head of its own.
    heads[shortest - 1] = heads[heads[shortest - 1] - 1];
  }
  DepDocument out = doc;
  for (int d = 1; d <= n; ++d) out.edge_of(d).head = heads[d - 1];
  return out;
}

}  // namespace ddp
