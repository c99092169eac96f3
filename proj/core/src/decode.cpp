#include "ddp/decode.hpp"

#include <limits>

namespace ddp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Dense table indexed [s][t] over positions 0..n.
struct Table {
  explicit Table(int n) : n1(n + 1), score(n1 * n1, kNegInf), split(n1 * n1, -1) {}
  double& at(int s, int t) { return score[s * n1 + t]; }
  int& arg(int s, int t) { return split[s * n1 + t]; }
  int n1;
  std::vector<double> score;
  std::vector<int> split;
};

class Eisner {
 public:
  explicit Eisner(const ScoreMatrix& s) : s_(s), n_(s.size()), cl_(n_), cr_(n_), il_(n_), ir_(n_) {
    for (int i = 0; i <= n_; ++i) {
      cl_.at(i, i) = 0.0;
      cr_.at(i, i) = 0.0;
    }
    for (int len = 1; len <= n_; ++len) {
      for (int a = 0; a + len <= n_; ++a) {
        const int b = a + len;
        // incomplete spans: a <- b (left) and a -> b (right)
        for (int r = a; r < b; ++r) {
          const double inner = cr_.at(a, r) + cl_.at(r + 1, b);
          if (a != 0 && inner + s_(b, a) > il_.at(a, b)) {
            il_.at(a, b) = inner + s_(b, a);
            il_.arg(a, b) = r;
          }
          if (inner + s_(a, b) > ir_.at(a, b)) {
            ir_.at(a, b) = inner + s_(a, b);
            ir_.arg(a, b) = r;
          }
        }
        // complete spans headed at b (left) and at a (right)
        for (int r = a; r < b; ++r) {
          const double v = cl_.at(a, r) + il_.at(r, b);
          if (v > cl_.at(a, b)) {
            cl_.at(a, b) = v;
            cl_.arg(a, b) = r;
          }
        }
        for (int r = a + 1; r <= b; ++r) {
          const double v = ir_.at(a, r) + cr_.at(r, b);
          if (v > cr_.at(a, b)) {
            cr_.at(a, b) = v;
            cr_.arg(a, b) = r;
          }
        }
      }
    }
  }

  std::vector<int> multi_root() {
    std::vector<int> heads(n_ + 1, 0);
    walk_cr(0, n_, heads);
    return {heads.begin() + 1, heads.end()};
  }

  std::vector<int> single_root() {
    int best_r = 1;
    double best = kNegInf;
    for (int r = 1; r <= n_; ++r) {
      const double v = s_(0, r) + cl_.at(1, r) + cr_.at(r, n_);
      if (v > best) {
        best = v;
        best_r = r;
      }
    }
    std::vector<int> heads(n_ + 1, 0);
    heads[best_r] = 0;
    walk_cl(1, best_r, heads);
    walk_cr(best_r, n_, heads);
    return {heads.begin() + 1, heads.end()};
  }

 private:
  void walk_cl(int a, int b, std::vector<int>& heads) {
    if (a == b) return;
    const int r = cl_.arg(a, b);
    walk_cl(a, r, heads);
    walk_il(r, b, heads);
  }
  void walk_cr(int a, int b, std::vector<int>& heads) {
    if (a == b) return;
    const int r = cr_.arg(a, b);
    walk_ir(a, r, heads);
    walk_cr(r, b, heads);
  }
  void walk_il(int a, int b, std::vector<int>& heads) {
    heads[a] = b;
    const int r = il_.arg(a, b);
    walk_cr(a, r, heads);
    walk_cl(r + 1, b, heads);
  }
  void walk_ir(int a, int b, std::vector<int>& heads) {
    heads[b] = a;
    const int r = ir_.arg(a, b);
    walk_cr(a, r, heads);
    walk_cl(r + 1, b, heads);
  }

  const ScoreMatrix& s_;
  int n_;
  Table cl_, cr_, il_, ir_;
};

using Dense = std::vector<std::vector<double>>;

// Chu-Liu/Edmonds on a dense weight matrix w[u][v] (u -> v) with root 0.
// Returns parent[v] for every node (parent[0] = -1).
std::vector<int> chu_liu_edmonds(const Dense& w) {
  const int m = static_cast<int>(w.size());
  std::vector<int> parent(m, -1);
  for (int v = 1; v < m; ++v) {
    double best = kNegInf;
    for (int u = 0; u < m; ++u) {
      if (u != v && w[u][v] > best) {
        best = w[u][v];
        parent[v] = u;
      }
    }
  }

  // Look for a cycle among the greedy choices.
  std::vector<int> color(m, 0);
  std::vector<int> cycle;
  for (int start = 1; start < m && cycle.empty(); ++start) {
    if (color[start]) continue;
    std::vector<int> path;
    int v = start;
    while (v > 0 && color[v] == 0) {
      color[v] = start;
      path.push_back(v);
      v = parent[v];
    }
    if (v > 0 && color[v] == start) {
      for (int c = v;;) {
        cycle.push_back(c);
        c = parent[c];
        if (c == v) break;
      }
    }
  }
  if (cycle.empty()) return parent;

  std::vector<bool> in_cycle(m, false);
  for (int c : cycle) in_cycle[c] = true;

  // Contract: surviving nodes keep their relative order, the cycle becomes
  // the last node of the contracted graph.
  std::vector<int> id(m, -1), orig;
  for (int v = 0; v < m; ++v) {
    if (!in_cycle[v]) {
      id[v] = static_cast<int>(orig.size());
      orig.push_back(v);
    }
  }
  const int c = static_cast<int>(orig.size());
  const int m2 = c + 1;
  Dense w2(m2, std::vector<double>(m2, kNegInf));
  std::vector<int> enter_at(m2, -1);  // for u -> cycle: which cycle node is entered
  std::vector<int> leave_from(m2, -1);  // for cycle -> v: which cycle node leaves

  for (int u = 0; u < m; ++u) {
    for (int v = 0; v < m; ++v) {
      if (u == v || w[u][v] == kNegInf) continue;
      if (!in_cycle[u] && !in_cycle[v]) {
        w2[id[u]][id[v]] = w[u][v];
      } else if (!in_cycle[u] && in_cycle[v]) {
        const double val = w[u][v] - w[parent[v]][v];
        if (val > w2[id[u]][c]) {
          w2[id[u]][c] = val;
          enter_at[id[u]] = v;
        }
      } else if (in_cycle[u] && !in_cycle[v]) {
        if (w[u][v] > w2[c][id[v]]) {
          w2[c][id[v]] = w[u][v];
          leave_from[id[v]] = u;
        }
      }
    }
  }

  std::vector<int> p2 = chu_liu_edmonds(w2);
  std::vector<int> result(m, -1);
  for (int v = 0; v < m; ++v) {
    if (in_cycle[v]) result[v] = parent[v];
  }
  for (int v2 = 1; v2 < m2; ++v2) {
    const int u2 = p2[v2];
    if (v2 == c) {
      const int entered = enter_at[u2];
      result[entered] = orig[u2];
    } else {
      result[orig[v2]] = u2 == c ? leave_from[v2] : orig[u2];
    }
  }
  return result;
}

}  // namespace

void ScoreMatrix::add_constant(double c) {
  for (auto& v : data_) v += c;
}

double tree_score(const ScoreMatrix& s, const std::vector<int>& heads) {
  double total = 0.0;
  for (std::size_t d = 1; d <= heads.size(); ++d) total += s(heads[d - 1], static_cast<int>(d));
  return total;
}

std::vector<int> eisner_decode(const ScoreMatrix& s, bool single_root) {
  if (s.size() == 0) return {};
  Eisner e(s);
  return single_root ? e.single_root() : e.multi_root();
}

std::vector<int> mst_decode(const ScoreMatrix& s, bool single_root) {
  const int n = s.size();
  if (n == 0) return {};
  Dense w(n + 1, std::vector<double>(n + 1, kNegInf));
  for (int h = 0; h <= n; ++h) {
    for (int d = 1; d <= n; ++d) {
      if (h != d) w[h][d] = s(h, d);
    }
  }
  auto to_heads = [&](const std::vector<int>& parent) { return std::vector<int>(parent.begin() + 1, parent.end()); };
  if (!single_root) return to_heads(chu_liu_edmonds(w));

  std::vector<int> best;
  double best_score = kNegInf;
  for (int r = 1; r <= n; ++r) {
    Dense wr = w;
    for (int d = 1; d <= n; ++d) {
      if (d != r) wr[0][d] = kNegInf;
    }
    auto heads = to_heads(chu_liu_edmonds(wr));
    const double sc = tree_score(s, heads);
    if (best.empty() || sc > best_score) {
      best_score = sc;
      best = std::move(heads);
    }
  }
  return best;
}

}  // namespace ddp
