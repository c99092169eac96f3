#pragma once

#include <vector>

namespace ddp {

/// Arc scores s(h, d) for heads 0..n and dependents 1..n.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  explicit ScoreMatrix(int n, double fill = 0.0) : n_(n), data_((n + 1) * (n + 1), fill) {}

  int size() const { return n_; }
  double operator()(int head, int dep) const { return data_[head * (n_ + 1) + dep]; }
  double& operator()(int head, int dep) { return data_[head * (n_ + 1) + dep]; }

  void add_constant(double c);

 private:
  int n_ = 0;
  std::vector<double> data_;
};

/// Sum of s(heads[d-1], d) over all dependents.
double tree_score(const ScoreMatrix& s, const std::vector<int>& heads);

/// Highest-scoring projective tree rooted at 0 (first-order Eisner). With
/// `single_root`, exactly one EDU attaches to the root. Returns heads of
/// EDUs 1..n.
std::vector<int> eisner_decode(const ScoreMatrix& s, bool single_root = true);

/// Highest-scoring spanning arborescence rooted at 0 (Chu-Liu/Edmonds);
/// may be non-projective. With `single_root`, every choice of the root's
/// only child is tried.
std::vector<int> mst_decode(const ScoreMatrix& s, bool single_root = true);

}  // namespace ddp
