#include "generators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace gen {

namespace {

const std::vector<std::string> kSyllables = {"的", "也", "在", "了", "市", "场", "公", "司", "发", "展", "因",
                                             "而", "如", "果", "但", "则", "a",  "b",  "x",  "7",  "Z",  "é"};
const std::vector<std::string> kLabels = {"joint",       "explanation", "causality", "continuation",
                                          "progressive", "purpose",     "contrast",  "example illustration"};

}  // namespace

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string text(Rng& rng, int min_chars, int max_chars, bool sentence_final) {
  std::string s;
  const int k = uniform(rng, min_chars, max_chars);
  for (int i = 0; i < k; ++i) s += kSyllables[uniform(rng, 0, static_cast<int>(kSyllables.size()) - 1)];
  if (sentence_final) s += "。";
  return s;
}

std::string awkward_text(Rng& rng) {
  static const std::vector<std::string> extra = {" ", "]", "[", "\\", "|", "(", ")", ",", "#", " N ", "_"};
  std::string s = text(rng, 1, 4);
  const int k = uniform(rng, 0, 4);
  for (int i = 0; i < k; ++i) {
    s += extra[uniform(rng, 0, static_cast<int>(extra.size()) - 1)];
    s += text(rng, 1, 2);
  }
  return s;
}

std::string label(Rng& rng) { return kLabels[uniform(rng, 0, static_cast<int>(kLabels.size()) - 1)]; }

std::vector<int> random_tree(Rng& rng, int n, bool single_root) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> heads(n, 0);
  for (int i = 1; i < n; ++i) {
    const int j = uniform(rng, single_root ? 0 : -1, i - 1);
    heads[order[i] - 1] = j < 0 ? 0 : order[j];
  }
  return heads;
}

std::vector<int> random_projective_tree(Rng& rng, int n) {
  std::vector<int> heads(n, 0);
  // Builds a projective subtree over [l, r] whose head attaches to `parent`.
  std::function<void(int, int, int)> build = [&](int l, int r, int parent) {
    const int h = uniform(rng, l, r);
    heads[h - 1] = parent;
    for (int a = l; a < h;) {
      const int b = uniform(rng, a, h - 1);
      build(a, b, h);
      a = b + 1;
    }
    for (int a = h + 1; a <= r;) {
      const int b = uniform(rng, a, r);
      build(a, b, h);
      a = b + 1;
    }
  };
  if (n > 0) build(1, n, 0);
  return heads;
}

ddp::DepDocument random_document(Rng& rng, const std::string& id, int n, bool projective) {
  std::vector<std::string> texts;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    texts.push_back(text(rng, 2, 12, coin(rng, 0.4)));
    labels.push_back(label(rng));
  }
  auto heads = projective ? random_projective_tree(rng, n) : random_tree(rng, n);
  for (int i = 0; i < n; ++i) {
    if (heads[i] == 0) labels[i] = "root";
  }
  return ddp::make_document(id, texts, heads, labels);
}

std::vector<ddp::DepDocument> random_corpus(Rng& rng, int docs, int max_edus) {
  std::vector<ddp::DepDocument> out;
  for (int k = 0; k < docs; ++k) {
    const int n = uniform(rng, 1, max_edus);
    auto doc = random_document(rng, "doc-" + std::to_string(k) + (coin(rng, 0.2) ? " x" : ""), n);
    for (int i = 0; i < n; ++i) {
      doc.edus[i] = ddp::make_edu(i + 1, awkward_text(rng));
      auto& e = doc.edges[i];
      if (coin(rng, 0.6)) e.rel_unified = e.head == 0 ? std::string("root") : label(rng);
      e.provenance = static_cast<ddp::Provenance>(uniform(rng, 0, 2));
      e.confidence = static_cast<ddp::Confidence>(uniform(rng, 0, 1));
    }
    out.push_back(std::move(doc));
  }
  return out;
}

namespace {

ddp::RstTree rst_over(Rng& rng, int l, int r) {
  if (l == r) return ddp::rst_leaf(l, awkward_text(rng));
  // Split [l, r] into 2..3 consecutive parts.
  const int parts = std::min(r - l + 1, uniform(rng, 2, 3));
  std::vector<int> cuts;
  while (static_cast<int>(cuts.size()) < parts - 1) {
    const int c = uniform(rng, l, r - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<ddp::RstChild> kids;
  int a = l;
  for (int i = 0; i <= static_cast<int>(cuts.size()); ++i) {
    const int b = i < static_cast<int>(cuts.size()) ? cuts[i] : r;
    kids.push_back({coin(rng) ? ddp::Nuclearity::N : ddp::Nuclearity::S, rst_over(rng, a, b)});
    a = b + 1;
  }
  kids[uniform(rng, 0, static_cast<int>(kids.size()) - 1)].nuclearity = ddp::Nuclearity::N;
  return ddp::rst_node(label(rng), std::move(kids));
}

}  // namespace

ddp::RstTree random_rst(Rng& rng, int n) { return rst_over(rng, 1, n); }

std::vector<ddp::PdtbRelationRecord> random_records(Rng& rng, int count) {
  std::vector<ddp::PdtbRelationRecord> out;
  for (int i = 0; i < count; ++i) {
    ddp::PdtbRelationRecord r;
    r.doc_id = "d" + std::to_string(uniform(rng, 0, 5));
    r.kind = coin(rng) ? ddp::RelationKind::explicit_ : ddp::RelationKind::implicit;
    r.connective = coin(rng, 0.2) ? std::string("_") : text(rng, 1, 3);
    r.label = label(rng);
    const int n = uniform(rng, 2, 12);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 1);
    std::shuffle(idx.begin(), idx.end(), rng);
    const int a = uniform(rng, 1, n - 1);
    const int b = uniform(rng, 1, n - a);
    r.arg1.assign(idx.begin(), idx.begin() + a);
    r.arg2.assign(idx.begin() + a, idx.begin() + a + b);
    std::sort(r.arg1.begin(), r.arg1.end());
    std::sort(r.arg2.begin(), r.arg2.end());
    out.push_back(std::move(r));
  }
  return out;
}

ddp::RelationMapping random_mapping(Rng& rng, int entries) {
  ddp::RelationMapping m;
  while (static_cast<int>(m.size()) < entries) {
    auto scheme = static_cast<ddp::SchemeId>(uniform(rng, 0, 3));
    std::string original = label(rng) + (coin(rng) ? "." + text(rng, 1, 3) : std::string());
    m.add(scheme, original, label(rng));
  }
  return m;
}

std::vector<ddp::DepDocument> chain_corpus(Rng& rng, int docs, int min_edus, int max_edus) {
  std::vector<ddp::DepDocument> out;
  for (int k = 0; k < docs; ++k) {
    const int n = uniform(rng, min_edus, max_edus);
    std::vector<std::string> texts;
    std::vector<int> heads;
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) {
      texts.push_back(text(rng, 2, 12, coin(rng, 0.4)));
      heads.push_back(i - 1);
      labels.push_back(i == 1 ? "root" : "joint");
    }
    out.push_back(ddp::make_document("chain-" + std::to_string(k), texts, heads, labels));
  }
  return out;
}

std::vector<ddp::DepDocument> depth_labelled_corpus(Rng& rng, int docs, int min_edus, int max_edus) {
  std::vector<ddp::DepDocument> out;
  for (int k = 0; k < docs; ++k) {
    const int n = uniform(rng, min_edus, max_edus);
    std::vector<std::string> texts;
    std::vector<int> heads;
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) {
      texts.push_back(text(rng, 2, 12, true));
      heads.push_back(i - 1);
      labels.push_back(i == 1 ? "root" : i == 2 ? "joint" : "explanation");
    }
    out.push_back(ddp::make_document("depth-" + std::to_string(k), texts, heads, labels));
  }
  return out;
}

PdtbCase random_pdtb_case(Rng& rng, int max_edus, bool markers) {
  PdtbCase c;
  c.rules = {{"causality", "因为", ddp::Attach::left},
             {"causality", "所以", ddp::Attach::right},
             {"contrast", "但是", ddp::Attach::left},
             {"progressive", "而且", ddp::Attach::left}};
  const int n = uniform(rng, 1, max_edus);
  for (int i = 1; i <= n; ++i) {
    std::string t = text(rng, 2, 8);
    if (markers && coin(rng, 0.4)) t = c.rules[uniform(rng, 0, 3)].marker + t;
    c.edus.push_back(ddp::make_edu(i, t));
  }
  std::function<void(int, int)> split = [&](int l, int r) {
    if (l >= r) return;
    const int m = uniform(rng, l, r - 1);
    if (coin(rng, 0.6)) {
      ddp::PdtbRelationRecord rec;
      rec.doc_id = "pdtb";
      rec.kind = coin(rng) ? ddp::RelationKind::explicit_ : ddp::RelationKind::implicit;
      rec.connective = "_";
      rec.label = label(rng);
      for (int i = l; i <= m; ++i) rec.arg1.push_back(i);
      for (int i = m + 1; i <= r; ++i) rec.arg2.push_back(i);
      c.records.push_back(std::move(rec));
    }
    split(l, m);
    split(m + 1, r);
  };
  split(1, n);
  std::shuffle(c.records.begin(), c.records.end(), rng);
  return c;
}

}  // namespace gen
