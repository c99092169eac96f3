#include "ddp/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>

#include "ddp/corpus_io.hpp"
#include "ddp/error.hpp"
#include "ddp/rng.hpp"

namespace ddp {

std::string_view to_string(LabelView v) { return v == LabelView::original ? "original" : "unified"; }

std::optional<LabelView> parse_label_view(std::string_view s) {
  if (s == "original") return LabelView::original;
  if (s == "unified") return LabelView::unified;
  return std::nullopt;
}

CorpusStats corpus_stats(const std::vector<DepDocument>& docs, StatsOptions options) {
  CorpusStats s;
  s.n_docs = static_cast<int>(docs.size());
  long long chars = 0;
  std::map<std::string, int> counts;
  for (const auto& doc : docs) {
    s.n_edus += doc.size();
    for (const auto& e : doc.edus) chars += e.char_len;
    for (const auto& e : doc.edges) {
      if (e.head == kRoot && !options.count_root) continue;
      ++s.n_relations;
      std::string label;
      if (options.view == LabelView::original) {
        label = e.rel_original;
      } else {
        label = e.rel_unified ? *e.rel_unified : std::string(kUnmappedLabel);
      }
      ++counts[label];
    }
  }
  if (s.n_docs > 0) {
    s.avg_edus_per_doc = static_cast<double>(s.n_edus) / s.n_docs;
    s.avg_chars_per_doc = static_cast<double>(chars) / s.n_docs;
  }
  for (const auto& [label, count] : counts) {
    s.relation_histogram.push_back({label, count, 100.0 * count / s.n_relations});
  }
  std::stable_sort(s.relation_histogram.begin(), s.relation_histogram.end(),
                   [](const LabelCount& a, const LabelCount& b) { return a.count > b.count; });
  return s;
}

std::string format_stats(const CorpusStats& s) {
  auto fixed = [](double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return std::string(buf);
  };
  std::string out;
  out += "documents\t" + std::to_string(s.n_docs) + '\n';
  out += "relations\t" + std::to_string(s.n_relations) + '\n';
  out += "edus\t" + std::to_string(s.n_edus) + '\n';
  out += "edus_per_doc\t" + fixed(s.avg_edus_per_doc, 2) + '\n';
  out += "chars_per_doc\t" + fixed(s.avg_chars_per_doc, 2) + '\n';
  for (const auto& c : s.relation_histogram) {
    out += c.label + '\t' + std::to_string(c.count) + '\t' + fixed(c.percent, 2) + '\n';
  }
  return out;
}

CorpusSplit split_corpus(const std::vector<DepDocument>& docs, int n_train, int n_dev, int n_test,
                         std::uint64_t seed) {
  if (n_train < 0 || n_dev < 0 || n_test < 0 ||
      static_cast<std::size_t>(n_train) + n_dev + n_test != docs.size()) {
    throw DataError("split sizes " + std::to_string(n_train) + "+" + std::to_string(n_dev) + "+" +
                    std::to_string(n_test) + " do not match corpus size " + std::to_string(docs.size()));
  }
  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  portable_shuffle(order, rng);

  auto take = [&](std::size_t from, std::size_t count) {
    std::vector<std::size_t> idx(order.begin() + from, order.begin() + from + count);
    std::sort(idx.begin(), idx.end());
    std::vector<DepDocument> part;
    part.reserve(count);
    for (auto i : idx) part.push_back(docs[i]);
    return part;
  };
  CorpusSplit out;
  out.train = take(0, n_train);
  out.dev = take(n_train, n_dev);
  out.test = take(n_train + n_dev, n_test);
  return out;
}

}  // namespace ddp
