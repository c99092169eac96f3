#include "ddp/eval.hpp"

#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "ddp/corpus_io.hpp"
#include "ddp/error.hpp"

namespace ddp {

namespace {

std::string view_label(const DepEdge& e, LabelView view) {
  if (view == LabelView::original) return e.rel_original;
  return e.rel_unified ? *e.rel_unified : std::string(kUnmappedLabel);
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

EvalResult score(const std::vector<DepDocument>& gold, const std::vector<DepDocument>& predicted,
                 const EvalOptions& options) {
  std::unordered_map<std::string, const DepDocument*> by_id;
  for (const auto& p : predicted) {
    if (!by_id.emplace(p.doc_id, &p).second) throw DataError("duplicate predicted document " + p.doc_id);
  }
  if (predicted.size() != gold.size()) {
    for (const auto& g : gold) {
      if (!by_id.contains(g.doc_id)) throw DataError("misaligned corpora: no prediction for document " + g.doc_id);
    }
    throw DataError("misaligned corpora: " + std::to_string(predicted.size()) + " predicted documents for " +
                    std::to_string(gold.size()) + " gold documents");
  }

  EvalResult r;
  long long heads = 0, las_o = 0, las_u = 0, total = 0;
  double sum_uas = 0.0, sum_las_o = 0.0, sum_las_u = 0.0;
  int macro_docs = 0;
  for (const auto& g : gold) {
    auto it = by_id.find(g.doc_id);
    if (it == by_id.end()) throw DataError("misaligned corpora: no prediction for document " + g.doc_id);
    const DepDocument& p = *it->second;
    if (p.size() != g.size() || p.edges.size() != g.edges.size() || g.edges.size() != static_cast<std::size_t>(g.size())) {
      throw DataError("misaligned corpora: document " + g.doc_id + " has " + std::to_string(g.size()) +
                      " gold EDUs and " + std::to_string(p.size()) + " predicted");
    }
    long long dh = 0, dlo = 0, dlu = 0, dn = 0;
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
      const DepEdge& ge = g.edges[k];
      const DepEdge& pe = p.edges[k];
      if (ge.head != kRoot) ++r.per_label_confusion[{view_label(ge, options.view), view_label(pe, options.view)}];
      if (options.exclude_root && ge.head == kRoot) continue;
      ++dn;
      if (ge.head != pe.head) continue;
      ++dh;
      if (ge.rel_original == pe.rel_original) ++dlo;
      if (ge.rel_unified == pe.rel_unified) ++dlu;
    }
    heads += dh;
    las_o += dlo;
    las_u += dlu;
    total += dn;
    if (dn > 0) {
      sum_uas += static_cast<double>(dh) / dn;
      sum_las_o += static_cast<double>(dlo) / dn;
      sum_las_u += static_cast<double>(dlu) / dn;
      ++macro_docs;
    }
  }
  r.n_docs = static_cast<int>(gold.size());
  r.n_edus_scored = static_cast<int>(total);
  if (options.macro) {
    if (macro_docs > 0) {
      r.uas = sum_uas / macro_docs;
      r.las_original = sum_las_o / macro_docs;
      r.las_unified = sum_las_u / macro_docs;
    }
  } else if (total > 0) {
    r.uas = static_cast<double>(heads) / total;
    r.las_original = static_cast<double>(las_o) / total;
    r.las_unified = static_cast<double>(las_u) / total;
  }
  return r;
}

Agreement agreement(const std::vector<DepDocument>& a, const std::vector<DepDocument>& b, LabelView view) {
  EvalResult r = score(a, b, EvalOptions{view, false, false});
  return Agreement{r.uas, r.las(view)};
}

std::string format_eval_tsv(const EvalResult& r, LabelView view) {
  std::ostringstream out;
  out << "UAS\t" << fixed(r.uas) << '\n'
      << (view == LabelView::original ? "LAS_O\t" : "LAS_U\t") << fixed(r.las(view)) << '\n'
      << "EDUs\t" << r.n_edus_scored << '\n'
      << "docs\t" << r.n_docs << '\n';
  return out.str();
}

std::string format_eval_summary(const EvalResult& r, LabelView view) {
  std::ostringstream out;
  out << "documents   " << r.n_docs << '\n'
      << "EDUs scored " << r.n_edus_scored << '\n'
      << "UAS         " << fixed(r.uas) << '\n';
  if (view == LabelView::original) {
    out << "LAS_O       " << fixed(r.las_original) << '\n';
  } else {
    out << "LAS_U       " << fixed(r.las_unified) << '\n';
  }
  return out.str();
}

std::string format_confusion_tsv(const EvalResult& r) {
  std::ostringstream out;
  for (const auto& [key, count] : r.per_label_confusion) {
    out << key.first << '\t' << key.second << '\t' << count << '\n';
  }
  return out.str();
}

}  // namespace ddp
