#include "ddp/corpus_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "ddp/error.hpp"
#include "ddp/text.hpp"

namespace ddp {

std::string_view to_string(RelationKind k) {
  return k == RelationKind::explicit_ ? "explicit" : "implicit";
}

std::optional<RelationKind> parse_relation_kind(std::string_view s) {
  if (s == "explicit") return RelationKind::explicit_;
  if (s == "implicit") return RelationKind::implicit;
  return std::nullopt;
}

std::string_view to_string(ReviewReason r) {
  switch (r) {
    case ReviewReason::no_marker_match: return "no_marker_match";
    case ReviewReason::ambiguous_marker: return "ambiguous_marker";
    case ReviewReason::head_direction_default: return "head_direction_default";
  }
  return "no_marker_match";
}

std::optional<ReviewReason> parse_review_reason(std::string_view s) {
  if (s == "no_marker_match") return ReviewReason::no_marker_match;
  if (s == "ambiguous_marker") return ReviewReason::ambiguous_marker;
  if (s == "head_direction_default") return ReviewReason::head_direction_default;
  return std::nullopt;
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  int line_no() const { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

bool is_comment(std::string_view line) { return !line.empty() && line.front() == '#'; }

std::vector<std::string> fields(const std::string& line, std::size_t expected, int line_no) {
  auto f = text::split(line, '\t');
  if (f.size() != expected) {
    throw DataError("malformed line: expected " + std::to_string(expected) + " tab-separated fields, found " +
                        std::to_string(f.size()),
                    line_no);
  }
  return f;
}

void require_nonempty(const std::vector<std::string>& f, int line_no) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].empty()) throw DataError("empty field " + std::to_string(i + 1), line_no);
  }
}

int to_int(const std::string& s, std::string_view what, int line_no) {
  int v = 0;
  if (!text::parse_int(s, v)) throw DataError("malformed " + std::string(what) + " '" + s + "'", line_no);
  return v;
}

std::vector<int> to_index_set(const std::string& s, std::string_view what, int line_no) {
  std::vector<int> out;
  for (const auto& part : text::split(s, ',')) {
    int v = to_int(part, what, line_no);
    if (v < 1) throw DataError(std::string(what) + " index must be positive", line_no);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw DataError("duplicate index in " + std::string(what), line_no);
  }
  return out;
}

std::string index_list(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

// Values written into a TSV cell must not break the line structure.
void check_cell(std::string_view value, std::string_view what) {
  if (value.empty()) throw DataError("cannot write empty " + std::string(what));
  if (value.find_first_of("\t\n\r") != std::string_view::npos) {
    throw DataError("cannot write " + std::string(what) + " containing tab or newline: '" +
                    std::string(value) + "'");
  }
}

constexpr std::string_view kDocHeader = "# doc ";

struct PendingRow {
  int line_no;
  int head;
};

}  // namespace

std::vector<DepDocument> read_dep_corpus(std::istream& in) {
  std::vector<DepDocument> docs;
  LineReader reader(in);
  std::string line;
  bool open = false;
  std::vector<PendingRow> rows;

  auto close = [&] {
    if (!open) return;
    DepDocument& doc = docs.back();
    for (const auto& r : rows) {
      if (r.head < 0 || r.head > doc.size()) throw DataError("head out of range", r.line_no);
    }
    rows.clear();
    open = false;
  };

  while (reader.next(line)) {
    const int ln = reader.line_no();
    if (line.empty()) {
      close();
      continue;
    }
    if (line.starts_with(kDocHeader)) {
      close();
      std::string id = line.substr(kDocHeader.size());
      if (id.empty() || id.find('\t') != std::string::npos) throw DataError("malformed document header", ln);
      docs.emplace_back();
      docs.back().doc_id = std::move(id);
      open = true;
      continue;
    }
    if (is_comment(line)) continue;
    if (!open) throw DataError("row outside of a document", ln);

    auto f = fields(line, 7, ln);
    require_nonempty(f, ln);
    DepDocument& doc = docs.back();
    const int index = to_int(f[0], "EDU index", ln);
    const int expected = doc.size() + 1;
    if (index != expected) {
      if (index >= 1 && index < expected) throw DataError("duplicate dependent " + f[0], ln);
      throw DataError("non-consecutive EDU index " + f[0] + " (expected " + std::to_string(expected) + ")", ln);
    }
    DepEdge e;
    e.dependent = index;
    e.head = to_int(f[2], "head", ln);
    if (e.head < 0) throw DataError("head out of range", ln);
    if (e.head == index) throw DataError("EDU " + f[0] + " heads itself", ln);
    e.rel_original = f[3];
    if (f[4] != kUnmappedLabel) e.rel_unified = f[4];
    auto prov = parse_provenance(f[5]);
    if (!prov) throw DataError("unknown provenance '" + f[5] + "'", ln);
    auto conf = parse_confidence(f[6]);
    if (!conf) throw DataError("unknown confidence '" + f[6] + "'", ln);
    e.provenance = *prov;
    e.confidence = *conf;
    doc.edus.push_back(make_edu(index, f[1]));
    doc.edges.push_back(std::move(e));
    rows.push_back({ln, doc.edges.back().head});
  }
  close();
  return docs;
}

std::vector<DepDocument> parse_dep_corpus(std::string_view content) {
  std::istringstream in{std::string(content)};
  return read_dep_corpus(in);
}

void write_dep_corpus(std::ostream& out, const std::vector<DepDocument>& docs) {
  for (const auto& doc : docs) {
    check_cell(doc.doc_id, "document id");
    if (doc.edges.size() != doc.edus.size()) {
      throw DataError("document " + doc.doc_id + " has " + std::to_string(doc.edges.size()) + " edges for " +
                      std::to_string(doc.edus.size()) + " EDUs");
    }
    out << kDocHeader << doc.doc_id << '\n';
    for (std::size_t k = 0; k < doc.edus.size(); ++k) {
      const Edu& edu = doc.edus[k];
      const DepEdge& e = doc.edges[k];
      check_cell(edu.text, "EDU text");
      check_cell(e.rel_original, "relation label");
      if (e.rel_unified) {
        check_cell(*e.rel_unified, "unified label");
        if (*e.rel_unified == kUnmappedLabel) throw DataError("'_' is reserved for unmapped labels");
      }
      out << (k + 1) << '\t' << edu.text << '\t' << e.head << '\t' << e.rel_original << '\t'
          << (e.rel_unified ? std::string_view(*e.rel_unified) : kUnmappedLabel) << '\t'
          << to_string(e.provenance) << '\t' << to_string(e.confidence) << '\n';
    }
    out << '\n';
  }
}

std::string format_dep_corpus(const std::vector<DepDocument>& docs) {
  std::ostringstream out;
  write_dep_corpus(out, docs);
  return out.str();
}

std::vector<DepDocument> read_edu_corpus(std::istream& in) {
  std::vector<DepDocument> docs;
  LineReader reader(in);
  std::string line;
  bool open = false;
  while (reader.next(line)) {
    const int ln = reader.line_no();
    if (line.empty()) {
      open = false;
      continue;
    }
    if (line.starts_with(kDocHeader)) {
      std::string id = line.substr(kDocHeader.size());
      if (id.empty()) throw DataError("malformed document header", ln);
      docs.emplace_back();
      docs.back().doc_id = std::move(id);
      open = true;
      continue;
    }
    if (is_comment(line)) continue;
    if (!open) throw DataError("row outside of a document", ln);
    auto f = text::split(line, '\t');
    if (f.size() < 2) throw DataError("malformed line: expected at least index and text", ln);
    DepDocument& doc = docs.back();
    const int index = to_int(f[0], "EDU index", ln);
    if (index != doc.size() + 1) throw DataError("non-consecutive EDU index " + f[0], ln);
    if (f[1].empty()) throw DataError("empty EDU text", ln);
    doc.edus.push_back(make_edu(index, f[1]));
  }
  return docs;
}

std::vector<PdtbRelationRecord> read_pdtb_records(std::istream& in) {
  std::vector<PdtbRelationRecord> out;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    const int ln = reader.line_no();
    if (line.empty() || is_comment(line)) continue;
    auto f = fields(line, 6, ln);
    require_nonempty(f, ln);
    PdtbRelationRecord r;
    r.doc_id = f[0];
    auto kind = parse_relation_kind(f[1]);
    if (!kind) throw DataError("unknown relation kind '" + f[1] + "'", ln);
    r.kind = *kind;
    r.connective = f[2];
    r.label = f[3];
    r.arg1 = to_index_set(f[4], "arg1", ln);
    r.arg2 = to_index_set(f[5], "arg2", ln);
    std::vector<int> common;
    std::set_intersection(r.arg1.begin(), r.arg1.end(), r.arg2.begin(), r.arg2.end(), std::back_inserter(common));
    if (!common.empty()) throw DataError("overlapping argument sets", ln);
    out.push_back(std::move(r));
  }
  return out;
}

void write_pdtb_records(std::ostream& out, const std::vector<PdtbRelationRecord>& records) {
  for (const auto& r : records) {
    check_cell(r.doc_id, "document id");
    check_cell(r.connective, "connective");
    check_cell(r.label, "relation label");
    if (r.arg1.empty() || r.arg2.empty()) throw DataError("cannot write record with an empty argument");
    out << r.doc_id << '\t' << to_string(r.kind) << '\t' << r.connective << '\t' << r.label << '\t'
        << index_list(r.arg1) << '\t' << index_list(r.arg2) << '\n';
  }
}

std::vector<MarkerRule> read_marker_rules(std::istream& in) {
  std::vector<MarkerRule> out;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    const int ln = reader.line_no();
    if (line.empty() || is_comment(line)) continue;
    auto f = fields(line, 3, ln);
    require_nonempty(f, ln);
    MarkerRule r{f[0], f[1], Attach::left};
    if (f[2] == "left") {
      r.attach = Attach::left;
    } else if (f[2] == "right") {
      r.attach = Attach::right;
    } else {
      throw DataError("attach must be 'left' or 'right', found '" + f[2] + "'", ln);
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_marker_rules(std::ostream& out, const std::vector<MarkerRule>& rules) {
  for (const auto& r : rules) {
    check_cell(r.label, "relation label");
    check_cell(r.marker, "marker");
    out << r.label << '\t' << r.marker << '\t' << (r.attach == Attach::left ? "left" : "right") << '\n';
  }
}

RelationMapping read_relation_mapping(std::istream& in) {
  RelationMapping mapping;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    const int ln = reader.line_no();
    if (line.empty() || is_comment(line)) continue;
    auto f = fields(line, 3, ln);
    require_nonempty(f, ln);
    auto scheme = parse_scheme(f[0]);
    if (!scheme) throw DataError("unknown scheme '" + f[0] + "'", ln);
    if (!mapping.add(*scheme, f[1], f[2])) {
      throw DataError("duplicate mapping for " + f[0] + " '" + f[1] + "'", ln);
    }
  }
  return mapping;
}

void write_relation_mapping(std::ostream& out, const RelationMapping& mapping) {
  for (const auto& [key, unified] : mapping.entries()) {
    check_cell(key.second, "relation label");
    check_cell(unified, "unified label");
    out << to_string(key.first) << '\t' << key.second << '\t' << unified << '\n';
  }
}

std::vector<ReviewItem> read_review_queue(std::istream& in) {
  std::vector<ReviewItem> out;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    const int ln = reader.line_no();
    if (line.empty() || is_comment(line)) continue;
    auto f = fields(line, 5, ln);
    require_nonempty(f, ln);
    ReviewItem item;
    item.doc_id = f[0];
    item.edge.dependent = to_int(f[1], "dependent", ln);
    item.edge.head = to_int(f[2], "head", ln);
    item.edge.rel_original = f[3];
    item.edge.provenance = Provenance::complemented;
    item.edge.confidence = Confidence::review;
    auto reason = parse_review_reason(f[4]);
    if (!reason) throw DataError("unknown review reason '" + f[4] + "'", ln);
    item.reason = *reason;
    item.suggestion = f[3];
    out.push_back(std::move(item));
  }
  return out;
}

void write_review_queue(std::ostream& out, const std::vector<ReviewItem>& items) {
  for (const auto& item : items) {
    check_cell(item.doc_id, "document id");
    check_cell(item.edge.rel_original, "relation label");
    out << item.doc_id << '\t' << item.edge.dependent << '\t' << item.edge.head << '\t' << item.edge.rel_original
        << '\t' << to_string(item.reason) << '\n';
  }
}

std::vector<Correction> read_corrections(std::istream& in) {
  std::vector<Correction> out;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    const int ln = reader.line_no();
    if (line.empty() || is_comment(line)) continue;
    auto f = fields(line, 4, ln);
    require_nonempty(f, ln);
    out.push_back(Correction{f[0], to_int(f[1], "dependent", ln), to_int(f[2], "head", ln), f[3]});
  }
  return out;
}

void write_corrections(std::ostream& out, const std::vector<Correction>& corrections) {
  for (const auto& c : corrections) {
    check_cell(c.doc_id, "document id");
    check_cell(c.new_label, "relation label");
    out << c.doc_id << '\t' << c.dependent << '\t' << c.new_head << '\t' << c.new_label << '\n';
  }
}

std::vector<EduSplitRecord> read_edu_splits(std::istream& in) {
  std::vector<EduSplitRecord> out;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    const int ln = reader.line_no();
    if (line.empty() || is_comment(line)) continue;
    auto f = fields(line, 4, ln);
    require_nonempty(f, ln);
    EduSplitRecord rec;
    rec.doc_id = f[0];
    rec.original_index = to_int(f[1], "original index", ln);
    rec.parts = text::split(f[2], '|');
    for (const auto& p : rec.parts) {
      if (p.empty()) throw DataError("empty part text", ln);
    }
    for (const auto& spec : text::split(f[3], ',')) {
      std::size_t a = spec.find(':');
      std::size_t b = a == std::string::npos ? a : spec.find(':', a + 1);
      if (b == std::string::npos || b + 1 >= spec.size()) {
        throw DataError("malformed intra edge '" + spec + "' (expected head:dep:label)", ln);
      }
      IntraEdge e;
      e.head_part = to_int(spec.substr(0, a), "intra edge head", ln);
      e.dep_part = to_int(spec.substr(a + 1, b - a - 1), "intra edge dependent", ln);
      e.label = spec.substr(b + 1);
      rec.intra_edges.push_back(std::move(e));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void write_edu_splits(std::ostream& out, const std::vector<EduSplitRecord>& splits) {
  for (const auto& rec : splits) {
    check_cell(rec.doc_id, "document id");
    for (const auto& p : rec.parts) {
      check_cell(p, "part text");
      if (p.find('|') != std::string::npos) throw DataError("part text may not contain '|'");
    }
    out << rec.doc_id << '\t' << rec.original_index << '\t' << text::join(rec.parts, "|") << '\t';
    for (std::size_t i = 0; i < rec.intra_edges.size(); ++i) {
      const auto& e = rec.intra_edges[i];
      check_cell(e.label, "relation label");
      if (i) out << ',';
      out << e.head_part << ':' << e.dep_part << ':' << e.label;
    }
    out << '\n';
  }
}

std::vector<HeadOverride> read_head_overrides(std::istream& in) {
  std::vector<HeadOverride> out;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    const int ln = reader.line_no();
    if (line.empty() || is_comment(line)) continue;
    auto f = fields(line, 2, ln);
    require_nonempty(f, ln);
    if (f[1] != "arg1" && f[1] != "arg2") throw DataError("head must be 'arg1' or 'arg2'", ln);
    out.push_back(HeadOverride{f[0], f[1] == "arg2"});
  }
  return out;
}

}  // namespace ddp
