#include "ddp/rst.hpp"

#include <istream>
#include <ostream>

#include "ddp/error.hpp"
#include "ddp/text.hpp"

namespace ddp {

bool operator==(const RstLeaf& a, const RstLeaf& b) {
  return a.edu_index == b.edu_index && a.text == b.text;
}
bool operator==(const RstInternal& a, const RstInternal& b) {
  return a.label == b.label && a.children == b.children;
}
bool operator==(const RstTree& a, const RstTree& b) { return a.node == b.node; }
bool operator==(const RstChild& a, const RstChild& b) {
  return a.nuclearity == b.nuclearity && a.tree == b.tree;
}

RstTree rst_leaf(int edu_index, std::string text) {
  return RstTree{RstLeaf{edu_index, std::move(text)}};
}

RstTree rst_node(std::string label, std::vector<RstChild> children) {
  return RstTree{RstInternal{std::move(label), std::move(children)}};
}

namespace {

void collect_leaves(const RstTree& t, std::vector<const RstLeaf*>& out) {
  if (t.is_leaf()) {
    out.push_back(&t.leaf());
    return;
  }
  for (const auto& c : t.internal().children) collect_leaves(c.tree, out);
}

void validate_node(const RstTree& t, std::vector<std::string>& problems) {
  if (t.is_leaf()) return;
  const auto& n = t.internal();
  if (n.children.size() < 2) problems.push_back("node '" + n.label + "' has fewer than two children");
  bool has_nucleus = false;
  for (const auto& c : n.children) has_nucleus |= c.nuclearity == Nuclearity::N;
  if (!has_nucleus) problems.push_back("node '" + n.label + "' has no nucleus child");
  if (n.label.empty()) problems.push_back("internal node without a label");
  for (const auto& c : n.children) validate_node(c.tree, problems);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

void format_into(const RstTree& t, std::string& out) {
  if (t.is_leaf()) {
    const auto& l = t.leaf();
    if (l.text.empty()) throw DataError("cannot write leaf with empty text");
    out += '[';
    out += std::to_string(l.edu_index);
    out += '|';
    for (char c : l.text) {
      if (c == '\n' || c == '\r' || c == '\t') throw DataError("cannot write leaf text containing tab or newline");
      if (c == ']' || c == '\\') out += '\\';
      out += c;
    }
    out += ']';
    return;
  }
  const auto& n = t.internal();
  if (n.label.empty() || n.label.find_first_of("()[]\t\n\r") != std::string::npos || is_space(n.label.front()) ||
      is_space(n.label.back())) {
    throw DataError("cannot write relation label '" + n.label + "'");
  }
  for (std::size_t i = 0; i + 2 < n.label.size(); ++i) {
    if (n.label[i] == ' ' && (n.label[i + 1] == 'N' || n.label[i + 1] == 'S') && n.label[i + 2] == ' ') {
      throw DataError("relation label '" + n.label + "' contains a nuclearity marker");
    }
  }
  out += '(';
  out += n.label;
  for (const auto& c : n.children) {
    out += c.nuclearity == Nuclearity::N ? " N " : " S ";
    format_into(c.tree, out);
  }
  out += ')';
}

class RstParser {
 public:
  RstParser(std::string_view src, int first_line) : src_(src), line_(first_line) {}

  RstTree parse_all() {
    skip_space();
    RstTree t = parse_tree();
    skip_space();
    if (pos_ < src_.size()) {
      if (src_[pos_] == ')') fail("unbalanced parentheses: unexpected ')'");
      fail("unexpected trailing input");
    }
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw DataError(msg, line_, col_); }
  [[noreturn]] void fail_at(const std::string& msg, int line, int col) const { throw DataError(msg, line, col); }

  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!eof() && is_space(peek())) advance();
  }

  RstTree parse_tree() {
    if (eof()) fail("unbalanced parentheses: unexpected end of input");
    if (peek() == '[') return parse_leaf();
    if (peek() == '(') return parse_internal();
    fail(std::string("expected '[' or '(' but found '") + peek() + "'");
  }

  RstTree parse_leaf() {
    const int line = line_, col = col_;
    advance();  // '['
    std::string digits;
    while (!eof() && peek() != '|' && peek() != ']') {
      digits += peek();
      advance();
    }
    if (eof() || peek() != '|') fail_at("malformed leaf: expected '[index|text]'", line, col);
    int index = 0;
    if (!text::parse_int(digits, index) || index < 1) fail_at("malformed leaf index '" + digits + "'", line, col);
    advance();  // '|'
    std::string body;
    while (true) {
      if (eof()) fail_at("unterminated leaf", line, col);
      char c = peek();
      if (c == '\\') {
        advance();
        if (eof()) fail_at("unterminated leaf", line, col);
        body += peek();
        advance();
        continue;
      }
      if (c == ']') break;
      if (c == '\n') fail_at("leaf text spans a line break", line, col);
      body += c;
      advance();
    }
    advance();  // ']'
    if (body.empty()) fail_at("empty leaf text", line, col);
    if (index != next_leaf_) {
      fail_at("leaf index " + std::to_string(index) + " out of order (expected " + std::to_string(next_leaf_) + ")",
              line, col);
    }
    ++next_leaf_;
    return rst_leaf(index, std::move(body));
  }

  // True if the input at `p` is whitespace+, N|S, whitespace+, '[' or '('.
  bool child_marker_at(std::size_t p) const {
    if (p >= src_.size() || !is_space(src_[p])) return false;
    while (p < src_.size() && is_space(src_[p])) ++p;
    if (p >= src_.size() || (src_[p] != 'N' && src_[p] != 'S')) return false;
    ++p;
    if (p >= src_.size() || !is_space(src_[p])) return false;
    while (p < src_.size() && is_space(src_[p])) ++p;
    return p < src_.size() && (src_[p] == '[' || src_[p] == '(');
  }

  RstTree parse_internal() {
    const int line = line_, col = col_;
    advance();  // '('
    std::string label;
    while (!eof() && !child_marker_at(pos_)) {
      char c = peek();
      if (c == ')') fail_at("single-child node: '" + std::string(text::trim(label)) + "' has no children", line, col);
      if (c == '(' || c == '[' || c == ']') fail(std::string("unexpected '") + c + "' in relation label");
      label += c;
      advance();
    }
    if (eof()) fail_at("unbalanced parentheses: unterminated node", line, col);
    label = std::string(text::trim(label));
    if (label.empty()) fail_at("internal node without a label", line, col);

    RstInternal node{label, {}};
    while (true) {
      skip_space();
      if (eof()) fail_at("unbalanced parentheses: unterminated node", line, col);
      if (peek() == ')') {
        advance();
        break;
      }
      Nuclearity nuc;
      if (peek() == 'N') {
        nuc = Nuclearity::N;
      } else if (peek() == 'S') {
        nuc = Nuclearity::S;
      } else {
        fail(std::string("expected nuclearity 'N' or 'S' but found '") + peek() + "'");
      }
      advance();
      if (eof() || !is_space(peek())) fail("expected whitespace after nuclearity marker");
      skip_space();
      node.children.push_back(RstChild{nuc, parse_tree()});
    }
    if (node.children.size() < 2) fail_at("single-child node '" + label + "'", line, col);
    bool has_nucleus = false;
    for (const auto& c : node.children) has_nucleus |= c.nuclearity == Nuclearity::N;
    if (!has_nucleus) fail_at("no nucleus child in node '" + label + "'", line, col);
    return RstTree{std::move(node)};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_;
  int col_ = 1;
  int next_leaf_ = 1;
};

}  // namespace

std::vector<const RstLeaf*> rst_leaves(const RstTree& tree) {
  std::vector<const RstLeaf*> out;
  collect_leaves(tree, out);
  return out;
}

std::vector<std::string> validate_rst(const RstTree& tree) {
  std::vector<std::string> problems;
  validate_node(tree, problems);
  auto leaves = rst_leaves(tree);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i]->edu_index != static_cast<int>(i) + 1) {
      problems.push_back("leaf " + std::to_string(i + 1) + " has index " + std::to_string(leaves[i]->edu_index));
    }
    if (leaves[i]->text.empty()) problems.push_back("leaf " + std::to_string(i + 1) + " has empty text");
  }
  return problems;
}

std::string format_rst(const RstTree& tree) {
  std::string out;
  format_into(tree, out);
  return out;
}

RstTree parse_rst(std::string_view source, int first_line) {
  return RstParser(source, first_line).parse_all();
}

std::vector<RstDocument> read_rst_trees(std::istream& in) {
  std::vector<RstDocument> docs;
  std::string line;
  int line_no = 0;
  std::string doc_id;
  std::string body;
  int body_line = 0;
  bool open = false;

  auto flush = [&] {
    if (!open) return;
    if (text::is_blank(body)) throw DataError("document '" + doc_id + "' has no tree", body_line ? body_line : line_no);
    docs.push_back(RstDocument{doc_id, parse_rst(body, body_line)});
    body.clear();
    body_line = 0;
    open = false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.starts_with("# doc ")) {
      flush();
      doc_id = line.substr(6);
      if (doc_id.empty()) throw DataError("malformed document header", line_no);
      open = true;
      continue;
    }
    if (!line.empty() && line.front() == '#') continue;
    if (text::is_blank(line)) {
      if (open && !text::is_blank(body)) flush();
      continue;
    }
    if (!open) throw DataError("tree outside of a document", line_no);
    if (body_line == 0) body_line = line_no;
    if (!body.empty()) body += '\n';
    body += line;
  }
  flush();
  return docs;
}

void write_rst_trees(std::ostream& out, const std::vector<RstDocument>& docs) {
  for (const auto& d : docs) {
    if (d.doc_id.empty() || d.doc_id.find_first_of("\t\n\r") != std::string::npos) {
      throw DataError("cannot write document id '" + d.doc_id + "'");
    }
    out << "# doc " << d.doc_id << '\n' << format_rst(d.tree) << "\n\n";
  }
}

}  // namespace ddp
