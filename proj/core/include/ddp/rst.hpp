#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ddp {

enum class Nuclearity { N, S };

struct RstChild;

struct RstLeaf {
  int edu_index = 1;
  std::string text;
};

struct RstInternal {
  std::string label;
  std::vector<RstChild> children;
};

/// Constituency discourse tree: EDUs at the leaves, relation-labelled
/// internal nodes whose children are marked nucleus or satellite.
struct RstTree {
  std::variant<RstLeaf, RstInternal> node;

  bool is_leaf() const { return std::holds_alternative<RstLeaf>(node); }
  const RstLeaf& leaf() const { return std::get<RstLeaf>(node); }
  const RstInternal& internal() const { return std::get<RstInternal>(node); }
};

struct RstChild {
  Nuclearity nuclearity = Nuclearity::N;
  RstTree tree;
};

bool operator==(const RstLeaf& a, const RstLeaf& b);
bool operator==(const RstInternal& a, const RstInternal& b);
bool operator==(const RstTree& a, const RstTree& b);
bool operator==(const RstChild& a, const RstChild& b);

RstTree rst_leaf(int edu_index, std::string text);
RstTree rst_node(std::string label, std::vector<RstChild> children);

/// Leaves in left-to-right order.
std::vector<const RstLeaf*> rst_leaves(const RstTree& tree);

/// Structural problems: internal nodes with fewer than two children or no
/// nucleus, leaf indices that are not 1..n left to right. Empty when valid.
std::vector<std::string> validate_rst(const RstTree& tree);

struct RstDocument {
  std::string doc_id;
  RstTree tree;

  friend bool operator==(const RstDocument&, const RstDocument&) = default;
};

/// Bracketed form: leaf `[i|text]`, internal `(label N child S child ...)`.
/// In leaf text, ']' and '\' are escaped with a backslash.
std::string format_rst(const RstTree& tree);

/// Parses one bracketed tree. Errors carry line and column relative to
/// `first_line`.
RstTree parse_rst(std::string_view source, int first_line = 1);

// .rsx -- "# doc <id>" header, the tree on the following line(s), one blank
// line after each record.
std::vector<RstDocument> read_rst_trees(std::istream& in);
void write_rst_trees(std::ostream& out, const std::vector<RstDocument>& docs);

}  // namespace ddp
