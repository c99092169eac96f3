#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <random>
#include <sstream>

#include "ddp/corpus_io.hpp"
#include "ddp/error.hpp"
#include "ddp/rst.hpp"
#include "ddp/stats.hpp"
#include "generators.hpp"

using namespace ddp;

namespace {

template <class Write, class T>
std::string write_str(Write write, const T& v) {
  std::ostringstream out;
  write(out, v);
  return out.str();
}

template <class Read>
auto read_str(Read read, const std::string& s) {
  std::istringstream in(s);
  return read(in);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int error_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const DataError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_SUITE("corpus-io") {
  TEST_CASE("dep corpus layout") {
    const auto doc = make_document("d1", {"a", "b"}, {0, 1});
    const std::string s = format_dep_corpus({doc});
    CHECK(s ==
          "# doc d1\n"
          "1\ta\t0\troot\t_\tannotated\thigh\n"
          "2\tb\t1\tjoint\t_\tannotated\thigh\n"
          "\n");
    CHECK(parse_dep_corpus(s) == std::vector<DepDocument>{doc});
  }

  TEST_CASE("empty stream is an empty corpus") { CHECK(parse_dep_corpus("").empty()); }

  TEST_CASE("dep corpus errors carry line numbers") {
    const std::string bad_head = "# doc d\n1\ta\t0\troot\t_\tannotated\thigh\n2\tb\t5\tjoint\t_\tannotated\thigh\n\n";
    CHECK_THROWS_WITH_AS(parse_dep_corpus(bad_head), doctest::Contains("head out of range at line 3"), DataError);

    const std::string dup = "# doc d\n1\ta\t0\troot\t_\tannotated\thigh\n1\tb\t1\tjoint\t_\tannotated\thigh\n\n";
    CHECK_THROWS_WITH_AS(parse_dep_corpus(dup), doctest::Contains("duplicate dependent"), DataError);

    const std::string short_row = "# doc d\n1\ta\t0\troot\n";
    CHECK(error_line([&] { parse_dep_corpus(short_row); }) == 2);

    const std::string bad_prov = "# doc d\n1\ta\t0\troot\t_\tguessed\thigh\n\n";
    CHECK(error_line([&] { parse_dep_corpus(bad_prov); }) == 2);

    const std::string gap = "# doc d\n1\ta\t0\troot\t_\tannotated\thigh\n3\tb\t1\tjoint\t_\tannotated\thigh\n\n";
    CHECK_THROWS_WITH_AS(parse_dep_corpus(gap), doctest::Contains("non-consecutive"), DataError);
  }

  TEST_CASE("crlf input is accepted") {
    const std::string s = "# doc d\r\n1\ta\t0\troot\t_\tannotated\thigh\r\n\r\n";
    CHECK(parse_dep_corpus(s).size() == 1);
  }

  TEST_CASE("writer refuses unrepresentable cells") {
    auto doc = make_document("d", {"a\tb"}, {0});
    CHECK_THROWS_AS(format_dep_corpus({doc}), DataError);
    doc = make_document("d", {"a"}, {0});
    doc.edges[0].rel_unified = "_";
    CHECK_THROWS_AS(format_dep_corpus({doc}), DataError);
  }

  TEST_CASE("dep corpus round-trips random corpora") {
    gen::Rng rng(11);
    for (int k = 0; k < 300; ++k) {
      const auto corpus = gen::random_corpus(rng, gen::uniform(rng, 0, 20));
      const std::string s = format_dep_corpus(corpus);
      const auto back = parse_dep_corpus(s);
      CHECK(back == corpus);
      CHECK(format_dep_corpus(back) == s);
    }
  }

  TEST_CASE("edu reader ignores structure columns") {
    const auto docs = read_str(read_edu_corpus, "# doc x\n1\tfirst\t_\t_\t_\t_\t_\n2\tsecond\n\n");
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].size() == 2);
    CHECK(docs[0].edges.empty());
    CHECK(docs[0].edu(2).text == "second");
  }

  TEST_CASE("rst reader examples") {
    auto t = parse_rst("(causality N [1|a] S [2|b])");
    CHECK(t == rst_node("causality", {{Nuclearity::N, rst_leaf(1, "a")}, {Nuclearity::S, rst_leaf(2, "b")}}));
    auto multi = parse_rst("(joint N [1|a] N [2|b] N [3|c])");
    CHECK(multi.internal().children.size() == 3);
    CHECK_THROWS_WITH_AS(parse_rst("(causality S [1|a] S [2|b])"), doctest::Contains("no nucleus child"), DataError);
    CHECK_THROWS_WITH_AS(parse_rst("(causality N [1|a]"), doctest::Contains("unbalanced parentheses"), DataError);
    CHECK_THROWS_WITH_AS(parse_rst("(causality N [1|a] S [2|b]))"), doctest::Contains("unbalanced parentheses"),
                         DataError);
    CHECK_THROWS_WITH_AS(parse_rst("(causality N [1|a])"), doctest::Contains("single-child"), DataError);
    CHECK_THROWS_AS(parse_rst("(joint N [2|a] N [1|b])"), DataError);
  }

  TEST_CASE("rst errors are positioned") {
    try {
      parse_rst("(joint N [1|a]\n  S [2|b] Q [3|c])", 4);
      FAIL("expected an error");
    } catch (const DataError& e) {
      CHECK(e.line() == 5);
      CHECK(e.column() > 0);
    }
  }

  TEST_CASE("rst labels may contain spaces; leaf text is escaped") {
    auto t = rst_node("example illustration",
                      {{Nuclearity::N, rst_leaf(1, "a]b\\c")}, {Nuclearity::S, rst_leaf(2, "x (y) [z")}});
    const std::string s = format_rst(t);
    CHECK(s == "(example illustration N [1|a\\]b\\\\c] S [2|x (y) [z])");
    CHECK(parse_rst(s) == t);
  }

  TEST_CASE("rsx round-trips random trees") {
    gen::Rng rng(12);
    for (int k = 0; k < 300; ++k) {
      std::vector<RstDocument> docs;
      for (int i = gen::uniform(rng, 0, 4); i > 0; --i) {
        docs.push_back({"r" + std::to_string(i), gen::random_rst(rng, gen::uniform(rng, 1, 10))});
      }
      const std::string s = write_str(write_rst_trees, docs);
      CHECK(read_str(read_rst_trees, s) == docs);
    }
  }

  TEST_CASE("rsx trees may span several lines") {
    const auto docs = read_str(read_rst_trees, "# doc a\n(joint N [1|x]\n   N [2|y])\n\n# doc b\n[1|only]\n");
    REQUIRE(docs.size() == 2);
    CHECK(docs[1].tree.is_leaf());
  }

  TEST_CASE("relation records") {
    const auto recs = read_str(read_pdtb_records, "d\texplicit\t因为\tcausality\t2,1\t3\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].arg1 == std::vector<int>{1, 2});
    CHECK(recs[0].kind == RelationKind::explicit_);
    CHECK_THROWS_AS(read_str(read_pdtb_records, "d\tsometimes\tc\tl\t1\t2\n"), DataError);
    CHECK_THROWS_AS(read_str(read_pdtb_records, "d\texplicit\tc\tl\t1,2\t2\n"), DataError);
    CHECK_THROWS_AS(read_str(read_pdtb_records, "d\texplicit\tc\tl\t\t2\n"), DataError);
    CHECK(error_line([] { read_str(read_pdtb_records, "# c\nd\texplicit\tc\tl\t1\t2\nd\timplicit\tc\n"); }) == 3);

    gen::Rng rng(13);
    for (int k = 0; k < 200; ++k) {
      const auto r = gen::random_records(rng, gen::uniform(rng, 0, 8));
      CHECK(read_str(read_pdtb_records, write_str(write_pdtb_records, r)) == r);
    }
  }

  TEST_CASE("marker rules") {
    const auto rules = read_str(read_marker_rules, "temporal\t后\tleft\ncausality\t所以\tright\n");
    REQUIRE(rules.size() == 2);
    CHECK(rules[1].attach == Attach::right);
    CHECK(read_str(read_marker_rules, write_str(write_marker_rules, rules)) == rules);
    CHECK_THROWS_AS(read_str(read_marker_rules, "temporal\t后\tup\n"), DataError);
  }

  TEST_CASE("relation mapping file") {
    const auto m = read_str(read_relation_mapping,
                            "SU\texample illustration\texplanation\nHIT\ttemporal.synchronous\ttemporal\n");
    CHECK(m.size() == 2);
    CHECK(*m.find(SchemeId::SU, "example illustration") == "explanation");
    CHECK(*m.find(SchemeId::HIT, "temporal.synchronous") == "temporal");
    CHECK_THROWS_WITH_AS(read_str(read_relation_mapping, "SU\tgoal\tgoal\nSU\tgoal\tpurpose\n"),
                         doctest::Contains("duplicate mapping"), DataError);
    CHECK_THROWS_AS(read_str(read_relation_mapping, "XX\tgoal\tgoal\n"), DataError);

    gen::Rng rng(14);
    for (int k = 0; k < 200; ++k) {
      const auto r = gen::random_mapping(rng, gen::uniform(rng, 0, 10));
      CHECK(read_str(read_relation_mapping, write_str(write_relation_mapping, r)) == r);
    }
  }

  TEST_CASE("review queue, corrections and splits") {
    ReviewItem item;
    item.doc_id = "d";
    item.edge.head = 1;
    item.edge.dependent = 2;
    item.edge.rel_original = "joint";
    item.reason = ReviewReason::no_marker_match;
    const std::string rvq = write_str(write_review_queue, std::vector<ReviewItem>{item});
    CHECK(rvq == "d\t2\t1\tjoint\tno_marker_match\n");
    const auto items = read_str(read_review_queue, rvq);
    REQUIRE(items.size() == 1);
    CHECK(items[0].edge.head == 1);
    CHECK(items[0].reason == ReviewReason::no_marker_match);

    const std::vector<Correction> fixes = {{"d", 2, 3, "causality"}};
    CHECK(read_str(read_corrections, write_str(write_corrections, fixes)) == fixes);

    const std::vector<EduSplitRecord> splits = {{"d", 2, {"f1", "f2", "f3"}, {{1, 2, "continuation"}, {1, 3, "joint"}}}};
    const std::string spl = write_str(write_edu_splits, splits);
    CHECK(spl == "d\t2\tf1|f2|f3\t1:2:continuation,1:3:joint\n");
    CHECK(read_str(read_edu_splits, spl) == splits);
  }

  TEST_CASE("head overrides") {
    const auto o = read_str(read_head_overrides, "causality\targ2\njoint\targ1\n");
    REQUIRE(o.size() == 2);
    CHECK(o[0].arg2_is_head);
    CHECK_FALSE(o[1].arg2_is_head);
    CHECK_THROWS_AS(read_str(read_head_overrides, "causality\tboth\n"), DataError);
  }

  TEST_CASE("canonical fixtures re-serialize byte for byte") {
    const std::string dir = DDP_FIXTURE_DIR;
    const std::string ddep = slurp(dir + "/sample.ddep");
    CHECK(format_dep_corpus(parse_dep_corpus(ddep)) == ddep);
    const std::string rsx = slurp(dir + "/sample.rsx");
    CHECK(write_str(write_rst_trees, read_str(read_rst_trees, rsx)) == rsx);
    const std::string pdr = slurp(dir + "/sample.pdr");
    CHECK(write_str(write_pdtb_records, read_str(read_pdtb_records, pdr)) == pdr);
    const std::string mkr = slurp(dir + "/sample.mkr");
    CHECK(write_str(write_marker_rules, read_str(read_marker_rules, mkr)) == mkr);
    const std::string map = slurp(dir + "/sample.map");
    CHECK(write_str(write_relation_mapping, read_str(read_relation_mapping, map)) == map);
  }

  TEST_CASE("corpus statistics") {
    const auto a = make_document("a", {"x", "y", "z"}, {0, 1, 1});
    const auto b = make_document("b", {"x", "y", "z"}, {0, 1, 2});
    const auto s = corpus_stats({a, b});
    CHECK(s.n_docs == 2);
    CHECK(s.n_relations == 4);
    CHECK(s.n_edus == 6);
    REQUIRE(s.relation_histogram.size() == 1);
    CHECK(s.relation_histogram[0].label == "joint");
    CHECK(s.relation_histogram[0].percent == doctest::Approx(100.0));
    CHECK(corpus_stats({a, b}, {LabelView::original, true}).n_relations == 6);

    const auto u = corpus_stats({a}, {LabelView::unified, false});
    CHECK(u.relation_histogram[0].label == "_");
  }

  TEST_CASE("statistics are permutation invariant and percentages sum to 100") {
    gen::Rng rng(15);
    for (int k = 0; k < 50; ++k) {
      auto corpus = gen::random_corpus(rng, gen::uniform(rng, 1, 20));
      const auto s1 = corpus_stats(corpus);
      std::shuffle(corpus.begin(), corpus.end(), rng);
      const auto s2 = corpus_stats(corpus);
      CHECK(s1.n_relations == s2.n_relations);
      CHECK(s1.avg_chars_per_doc == doctest::Approx(s2.avg_chars_per_doc));
      REQUIRE(s1.relation_histogram.size() == s2.relation_histogram.size());
      double total = 0;
      for (std::size_t i = 0; i < s1.relation_histogram.size(); ++i) {
        CHECK(s1.relation_histogram[i].label == s2.relation_histogram[i].label);
        CHECK(s1.relation_histogram[i].count == s2.relation_histogram[i].count);
        total += s1.relation_histogram[i].percent;
      }
      if (s1.n_relations > 0) CHECK(total == doctest::Approx(100.0).epsilon(0.001));
    }
  }

  TEST_CASE("split corpus") {
    gen::Rng rng(16);
    std::vector<DepDocument> docs;
    for (int i = 0; i < 10; ++i) docs.push_back(gen::random_document(rng, "d" + std::to_string(i), 3));
    const auto s1 = split_corpus(docs, 6, 2, 2, 7);
    const auto s2 = split_corpus(docs, 6, 2, 2, 7);
    CHECK(s1.train.size() == 6);
    CHECK(s1.dev.size() == 2);
    CHECK(s1.test.size() == 2);
    CHECK(s1.train == s2.train);
    CHECK(s1.dev == s2.dev);
    CHECK(s1.test == s2.test);
    std::set<std::string> ids;
    for (const auto* part : {&s1.train, &s1.dev, &s1.test}) {
      int last = -1;
      for (const auto& d : *part) {
        ids.insert(d.doc_id);
        const int pos = std::stoi(d.doc_id.substr(1));
        CHECK(pos > last);
        last = pos;
      }
    }
    CHECK(ids.size() == 10);
    CHECK_THROWS_AS(split_corpus(docs, 11, 0, 0, 7), DataError);
    CHECK(split_corpus(docs, 6, 2, 2, 8).train != s1.train);
  }

  TEST_CASE("table-sized split") {
    std::vector<DepDocument> docs;
    for (int i = 0; i < 2793; ++i) docs.push_back(make_document("d" + std::to_string(i), {"x"}, {0}));
    const auto s = split_corpus(docs, 1918, 470, 405, 1);
    CHECK(s.train.size() == 1918);
    CHECK(s.dev.size() == 470);
    CHECK(s.test.size() == 405);
  }
}
