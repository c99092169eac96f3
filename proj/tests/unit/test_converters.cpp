#include <doctest.h>

#include <algorithm>
#include <set>

#include "ddp/convert.hpp"
#include "ddp/error.hpp"
#include "ddp/rst.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace ddp;

namespace {

std::vector<Edu> edus_of(const std::vector<std::string>& texts) {
  std::vector<Edu> out;
  for (std::size_t i = 0; i < texts.size(); ++i) out.push_back(make_edu(static_cast<int>(i) + 1, texts[i]));
  return out;
}

void check_edge(const DepDocument& d, int dep, int head, const std::string& label) {
  INFO("EDU " << dep);
  CHECK(d.edge_of(dep).head == head);
  CHECK(d.edge_of(dep).rel_original == label);
}

PdtbRelationRecord record(std::string label, std::vector<int> a1, std::vector<int> a2) {
  return PdtbRelationRecord{"d", RelationKind::implicit, "_", std::move(label), std::move(a1), std::move(a2)};
}

}  // namespace

TEST_SUITE("converters") {
  TEST_CASE("rst to dependency examples") {
    auto d = rst_to_dep("a", parse_rst("(causality N [1|a] S [2|b])"));
    check_edge(d, 1, 0, "root");
    check_edge(d, 2, 1, "causality");
    CHECK(d.edge_of(2).provenance == Provenance::converted);

    d = rst_to_dep("b", parse_rst("(joint N [1|a] N [2|b] N [3|c])"));
    check_edge(d, 2, 1, "joint");
    check_edge(d, 3, 1, "joint");

    d = rst_to_dep("c", parse_rst("(explanation N (joint N [1|a] N [2|b]) S [3|c])"));
    check_edge(d, 1, 0, "root");
    check_edge(d, 2, 1, "joint");
    check_edge(d, 3, 1, "explanation");

    d = rst_to_dep("e", parse_rst("(purpose S [1|a] N [2|b])"));
    check_edge(d, 2, 0, "root");
    check_edge(d, 1, 2, "purpose");

    d = rst_to_dep("f", parse_rst("[1|alone]"));
    check_edge(d, 1, 0, "root");
  }

  TEST_CASE("rst conversion rejects invalid trees") {
    auto bad = rst_node("x", {{Nuclearity::S, rst_leaf(1, "a")}, {Nuclearity::S, rst_leaf(2, "b")}});
    CHECK_THROWS_AS(rst_to_dep("x", bad), DataError);
  }

  TEST_CASE("left-branching all-nucleus trees give a star") {
    for (int n = 2; n <= 8; ++n) {
      RstTree t = rst_leaf(1, "e1");
      for (int k = 2; k <= n; ++k) {
        t = rst_node("joint", {{Nuclearity::N, t}, {Nuclearity::N, rst_leaf(k, "e" + std::to_string(k))}});
      }
      const auto d = rst_to_dep("s", t);
      for (int k = 2; k <= n; ++k) CHECK(d.edge_of(k).head == 1);
    }
  }

  TEST_CASE("binary nucleus-satellite trees attach satellite heads") {
    gen::Rng rng(21);
    for (int k = 0; k < 300; ++k) {
      const auto t = gen::random_rst(rng, gen::uniform(rng, 1, 9));
      const auto d = rst_to_dep("r", t);
      const auto expected = oracle::percolate(t);
      for (int e = 1; e <= d.size(); ++e) {
        CHECK(d.edge_of(e).head == expected[e - 1].head);
        CHECK(d.edge_of(e).rel_original == expected[e - 1].label);
      }
      CHECK(is_valid_tree(d));
      CHECK(is_projective(d));
    }
  }

  TEST_CASE("edu splits renumber downstream EDUs") {
    const auto doc = make_document("d", {"a", "b"}, {0, 1});
    const EduSplitRecord split{"d", 2, {"f1", "f2"}, {{1, 2, "continuation"}}};
    const auto out = apply_edu_splits(doc, std::vector<EduSplitRecord>{split});
    REQUIRE(out.size() == 3);
    check_edge(out, 1, 0, "root");
    check_edge(out, 2, 1, "joint");
    check_edge(out, 3, 2, "continuation");
    CHECK(out.edu(3).text == "f2");
    CHECK(apply_edu_splits(doc, {}) == doc);
  }

  TEST_CASE("split root part inherits incoming and outgoing edges") {
    // 0->2, 2->1, 2->3; split EDU 2 into three parts headed by part 2.
    const auto doc = make_document("d", {"a", "b", "c"}, {2, 0, 2}, {"x", "root", "y"});
    const EduSplitRecord split{"d", 2, {"p", "q", "r"}, {{2, 1, "l1"}, {2, 3, "l2"}}};
    const auto out = apply_edu_splits(doc, std::vector<EduSplitRecord>{split});
    REQUIRE(out.size() == 5);
    check_edge(out, 1, 3, "x");
    check_edge(out, 2, 3, "l1");
    check_edge(out, 3, 0, "root");
    check_edge(out, 4, 3, "l2");
    check_edge(out, 5, 3, "y");
    CHECK(is_valid_tree(out));
  }

  TEST_CASE("invalid splits are rejected") {
    const auto doc = make_document("d", {"a", "b"}, {0, 1});
    const EduSplitRecord cyclic{"d", 2, {"f1", "f2"}, {{1, 2, "x"}, {2, 1, "y"}}};
    CHECK_THROWS_AS(apply_edu_splits(doc, std::vector<EduSplitRecord>{cyclic}), DataError);
    const EduSplitRecord missing{"d", 2, {"f1", "f2", "f3"}, {{1, 2, "x"}}};
    CHECK_THROWS_AS(apply_edu_splits(doc, std::vector<EduSplitRecord>{missing}), DataError);
    const EduSplitRecord out_of_range{"d", 7, {"f1", "f2"}, {{1, 2, "x"}}};
    CHECK_THROWS_AS(apply_edu_splits(doc, std::vector<EduSplitRecord>{out_of_range}), DataError);
    const EduSplitRecord twice{"d", 2, {"f1", "f2"}, {{1, 2, "x"}}};
    CHECK_THROWS_WITH_AS(apply_edu_splits(doc, std::vector<EduSplitRecord>{twice, twice}),
                         doctest::Contains("collision"), DataError);
  }

  TEST_CASE("splits preserve validity and add parts") {
    gen::Rng rng(22);
    for (int k = 0; k < 200; ++k) {
      const int n = gen::uniform(rng, 1, 7);
      const auto doc = gen::random_document(rng, "d", n);
      std::vector<EduSplitRecord> splits;
      int added = 0;
      for (int e = 1; e <= n; ++e) {
        if (!gen::coin(rng, 0.3)) continue;
        const int parts = gen::uniform(rng, 2, 4);
        EduSplitRecord s{"d", e, {}, {}};
        for (int p = 0; p < parts; ++p) s.parts.push_back(gen::text(rng));
        const auto intra = gen::random_tree(rng, parts);
        for (int p = 1; p <= parts; ++p) {
          if (intra[p - 1] != 0) s.intra_edges.push_back({intra[p - 1], p, gen::label(rng)});
        }
        added += parts - 1;
        splits.push_back(std::move(s));
      }
      const auto out = apply_edu_splits(doc, splits);
      CHECK(out.size() == n + added);
      CHECK(is_valid_tree(out));
    }
  }

  TEST_CASE("complementing a range") {
    const std::vector<MarkerRule> rules = {{"temporal", "后", Attach::left}, {"causality", "所以", Attach::right}};

    auto one = complement_subtree(edus_of({"a"}), rules);
    CHECK(one.edges.empty());
    CHECK(one.review.empty());
    CHECK(one.root == 1);

    auto temporal = complement_subtree(edus_of({"他吃了饭", "然后出门"}), rules);
    REQUIRE(temporal.edges.size() == 1);
    CHECK(temporal.edges[0].head == 1);
    CHECK(temporal.edges[0].dependent == 2);
    CHECK(temporal.edges[0].rel_original == "temporal");
    CHECK(temporal.edges[0].provenance == Provenance::complemented);
    CHECK(temporal.review.empty());

    auto fallback = complement_subtree(edus_of({"甲", "乙"}), rules);
    REQUIRE(fallback.edges.size() == 1);
    CHECK(fallback.edges[0].head == 1);
    CHECK(fallback.edges[0].rel_original == "joint");
    REQUIRE(fallback.review.size() == 1);
    CHECK(fallback.review[0].reason == ReviewReason::no_marker_match);

    auto right = complement_subtree(edus_of({"下雨了", "所以取消"}), rules);
    REQUIRE(right.edges.size() == 1);
    CHECK(right.edges[0].head == 2);
    CHECK(right.edges[0].dependent == 1);
    CHECK(right.root == 2);
  }

  TEST_CASE("longest marker wins") {
    const std::vector<MarkerRule> rules = {{"temporal", "前", Attach::left}, {"condition", "之前", Attach::left}};
    auto r = complement_subtree(edus_of({"甲", "在这之前"}), rules);
    REQUIRE(r.edges.size() == 1);
    CHECK(r.edges[0].rel_original == "condition");
  }

  TEST_CASE("complemented ranges form a single subtree") {
    gen::Rng rng(23);
    for (int k = 0; k < 300; ++k) {
      auto pc = gen::random_pdtb_case(rng, 10, true);
      const auto r = complement_subtree(pc.edus, pc.rules);
      CHECK(r.edges.size() == pc.edus.size() - 1);
      std::vector<int> heads(pc.edus.size(), 0);
      for (const auto& e : r.edges) heads[e.dependent - 1] = e.head;
      CHECK(oracle::is_tree(heads));
      CHECK(oracle::root_children(heads) == 1);
      CHECK(heads[r.root - 1] == 0);
    }
  }

  TEST_CASE("relation records example with a gap") {
    const auto conv = pdtb_to_dep("d", edus_of({"甲", "乙", "丙"}), std::vector{record("causality", {1}, {3})}, {});
    const auto& d = conv.doc;
    check_edge(d, 1, 0, "root");
    check_edge(d, 3, 1, "causality");
    CHECK(d.edge_of(3).provenance == Provenance::annotated);
    check_edge(d, 2, 1, "joint");
    CHECK(d.edge_of(2).provenance == Provenance::complemented);
    REQUIRE(conv.review.size() == 1);
    CHECK(conv.review[0].edge.dependent == 2);
  }

  TEST_CASE("single record, two EDUs") {
    const auto conv = pdtb_to_dep("d", edus_of({"甲", "乙"}), std::vector{record("joint", {1}, {2})}, {});
    check_edge(conv.doc, 1, 0, "root");
    check_edge(conv.doc, 2, 1, "joint");
    CHECK(conv.review.empty());
  }

  TEST_CASE("conflicting records") {
    const std::vector<PdtbRelationRecord> recs = {record("joint", {1}, {2}), record("causality", {3}, {2})};
    CHECK_THROWS_WITH_AS(pdtb_to_dep("d", edus_of({"a", "b", "c"}), recs, {}),
                         doctest::Contains("conflicting heads for EDU 2"), DataError);
    const std::vector<PdtbRelationRecord> cyc = {record("joint", {1}, {2}), record("joint", {2}, {1})};
    CHECK_THROWS_AS(pdtb_to_dep("d", edus_of({"a", "b"}), cyc, {}), DataError);
    CHECK_THROWS_AS(pdtb_to_dep("d", edus_of({"a", "b"}), std::vector{record("joint", {1}, {5})}, {}), DataError);
  }

  TEST_CASE("nested records replace arguments by their roots") {
    // (1 <- 2) then {1,2} -> {3,4} with 3 <- 4.
    const std::vector<PdtbRelationRecord> recs = {record("progressive", {1, 2}, {3, 4}), record("causality", {1}, {2}),
                                                  record("contrast", {3}, {4})};
    const auto conv = pdtb_to_dep("d", edus_of({"a", "b", "c", "d"}), recs, {});
    check_edge(conv.doc, 1, 0, "root");
    check_edge(conv.doc, 2, 1, "causality");
    check_edge(conv.doc, 3, 1, "progressive");
    check_edge(conv.doc, 4, 3, "contrast");
    CHECK(conv.review.empty());
  }

  TEST_CASE("head override reverses the inter-argument edge") {
    PdtbConversionOptions opts;
    opts.head_overrides = {{"causality", true}};
    const auto conv = pdtb_to_dep("d", edus_of({"a", "b"}), std::vector{record("causality", {1}, {2})}, {}, opts);
    check_edge(conv.doc, 2, 0, "root");
    check_edge(conv.doc, 1, 2, "causality");
    REQUIRE(conv.review.size() == 1);
    CHECK(conv.review[0].reason == ReviewReason::head_direction_default);
  }

  TEST_CASE("conversion is total on hierarchical record sets") {
    gen::Rng rng(24);
    for (int k = 0; k < 300; ++k) {
      auto pc = gen::random_pdtb_case(rng, 10, gen::coin(rng));
      const auto conv = pdtb_to_dep("pdtb", pc.edus, pc.records, pc.rules);
      CHECK(is_valid_tree(conv.doc));
      CHECK(conv.doc.edges.size() == pc.edus.size());
      const auto annotated = std::count_if(conv.doc.edges.begin(), conv.doc.edges.end(),
                                           [](const DepEdge& e) { return e.provenance == Provenance::annotated; });
      CHECK(annotated == static_cast<long>(pc.records.size()));
      for (const auto& e : conv.doc.edges) {
        if (e.confidence != Confidence::review) continue;
        const bool queued = std::any_of(conv.review.begin(), conv.review.end(), [&](const ReviewItem& r) {
          return r.edge.dependent == e.dependent && r.edge.head == e.head;
        });
        CHECK(queued);
      }
    }
  }

  TEST_CASE("relation mapping") {
    const auto mapping = default_mapping();
    auto doc = make_document("d", {"a", "b", "c"}, {0, 1, 1}, {"root", "example illustration", "mystery"});
    CHECK_THROWS_AS(map_relations({doc}, mapping, SchemeId::SU, true), DataError);
    const auto lenient = map_relations({doc}, mapping, SchemeId::SU, false);
    CHECK(lenient.misses == 1);
    CHECK(lenient.missing_labels == std::vector<std::string>{"mystery"});
    CHECK(lenient.docs[0].edge_of(1).rel_unified == std::optional<std::string>("root"));
    CHECK(lenient.docs[0].edge_of(2).rel_unified == std::optional<std::string>("explanation"));
    CHECK_FALSE(lenient.docs[0].edge_of(3).rel_unified.has_value());
    CHECK(map_relations(lenient.docs, mapping, SchemeId::SU, false).docs == lenient.docs);

    const auto hit = make_document("h", {"a", "b"}, {0, 1}, {"root", "temporal.synchronous"});
    CHECK(map_relations({hit}, mapping, SchemeId::HIT, true).docs[0].edge_of(2).rel_unified ==
          std::optional<std::string>("temporal"));
  }

  TEST_CASE("corrections") {
    const auto doc = make_document("d", {"a", "b", "c"}, {0, 1, 1});
    const auto fixed = apply_corrections(doc, std::vector<Correction>{{"d", 2, 3, "causality"}});
    check_edge(fixed, 2, 3, "causality");
    CHECK(is_valid_tree(fixed));

    CHECK_THROWS_AS(apply_corrections(doc, std::vector<Correction>{{"d", 2, 3, "x"}, {"d", 3, 2, "y"}}), DataError);
    CHECK(apply_corrections(doc, {}) == doc);
    CHECK(apply_corrections(doc, std::vector<Correction>{{"other", 2, 3, "x"}}) == doc);
    CHECK_THROWS_AS(apply_corrections(doc, std::vector<Correction>{{"d", 9, 1, "x"}}), DataError);
  }
}
