#include <doctest.h>

#include <algorithm>

#include "ddp/error.hpp"
#include "ddp/schemes.hpp"
#include "ddp/text.hpp"
#include "ddp/tree.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace ddp;

namespace {

DepDocument doc_with(const std::vector<int>& heads) {
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < heads.size(); ++i) texts.push_back("edu" + std::to_string(i + 1));
  return make_document("d", texts, heads);
}

bool has(const ValidationReport& r, ViolationKind k) {
  return std::any_of(r.begin(), r.end(), [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST_SUITE("discourse-core") {
  TEST_CASE("edu character length counts code points") {
    CHECK(make_edu(1, "公司abc").char_len == 5);
    CHECK(text::utf8_length("é。") == 2);
  }

  TEST_CASE("chain tree validates") { CHECK(validate_tree(doc_with({0, 1, 2})).empty()); }

  TEST_CASE("two root children depend on policy") {
    const auto doc = doc_with({0, 0});
    const auto strict = validate_tree(doc);
    REQUIRE(strict.size() == 1);
    CHECK(strict[0].kind == ViolationKind::multiple_root_children);
    CHECK(validate_tree(doc, ValidationPolicy{false}).empty());
  }

  TEST_CASE("two-cycle reports missing root and a cycle") {
    const auto r = validate_tree(doc_with({2, 1}));
    CHECK(has(r, ViolationKind::no_root));
    CHECK(has(r, ViolationKind::cycle));
    CHECK_FALSE(has(r, ViolationKind::unreachable));
  }

  TEST_CASE("validation is total on malformed documents") {
    DepDocument d = doc_with({0, 1, 2});
    d.edges.pop_back();
    d.edus[1].text.clear();
    d.edges[1].head = 9;
    d.edges[0].dependent = 3;
    ValidationReport r;
    CHECK_NOTHROW(r = validate_tree(d));
    CHECK(has(r, ViolationKind::edge_count_mismatch));
    CHECK(has(r, ViolationKind::empty_text));
    CHECK(has(r, ViolationKind::head_out_of_range));
    CHECK(has(r, ViolationKind::dependent_mismatch));

    DepDocument loop = doc_with({0, 2});
    CHECK(has(validate_tree(loop), ViolationKind::self_loop));
    DepDocument empty;
    CHECK_NOTHROW(validate_tree(empty));
  }

  TEST_CASE("validation agrees with breadth-first reachability") {
    gen::Rng rng(1);
    for (int k = 0; k < 2000; ++k) {
      const int n = gen::uniform(rng, 1, 6);
      std::vector<int> heads(n);
      for (auto& h : heads) h = gen::uniform(rng, 0, n);
      const bool expected = oracle::is_tree(heads) && oracle::root_children(heads) == 1;
      CHECK(is_valid_tree(doc_with(heads)) == expected);
    }
  }

  TEST_CASE("projectivity examples") {
    CHECK(is_projective(doc_with({2, 0, 2})));
    CHECK(is_projective(doc_with({0, 3, 1})));
    CHECK(is_projective(doc_with({0, 3, 1, 1})));
    CHECK_FALSE(is_projective(doc_with({3, 3, 0, 1})));
    CHECK_THROWS_WITH_AS(is_projective(doc_with({2, 1})), doctest::Contains("invalid tree"), DataError);
  }

  TEST_CASE("projectivity agrees with pairwise crossing check") {
    gen::Rng rng(2);
    for (int k = 0; k < 3000; ++k) {
      const auto heads = gen::random_tree(rng, gen::uniform(rng, 1, 8), gen::coin(rng));
      const auto doc = doc_with(heads);
      if (!is_valid_tree(doc, ValidationPolicy{false})) continue;
      CHECK(is_projective(doc) == oracle::no_crossing(heads));
      CHECK(is_projective_heads(heads) == oracle::no_crossing(heads));
    }
  }

  TEST_CASE("subtree root") {
    const auto doc = doc_with({0, 1, 1});
    CHECK(subtree_root(doc, {2}) == 2);
    CHECK(subtree_root(doc, {1, 2, 3}) == 1);
    CHECK_THROWS_WITH_AS(subtree_root(doc, {2, 3}), doctest::Contains("not a subtree"), DataError);
    CHECK_THROWS_AS(subtree_root(doc, {}), DataError);

    gen::Rng rng(3);
    for (int k = 0; k < 200; ++k) {
      const int n = gen::uniform(rng, 1, 8);
      const auto d = doc_with(gen::random_tree(rng, n));
      std::set<int> all;
      for (int i = 1; i <= n; ++i) all.insert(i);
      const auto heads = heads_of(d);
      CHECK(subtree_root(d, all) == static_cast<int>(std::find(heads.begin(), heads.end(), 0) - heads.begin()) + 1);
    }
  }

  TEST_CASE("tree features") {
    const auto chain = doc_with({0, 1, 2});
    CHECK(tree_features(chain, 3) == TreeFeatures{3, 0, 0, 1});
    const auto star = doc_with({0, 1, 1, 1});
    const auto f3 = tree_features(star, 3);
    CHECK(f3.depth == 2);
    CHECK(f3.sibling_count == 2);
    CHECK(f3.child_count == 0);
    const auto f1 = tree_features(star, 1);
    CHECK(f1.depth == 1);
    CHECK(f1.child_count == 3);
    CHECK(f1.head_distance == 1);
    CHECK(tree_features(doc_with({2, 0}), 1).head_distance == -1);
  }

  TEST_CASE("make_document defaults labels") {
    const auto d = doc_with({0, 1});
    CHECK(d.edge_of(1).rel_original == "root");
    CHECK(d.edge_of(2).rel_original == "joint");
    CHECK(heads_of(d) == std::vector<int>{0, 1});
  }

  TEST_CASE("enum spellings round-trip") {
    for (auto p : {Provenance::annotated, Provenance::complemented, Provenance::converted}) {
      CHECK(parse_provenance(to_string(p)) == p);
    }
    for (auto c : {Confidence::high, Confidence::review}) CHECK(parse_confidence(to_string(c)) == c);
    CHECK_FALSE(parse_provenance("manual").has_value());
  }

  TEST_CASE("relation schemes") {
    CHECK(published_cardinality(SchemeId::HIT) == 22);
    CHECK(published_cardinality(SchemeId::SU) == 18);
    CHECK(published_cardinality(SchemeId::SCI) == 26);
    CHECK(published_cardinality(SchemeId::UNIFIED) == 17);
    for (auto id : {SchemeId::HIT, SchemeId::SU, SchemeId::SCI, SchemeId::UNIFIED}) {
      const auto s = attested_scheme(id);
      CHECK(s.cardinality() == static_cast<int>(s.labels.size()));
      CHECK(s.cardinality() <= published_cardinality(id));
      CHECK(parse_scheme(to_string(id)) == id);
    }
    CHECK(attested_scheme(SchemeId::SU).contains("example illustration"));
    CHECK_FALSE(attested_scheme(SchemeId::UNIFIED).contains("example illustration"));
    CHECK(attested_scheme(SchemeId::UNIFIED).contains("joint"));
  }

  TEST_CASE("relation mapping rejects duplicate keys") {
    RelationMapping m;
    CHECK(m.add(SchemeId::SU, "goal", "goal"));
    CHECK_FALSE(m.add(SchemeId::SU, "goal", "purpose"));
    CHECK(*m.find(SchemeId::SU, "goal") == "goal");
    CHECK(m.find(SchemeId::HIT, "goal") == nullptr);
  }

  TEST_CASE("text helpers") {
    CHECK(text::split("a\tb\t", '\t') == std::vector<std::string>{"a", "b", ""});
    int v = 0;
    CHECK(text::parse_int("42", v));
    CHECK(v == 42);
    CHECK_FALSE(text::parse_int("4x", v));
    double d = 0;
    CHECK(text::parse_double(text::format_double(0.1 + 0.2), d));
    CHECK(d == 0.1 + 0.2);
  }
}
