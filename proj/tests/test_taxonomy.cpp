#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "stancetree/taxonomy.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace stancetree;

namespace {

const char* kMinimal = R"json({
  "schema_version": 1,
  "version": "t1",
  "topics": [
    {"mnemonic": "CORE-WAGES", "name": "Wages", "theme": "core mandate",
     "surface": "Wages (e.g. wage price index)", "phrases": ["wages growth"],
     "tree": {"terminal": {"stance": "neutral", "rationale": "only leaf"}}}
  ]
})json";

Taxonomy minimal() { return load_taxonomy(std::string_view(kMinimal)); }

bool has_code(const std::vector<Violation>& v, ViolationCode c) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.code == c; });
}

TreeNode leaf(Stance s) { return TreeNode{Terminal{s, ""}}; }

}  // namespace

TEST_CASE("minimal taxonomy with a single terminal loads") {
  Taxonomy t = minimal();
  REQUIRE(t.topics.size() == 1);
  CHECK(t.schema_version == 1);
  CHECK(t.version == "t1");
  CHECK(t.topics[0].tree.is_terminal());
  CHECK(t.topics[0].tree.terminal().stance == Stance::Neutral);
  CHECK(validate_taxonomy(t).empty());
  CHECK(t.find("CORE-WAGES") == &t.topics[0]);
  CHECK(t.find("CORE-NOPE") == nullptr);
}

TEST_CASE("question with one answer is rejected with a path to the node") {
  std::string text = kMinimal;
  const std::string leaf_json = R"({"terminal": {"stance": "neutral", "rationale": "only leaf"}})";
  text.replace(text.find(leaf_json), leaf_json.size(),
               R"({"question": "Are wages rising?", "answers": [{"label": "yes", "next": )" + leaf_json + "}]}");
  try {
    load_taxonomy(std::string_view(text));
    FAIL("expected a validation error");
  } catch (const TaxonomyValidationError& e) {
    REQUIRE(e.violations().size() == 1);
    CHECK(e.violations()[0].code == ViolationCode::EmptyAnswerSet);
    CHECK(e.violations()[0].path.find("CORE-WAGES") != std::string::npos);
    CHECK(e.violations()[0].path.find("tree") != std::string::npos);
  }
}

TEST_CASE("duplicate mnemonic is reported") {
  Taxonomy t = minimal();
  t.topics.push_back(t.topics[0]);
  auto v = validate_taxonomy(t);
  REQUIRE(v.size() == 1);
  CHECK(v[0].code == ViolationCode::DuplicateMnemonic);
}

TEST_CASE("answer label containing a newline is illegal") {
  Taxonomy t = minimal();
  Question q{"Are wages rising?", {Answer{"yes\nreally", leaf(Stance::Hawkish)}, Answer{"no", leaf(Stance::Dovish)}}};
  t.topics[0].tree = TreeNode{q};
  auto v = validate_taxonomy(t);
  REQUIRE(v.size() == 1);
  CHECK(v[0].code == ViolationCode::IllegalLabel);
}

TEST_CASE("other invariants produce their codes") {
  Taxonomy t = minimal();
  CHECK(has_code(validate_taxonomy(Taxonomy{}), ViolationCode::EmptyTaxonomy));

  Taxonomy bad = t;
  bad.topics[0].mnemonic = "core-wages";
  CHECK(has_code(validate_taxonomy(bad), ViolationCode::BadMnemonic));
  bad = t;
  bad.topics[0].mnemonic = "WAGES";
  CHECK(has_code(validate_taxonomy(bad), ViolationCode::BadMnemonic));

  bad = t;
  bad.topics[0].surface = "  ";
  CHECK(has_code(validate_taxonomy(bad), ViolationCode::EmptySurface));

  bad = t;
  bad.topics[0].phrases.push_back("");
  CHECK(has_code(validate_taxonomy(bad), ViolationCode::EmptyPhrase));

  bad = t;
  bad.topics[0].tree = TreeNode{Question{"q", {Answer{"a", leaf(Stance::Neutral)}, Answer{"a", leaf(Stance::Neutral)}}}};
  CHECK(has_code(validate_taxonomy(bad), ViolationCode::DuplicateLabel));

  bad = t;
  bad.topics[0].tree = TreeNode{Question{"", {Answer{"a", leaf(Stance::Neutral)}, Answer{"b", leaf(Stance::Neutral)}}}};
  CHECK(has_code(validate_taxonomy(bad), ViolationCode::EmptyQuestion));

  bad = t;
  bad.topics[0].tree =
      TreeNode{Question{"two\nlines", {Answer{"a", leaf(Stance::Neutral)}, Answer{"b", leaf(Stance::Neutral)}}}};
  CHECK(has_code(validate_taxonomy(bad), ViolationCode::IllegalQuestion));

  bad = t;
  bad.topics[0].tree = TreeNode{Question{"q", {Answer{"", leaf(Stance::Neutral)}, Answer{"b", leaf(Stance::Neutral)}}}};
  CHECK(has_code(validate_taxonomy(bad), ViolationCode::IllegalLabel));
}

TEST_CASE("malformed documents raise parse errors") {
  CHECK_THROWS_AS(load_taxonomy(std::string_view("{")), TaxonomyParseError);
  CHECK_THROWS_AS(load_taxonomy(std::string_view(R"({"schema_version": 1, "version": "x"})")), TaxonomyParseError);
  std::string bad_stance = kMinimal;
  bad_stance.replace(bad_stance.find("\"neutral\""), 9, "\"very hawkish\"");
  CHECK_THROWS_AS(load_taxonomy(std::string_view(bad_stance)), TaxonomyParseError);
  std::string both = kMinimal;
  both.replace(both.find("{\"terminal\""), 1, R"({"question": "q", "answers": [], )");
  CHECK_THROWS_AS(load_taxonomy(std::string_view(both)), TaxonomyParseError);
}

TEST_CASE("serialize then load is the identity") {
  std::mt19937_64 rng(7);
  Taxonomy t;
  t.version = "rt";
  for (int i = 0; i < 5; ++i) {
    Topic topic;
    topic.mnemonic = "T-TOPIC" + std::to_string(i);
    topic.name = "Topic " + std::to_string(i) + " \"quoted\"";
    topic.theme = "theme";
    topic.surface = "surface é " + std::to_string(i);
    topic.phrases = {"alpha", "beta gamma"};
    topic.tree = testutil::random_tree(rng, 3, 3);
    t.topics.push_back(topic);
  }
  const std::string once = serialize_taxonomy(t);
  Taxonomy back = load_taxonomy(std::string_view(once));
  CHECK(back == t);
  CHECK(serialize_taxonomy(back) == once);
}

TEST_CASE("count_leaves matches an independent recursion") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    TreeNode tree = testutil::random_tree(rng, 4, 4);
    CHECK(count_leaves(tree) == testutil::leaves(tree));
  }
}

TEST_CASE("shipped reference taxonomy") {
  REQUIRE(testutil::kReferenceTopics.size() == 66);

  const Taxonomy t = load_taxonomy_file(testutil::source_path("data/taxonomy/reference.json"));
  CHECK(validate_taxonomy(t).empty());
  REQUIRE(t.topics.size() == 66);
  for (std::size_t i = 0; i < testutil::kReferenceTopics.size(); ++i) {
    CAPTURE(i);
    CHECK(t.topics[i].mnemonic == testutil::kReferenceTopics[i].first);
    CHECK(t.topics[i].name == testutil::kReferenceTopics[i].second);
    CHECK(!t.topics[i].phrases.empty());
  }
  const Topic* inflation = t.find("CORE-INFLATION");
  REQUIRE(inflation);
  REQUIRE(!inflation->tree.is_terminal());
  const Question& q = inflation->tree.question();
  CHECK(q.text ==
        "Is inflation described as a risk, are policymakers willing to tolerate inflationary pressures, or is "
        "there no mention at all?");
  REQUIRE(q.answers.size() == 3);
  CHECK(q.answers[0].label == "inflation risk discussed");
  CHECK(q.answers[1].label == "willing to tolerate inflation pressures");
  CHECK(q.answers[2].label == "no mention of inflation");
  CHECK(serialize_taxonomy(load_taxonomy(std::string_view(serialize_taxonomy(t)))) == serialize_taxonomy(t));
}
