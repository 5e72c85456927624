#include "doctest.h"

#include <random>
#include <set>

#include "stancetree/grammar.hpp"
#include "support/fixtures.hpp"

using namespace stancetree;

namespace {

TreeNode leaf(Stance s, std::string why = "") { return TreeNode{Terminal{s, std::move(why)}}; }

TreeNode inflation_tree() {
  return TreeNode{Question{
      "Is inflation described as a risk, are policymakers willing to tolerate inflationary pressures, or is there "
      "no mention at all?",
      {Answer{"inflation risk discussed", leaf(Stance::Hawkish)},
       Answer{"willing to tolerate inflation pressures", leaf(Stance::Dovish)},
       Answer{"no mention of inflation", leaf(Stance::Neutral)}}}};
}

TreeNode full_binary(int depth) {
  if (depth == 0) return leaf(Stance::Neutral);
  return TreeNode{Question{"level " + std::to_string(depth) + "?",
                           {Answer{"left", full_binary(depth - 1)}, Answer{"right", full_binary(depth - 1)}}}};
}

/// Oracle transcript built directly from the tree by following answer indices.
std::string oracle_transcript(const TreeNode& tree, const std::vector<std::size_t>& choices) {
  std::string out;
  const TreeNode* node = &tree;
  for (std::size_t c : choices) {
    const Question& q = node->question();
    out += "Q: " + q.text + "\n";
    out += "A: " + q.answers[c].label + "\n";
    node = &q.answers[c].next;
  }
  out += "ASSESSMENT: " + std::string(to_string(node->terminal().stance)) + "\n";
  return out;
}

void oracle_paths(const TreeNode& t, std::vector<std::size_t>& prefix, std::vector<std::vector<std::size_t>>& out) {
  if (t.is_terminal()) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t i = 0; i < t.question().answers.size(); ++i) {
    prefix.push_back(i);
    oracle_paths(t.question().answers[i].next, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

TEST_CASE("single terminal compiles to a one-string grammar") {
  const CompiledGrammar g = compile_tree(leaf(Stance::Neutral), "X-Y");
  CHECK(g.grammar_text == "root ::= \"ASSESSMENT: neutral\\n\"\n");
  CHECK(g.topic_mnemonic == "X-Y");
  const Grammar parsed = Grammar::parse(g.grammar_text);
  CHECK(parsed.enumerate() == std::vector<std::string>{"ASSESSMENT: neutral\n"});
  CHECK(parsed.accepts("ASSESSMENT: neutral\n"));
  CHECK(!parsed.accepts("ASSESSMENT: neutral"));
}

TEST_CASE("inflation question compiles to a three-way choice") {
  const CompiledGrammar g = compile_tree(inflation_tree());
  const Grammar parsed = Grammar::parse(g.grammar_text);
  const auto& root = parsed.rule("root");
  REQUIRE(root.alternatives.size() == 1);
  const auto& seq = root.alternatives[0];
  REQUIRE(seq.size() == 2);
  CHECK(seq[0].kind == Grammar::Item::Kind::Terminal);
  REQUIRE(seq[1].kind == Grammar::Item::Kind::Group);
  CHECK(seq[1].alternatives.size() == 3);
  CHECK(parsed.rules().size() == 4);  // root plus one rule per branch
  CHECK(g.node_ids.at("root").empty());
  CHECK(g.node_ids.at("n_2") == std::vector<std::size_t>{2});
  CHECK(parsed.accepts(
      "Q: Is inflation described as a risk, are policymakers willing to tolerate inflationary pressures, or is "
      "there no mention at all?\nA: inflation risk discussed\nASSESSMENT: hawkish\n"));
}

TEST_CASE("enumerate_paths counts and order") {
  CHECK(enumerate_paths(leaf(Stance::Dovish)).size() == 1);
  CHECK(enumerate_paths(leaf(Stance::Dovish))[0].steps.empty());
  const auto three = enumerate_paths(inflation_tree());
  REQUIRE(three.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(three[i].steps.size() == 1);
    CHECK(three[i].steps[0].answer_index == i);
  }
  CHECK(enumerate_paths(full_binary(4)).size() == 16);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    TreeNode t = testutil::random_tree(rng, 4, 4);
    std::vector<std::size_t> prefix;
    std::vector<std::vector<std::size_t>> expected;
    oracle_paths(t, prefix, expected);
    const auto paths = enumerate_paths(t);
    REQUIRE(paths.size() == expected.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
      std::vector<std::size_t> got;
      for (const auto& s : paths[i].steps) got.push_back(s.answer_index);
      CHECK(got == expected[i]);
      CHECK(render_transcript(paths[i]) == oracle_transcript(t, expected[i]));
    }
  }
}

TEST_CASE("random depth-3 binary trees: all paths accepted, swapped labels rejected") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    TreeNode t = full_binary(3);
    // Relabel with random distinct labels.
    std::function<void(TreeNode&)> relabel = [&](TreeNode& n) {
      if (n.is_terminal()) {
        std::get<Terminal>(n.node).stance = static_cast<Stance>(rng() % 5);
        return;
      }
      auto& q = std::get<Question>(n.node);
      q.text = testutil::random_text(rng, 2, 5) + "?";
      q.answers[0].label = "a " + testutil::random_word(rng);
      q.answers[1].label = "b " + testutil::random_word(rng);
      for (auto& a : q.answers) relabel(a.next);
    };
    relabel(t);
    const Grammar g = Grammar::parse(compile_tree(t).grammar_text);
    const auto paths = enumerate_paths(t);
    CHECK(paths.size() == 8);
    for (const auto& p : paths) {
      const std::string text = render_transcript(p);
      CHECK(g.accepts(text));
      // Swap the first answer label for its sibling's label under the wrong question.
      std::string swapped = text;
      const auto& q = t.question();
      const std::string& wrong = q.answers[1 - p.steps[0].answer_index].label;
      const std::string right = "A: " + p.steps[0].answer + "\n";
      swapped.replace(swapped.find(right), right.size(), "A: " + wrong + "x\n");
      CHECK(!g.accepts(swapped));
    }
  }
}

TEST_CASE("parse inverts render on random trees and the grammar language equals the path set") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    TreeNode t = testutil::random_tree(rng, 4, 3);
    const auto paths = enumerate_paths(t);
    std::set<std::string> rendered;
    for (const auto& p : paths) {
      const std::string text = render_transcript(p);
      rendered.insert(text);
      CHECK(parse_transcript(t, text) == p);
    }
    const Grammar g = Grammar::parse(compile_tree(t).grammar_text);
    const auto language = g.enumerate();
    CHECK(std::set<std::string>(language.begin(), language.end()) == rendered);
    CHECK(language.size() == paths.size());
  }
}

TEST_CASE("parse errors locate the divergence") {
  const TreeNode t = inflation_tree();
  const std::string q =
      "Q: Is inflation described as a risk, are policymakers willing to tolerate inflationary pressures, or is "
      "there no mention at all?\n";
  try {
    parse_transcript(t, q + "A: no mention of inflatoin\nASSESSMENT: neutral\n");
    FAIL("accepted a misspelt label");
  } catch (const TranscriptError& e) {
    CHECK(e.kind() == TranscriptErrorKind::UnknownAnswer);
    CHECK(e.line() == 2);
    CHECK(e.offset() == q.size() + std::string("A: no mention of inflat").size());
  }
  try {
    parse_transcript(t, q + "A: no mention of inflation\n");
    FAIL("accepted a truncated transcript");
  } catch (const TranscriptError& e) {
    CHECK(e.kind() == TranscriptErrorKind::Truncated);
  }
  try {
    parse_transcript(t, q + "A: no mention of inflation\nASSESSMENT: neutral\nmore");
    FAIL("accepted trailing text");
  } catch (const TranscriptError& e) {
    CHECK(e.kind() == TranscriptErrorKind::TrailingText);
  }
  try {
    parse_transcript(t, "Q: Is growth strong?\nA: yes\nASSESSMENT: neutral\n");
    FAIL("accepted a wrong question");
  } catch (const TranscriptError& e) {
    CHECK(e.kind() == TranscriptErrorKind::QuestionMismatch);
    CHECK(e.line() == 1);
  }
  try {
    parse_transcript(t, q + "A: no mention of inflation\nASSESSMENT: hawkish\n");
    FAIL("accepted the wrong assessment");
  } catch (const TranscriptError& e) {
    CHECK(e.kind() == TranscriptErrorKind::BadAssessment);
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_transcript(t, q + "A:  no mention of inflation\nASSESSMENT: neutral\n"), TranscriptError);
}

TEST_CASE("compilation is deterministic and escapes terminals") {
  std::mt19937_64 rng(13);
  TreeNode t = testutil::random_tree(rng, 4, 4);
  CHECK(compile_tree(t).grammar_text == compile_tree(t).grammar_text);
  CHECK(quote_terminal("a\"b\\c\nd") == "\"a\\\"b\\\\c\\nd\"");

  TreeNode tricky{Question{"Say \"hi\" \\ now?", {Answer{"yes \"x\"", leaf(Stance::Hawkish)},
                                                   Answer{"back\\slash", leaf(Stance::Dovish)}}}};
  const Grammar g = Grammar::parse(compile_tree(tricky).grammar_text);
  for (const auto& p : enumerate_paths(tricky)) CHECK(g.accepts(render_transcript(p)));
}

TEST_CASE("grammar text validation") {
  CHECK_THROWS_AS(Grammar::parse("a ::= \"x\"\nroot ::= a\n"), GrammarError);
  CHECK_THROWS_AS(Grammar::parse("root ::= a\n"), GrammarError);
  CHECK_THROWS_AS(Grammar::parse("root ::= \"x\"\nroot ::= \"y\"\n"), GrammarError);
  CHECK_THROWS_AS(Grammar::parse("root ::= a\na ::= \"x\" a\n"), GrammarError);
  CHECK_THROWS_AS(Grammar::parse("root ::= \"unterminated\n"), GrammarError);
  CHECK_THROWS_AS(Grammar::parse("root ::= ( \"x\" | \"y\"\n"), GrammarError);
  const Grammar ok = Grammar::parse("# comment\n\nroot ::= \"a\" ( \"b\" | \"c\" x )\nx ::= \"d\"\n");
  CHECK(ok.enumerate() == std::vector<std::string>{"ab", "acd"});
}

TEST_CASE("generate follows the chooser") {
  const TreeNode t = inflation_tree();
  const Grammar g = Grammar::parse(compile_tree(t).grammar_text);
  for (std::size_t pick = 0; pick < 3; ++pick) {
    const std::string out = g.generate([&](std::string_view, const std::vector<std::string>& previews) {
      CHECK(previews.size() == 3);
      return pick;
    });
    CHECK(out == oracle_transcript(t, {pick}));
  }
}
