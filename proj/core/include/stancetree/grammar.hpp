#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stancetree/taxonomy.hpp"

namespace stancetree {

// ---------------------------------------------------------------------------
// Decision-tree transcripts
// ---------------------------------------------------------------------------

struct PathStep {
  std::string question;
  std::string answer;
  std::size_t answer_index = 0;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// One root-to-leaf walk through a decision tree.
struct TreePath {
  std::vector<PathStep> steps;
  Terminal terminal;

  friend bool operator==(const TreePath&, const TreePath&) = default;
};

/// All root-to-leaf paths, ordered lexicographically by answer-index sequence.
std::vector<TreePath> enumerate_paths(const TreeNode& tree);

/// Canonical transcript: "Q: <question>\nA: <answer>\n" per step, then
/// "ASSESSMENT: <stance>\n".
std::string render_transcript(const TreePath& path);

enum class TranscriptErrorKind {
  QuestionMismatch,
  UnknownAnswer,
  BadAssessment,
  Truncated,
  TrailingText,
};

/// Rejection of a transcript, located at the first divergence from every
/// transcript the tree admits.
class TranscriptError : public std::runtime_error {
 public:
  TranscriptError(TranscriptErrorKind kind, std::size_t offset, std::size_t line,
                  std::size_t column, const std::string& detail);

  TranscriptErrorKind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }      // 1-based
  std::size_t column() const { return column_; }  // 1-based

 private:
  TranscriptErrorKind kind_;
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
};

/// Exact parse; no whitespace forgiveness beyond the canonical form.
TreePath parse_transcript(const TreeNode& tree, std::string_view text);
TreePath parse_transcript(const Topic& topic, std::string_view text);

// ---------------------------------------------------------------------------
// Compilation to grammar text
// ---------------------------------------------------------------------------

class GrammarCompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CompiledGrammar {
  std::string grammar_text;
  /// Nonterminal name -> answer-index path from the root ("root" -> {}).
  std::map<std::string, std::vector<std::size_t>> node_ids;
  std::string topic_mnemonic;
};

/// Rule names: the root node is `root`; descendants are `n` followed by the
/// underscore-joined answer indices from the root (`n_0`, `n_0_2`, ...).
CompiledGrammar compile_tree(const Topic& topic);
CompiledGrammar compile_tree(const TreeNode& tree, std::string mnemonic = {});

/// Quotes `text` as a grammar terminal, escaping `"`, `\` and newline.
std::string quote_terminal(std::string_view text);

// ---------------------------------------------------------------------------
// Grammar text: parsing, recognition, generation
// ---------------------------------------------------------------------------

class GrammarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed grammar in the GBNF-style subset emitted by compile_tree: one rule
/// per line, `name ::= rhs`, where rhs is a sequence of double-quoted
/// terminals, rule references and parenthesised `|` groups. Only finite
/// (non-recursive) grammars are accepted.
class Grammar {
 public:
  struct Item;
  using Sequence = std::vector<Item>;
  struct Item {
    enum class Kind { Terminal, Ref, Group } kind = Kind::Terminal;
    std::string text;                  // literal for Terminal, name for Ref
    std::vector<Sequence> alternatives;  // for Group
  };
  struct Rule {
    std::string name;
    std::vector<Sequence> alternatives;
  };

  static Grammar parse(std::string_view text);

  const std::vector<Rule>& rules() const { return rules_; }
  const Rule& rule(std::string_view name) const;

  bool accepts(std::string_view text) const;

  /// Every string in the language, in derivation order. Throws GrammarError
  /// if more than `limit` strings would be produced.
  std::vector<std::string> enumerate(std::size_t limit = 1'000'000) const;

  /// Callback deciding which alternative to expand at a choice point.
  /// `generated` is the output so far; `previews` holds, per alternative, the
  /// text of its leading terminal. Must return an index into previews.
  using Chooser =
      std::function<std::size_t(std::string_view generated, const std::vector<std::string>& previews)>;

  std::string generate(const Chooser& choose) const;

 private:
  std::vector<Rule> rules_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace stancetree
