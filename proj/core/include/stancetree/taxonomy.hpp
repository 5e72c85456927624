#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stancetree/stance.hpp"

namespace stancetree {

struct Terminal {
  Stance stance = Stance::Neutral;
  std::string rationale;

  friend bool operator==(const Terminal&, const Terminal&) = default;
};

struct Answer;

struct Question {
  std::string text;
  std::vector<Answer> answers;

  friend bool operator==(const Question&, const Question&);
};

/// A decision-tree node: either a question with labelled answers, or a leaf
/// carrying a stance assessment. Subtrees are owned inline, so a tree is
/// always finite and acyclic.
struct TreeNode {
  std::variant<Terminal, Question> node;

  bool is_terminal() const { return std::holds_alternative<Terminal>(node); }
  const Terminal& terminal() const { return std::get<Terminal>(node); }
  const Question& question() const { return std::get<Question>(node); }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct Answer {
  std::string label;
  TreeNode next;

  friend bool operator==(const Answer&, const Answer&) = default;
};

inline bool operator==(const Question& a, const Question& b) {
  return a.text == b.text && a.answers == b.answers;
}

struct Topic {
  std::string mnemonic;  // THEME-NAME, e.g. CORE-INFLATION
  std::string name;
  std::string theme;
  std::string surface;   // human-readable description used by dense scoring
  std::vector<std::string> phrases;
  TreeNode tree;

  friend bool operator==(const Topic&, const Topic&) = default;
};

struct Taxonomy {
  int schema_version = 1;
  std::string version;
  std::vector<Topic> topics;

  /// nullptr when no topic has this mnemonic.
  const Topic* find(std::string_view mnemonic) const;

  friend bool operator==(const Taxonomy&, const Taxonomy&) = default;
};

enum class ViolationCode {
  EmptyTaxonomy,
  DuplicateMnemonic,
  BadMnemonic,
  EmptySurface,
  EmptyPhrase,
  EmptyQuestion,
  IllegalQuestion,
  EmptyAnswerSet,  // fewer than two answers
  IllegalLabel,    // empty or contains a newline
  DuplicateLabel,
};

std::string_view to_string(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::string path;  // e.g. topics[3](CORE-WAGES).tree.answers[1].next
  std::string message;
};

class TaxonomyParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TaxonomyValidationError : public std::runtime_error {
 public:
  explicit TaxonomyValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Returns an empty list iff every taxonomy invariant holds.
std::vector<Violation> validate_taxonomy(const Taxonomy& t);

/// Violations of a single tree, with paths rooted at `path`.
std::vector<Violation> validate_tree(const TreeNode& tree, const std::string& path);

/// Parses and validates taxonomy JSON. Throws TaxonomyParseError or
/// TaxonomyValidationError.
Taxonomy load_taxonomy(std::istream& source);
Taxonomy load_taxonomy(std::string_view json_text);
Taxonomy load_taxonomy_file(const std::string& path);

/// Parses without validating; used by tooling that reports violations itself.
Taxonomy parse_taxonomy(std::string_view json_text);

std::string serialize_taxonomy(const Taxonomy& t);

/// Number of leaves reachable from `tree`.
std::size_t count_leaves(const TreeNode& tree);

}  // namespace stancetree
