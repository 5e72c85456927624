#include "stancetree/grammar.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

namespace stancetree {

namespace {

constexpr std::string_view kQuestionPrefix = "Q: ";
constexpr std::string_view kAnswerPrefix = "A: ";
constexpr std::string_view kAssessmentPrefix = "ASSESSMENT: ";

void collect_paths(const TreeNode& node, std::vector<PathStep>& prefix, std::vector<TreePath>& out) {
  if (node.is_terminal()) {
    out.push_back(TreePath{prefix, node.terminal()});
    return;
  }
  const Question& q = node.question();
  for (std::size_t i = 0; i < q.answers.size(); ++i) {
    prefix.push_back(PathStep{q.text, q.answers[i].label, i});
    collect_paths(q.answers[i].next, prefix, out);
    prefix.pop_back();
  }
}

std::string question_line(std::string_view q) {
  return std::string(kQuestionPrefix) + std::string(q) + "\n";
}
std::string answer_line(std::string_view a) {
  return std::string(kAnswerPrefix) + std::string(a) + "\n";
}
std::string assessment_line(Stance s) {
  return std::string(kAssessmentPrefix) + std::string(to_string(s)) + "\n";
}

std::size_t common_prefix(std::string_view a, std::string_view b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

std::string excerpt(std::string_view text, std::size_t offset) {
  std::size_t end = text.find('\n', offset);
  std::string_view rest = text.substr(offset, end == std::string_view::npos ? 40 : end - offset);
  if (rest.size() > 40) rest = rest.substr(0, 40);
  return "'" + std::string(rest) + "'";
}

/// Cursor over the transcript that reports errors with line/column.
class TranscriptReader {
 public:
  explicit TranscriptReader(std::string_view text) : text_(text) {}

  /// Consumes the first candidate that matches exactly. On failure, throws
  /// located at the furthest point any candidate agreed with the input.
  std::size_t expect_one_of(const std::vector<std::string>& candidates, TranscriptErrorKind kind,
                            std::string_view what) {
    std::string_view rest = text_.substr(pos_);
    std::size_t best = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (rest.substr(0, candidates[i].size()) == candidates[i]) {
        pos_ += candidates[i].size();
        return i;
      }
      best = std::max(best, common_prefix(rest, candidates[i]));
    }
    const std::size_t at = pos_ + best;
    if (at >= text_.size()) {
      fail(TranscriptErrorKind::Truncated, at, "transcript ends while expecting " + std::string(what));
    }
    fail(kind, at, "expected " + std::string(what) + " near " + excerpt(text_, at));
  }

  void expect_end() {
    if (pos_ != text_.size()) {
      fail(TranscriptErrorKind::TrailingText, pos_, "unexpected text after assessment");
    }
  }

  [[noreturn]] void fail(TranscriptErrorKind kind, std::size_t offset, const std::string& detail) const {
    std::size_t line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        line_start = i + 1;
      }
    }
    throw TranscriptError(kind, offset, line, offset - line_start + 1, detail);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string node_name(const std::vector<std::size_t>& path) {
  if (path.empty()) return "root";
  std::string name = "n";
  for (std::size_t i : path) name += "_" + std::to_string(i);
  return name;
}

void emit_rules(const TreeNode& node, std::vector<std::size_t>& path, CompiledGrammar& out,
                std::ostringstream& text) {
  const std::string name = node_name(path);
  out.node_ids.emplace(name, path);
  if (node.is_terminal()) {
    text << name << " ::= " << quote_terminal(assessment_line(node.terminal().stance)) << "\n";
    return;
  }
  const Question& q = node.question();
  std::set<std::string_view> labels;
  for (const Answer& a : q.answers) {
    if (!labels.insert(a.label).second) {
      throw GrammarCompileError("node " + name + ": duplicate answer label '" + a.label + "'");
    }
  }
  if (q.answers.empty()) {
    throw GrammarCompileError("node " + name + ": question has no answers");
  }
  text << name << " ::= " << quote_terminal(question_line(q.text)) << " (";
  for (std::size_t i = 0; i < q.answers.size(); ++i) {
    path.push_back(i);
    text << (i == 0 ? " " : " | ") << quote_terminal(answer_line(q.answers[i].label)) << " "
         << node_name(path);
    path.pop_back();
  }
  text << " )\n";
  for (std::size_t i = 0; i < q.answers.size(); ++i) {
    path.push_back(i);
    emit_rules(q.answers[i].next, path, out, text);
    path.pop_back();
  }
}

}  // namespace

TranscriptError::TranscriptError(TranscriptErrorKind kind, std::size_t offset, std::size_t line,
                                 std::size_t column, const std::string& detail)
    : std::runtime_error("transcript rejected at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + detail),
      kind_(kind),
      offset_(offset),
      line_(line),
      column_(column) {}

std::vector<TreePath> enumerate_paths(const TreeNode& tree) {
  std::vector<TreePath> out;
  std::vector<PathStep> prefix;
  collect_paths(tree, prefix, out);
  return out;
}

std::string render_transcript(const TreePath& path) {
  std::string out;
  for (const PathStep& step : path.steps) {
    out += question_line(step.question);
    out += answer_line(step.answer);
  }
  out += assessment_line(path.terminal.stance);
  return out;
}

TreePath parse_transcript(const TreeNode& tree, std::string_view text) {
  TranscriptReader reader(text);
  TreePath path;
  const TreeNode* node = &tree;
  while (!node->is_terminal()) {
    const Question& q = node->question();
    reader.expect_one_of({question_line(q.text)}, TranscriptErrorKind::QuestionMismatch,
                         "question line");
    std::vector<std::string> candidates;
    candidates.reserve(q.answers.size());
    for (const Answer& a : q.answers) candidates.push_back(answer_line(a.label));
    const std::size_t chosen =
        reader.expect_one_of(candidates, TranscriptErrorKind::UnknownAnswer, "an answer line");
    path.steps.push_back(PathStep{q.text, q.answers[chosen].label, chosen});
    node = &q.answers[chosen].next;
  }
  reader.expect_one_of({assessment_line(node->terminal().stance)},
                       TranscriptErrorKind::BadAssessment, "assessment line");
  reader.expect_end();
  path.terminal = node->terminal();
  return path;
}

TreePath parse_transcript(const Topic& topic, std::string_view text) {
  return parse_transcript(topic.tree, text);
}

std::string quote_terminal(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

CompiledGrammar compile_tree(const TreeNode& tree, std::string mnemonic) {
  CompiledGrammar out;
  out.topic_mnemonic = std::move(mnemonic);
  std::ostringstream text;
  std::vector<std::size_t> path;
  emit_rules(tree, path, out, text);
  out.grammar_text = text.str();
  return out;
}

CompiledGrammar compile_tree(const Topic& topic) { return compile_tree(topic.tree, topic.mnemonic); }

// ---------------------------------------------------------------------------
// Grammar parsing
// ---------------------------------------------------------------------------

namespace {

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-';
}

class RhsParser {
 public:
  RhsParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  std::vector<Grammar::Sequence> parse_all() {
    auto alts = alternatives();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return alts;
  }

 private:
  std::vector<Grammar::Sequence> alternatives() {
    std::vector<Grammar::Sequence> alts;
    alts.push_back(sequence());
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        alts.push_back(sequence());
      } else {
        return alts;
      }
    }
  }

  Grammar::Sequence sequence() {
    Grammar::Sequence seq;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) return seq;
      const char c = text_[pos_];
      if (c == '"') {
        seq.push_back({Grammar::Item::Kind::Terminal, terminal(), {}});
      } else if (c == '(') {
        ++pos_;
        Grammar::Item group{Grammar::Item::Kind::Group, {}, alternatives()};
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != ')') error("unclosed '('");
        ++pos_;
        seq.push_back(std::move(group));
      } else if (is_name_char(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
        seq.push_back({Grammar::Item::Kind::Ref, std::string(text_.substr(start, pos_ - start)), {}});
      } else {
        return seq;
      }
    }
  }

  std::string terminal() {
    ++pos_;  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) error("unterminated string literal");
      char c = text_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= text_.size()) error("dangling escape");
      char e = text_[pos_++];
      switch (e) {
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: error(std::string("unknown escape '\\") + e + "'");
      }
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  [[noreturn]] void error(const std::string& what) const {
    throw GrammarError("grammar line " + std::to_string(line_) + ", column " +
                       std::to_string(pos_ + 1) + ": " + what);
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

template <typename Fn>
void for_each_ref(const std::vector<Grammar::Sequence>& alts, const Fn& fn) {
  for (const auto& seq : alts) {
    for (const auto& item : seq) {
      if (item.kind == Grammar::Item::Kind::Ref) fn(item.text);
      if (item.kind == Grammar::Item::Kind::Group) for_each_ref(item.alternatives, fn);
    }
  }
}

}  // namespace

Grammar Grammar::parse(std::string_view text) {
  Grammar g;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    std::size_t def = line.find("::=");
    if (def == std::string_view::npos) {
      throw GrammarError("grammar line " + std::to_string(line_no) + ": missing '::='");
    }
    std::string_view lhs = line.substr(0, def);
    while (!lhs.empty() && (lhs.back() == ' ' || lhs.back() == '\t')) lhs.remove_suffix(1);
    lhs.remove_prefix(std::min(first, lhs.size()));
    if (lhs.empty() || !std::all_of(lhs.begin(), lhs.end(), is_name_char)) {
      throw GrammarError("grammar line " + std::to_string(line_no) + ": bad rule name '" +
                         std::string(lhs) + "'");
    }
    std::string_view rhs = line.substr(def + 3);
    if (!rhs.empty() && rhs.back() == '\r') rhs.remove_suffix(1);
    Rule rule{std::string(lhs), RhsParser(rhs, line_no).parse_all()};
    if (g.index_.count(rule.name)) {
      throw GrammarError("rule '" + rule.name + "' defined twice");
    }
    g.index_.emplace(rule.name, g.rules_.size());
    g.rules_.push_back(std::move(rule));
  }
  if (g.rules_.empty() || g.rules_.front().name != "root") {
    throw GrammarError("the first rule must be 'root'");
  }
  for (const Rule& r : g.rules_) {
    for_each_ref(r.alternatives, [&](const std::string& name) {
      if (!g.index_.count(name)) {
        throw GrammarError("rule '" + r.name + "' references undefined rule '" + name + "'");
      }
    });
  }
  // Reject recursion: the languages handled here are finite.
  std::vector<int> state(g.rules_.size(), 0);
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    state[i] = 1;
    for_each_ref(g.rules_[i].alternatives, [&](const std::string& name) {
      std::size_t j = g.index_.find(name)->second;
      if (state[j] == 1) throw GrammarError("rule '" + name + "' is recursive");
      if (state[j] == 0) visit(j);
    });
    state[i] = 2;
  };
  for (std::size_t i = 0; i < g.rules_.size(); ++i) {
    if (state[i] == 0) visit(i);
  }
  return g;
}

const Grammar::Rule& Grammar::rule(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw GrammarError("no rule named '" + std::string(name) + "'");
  return rules_[it->second];
}

namespace {

using EndSet = std::vector<std::size_t>;

class Matcher {
 public:
  Matcher(const Grammar& g, std::string_view text) : g_(g), text_(text) {}

  EndSet rule_ends(const std::string& name, std::size_t pos) {
    auto key = std::make_pair(name, pos);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    EndSet ends = alts_ends(g_.rule(name).alternatives, pos);
    memo_.emplace(std::move(key), ends);
    return ends;
  }

 private:
  EndSet alts_ends(const std::vector<Grammar::Sequence>& alts, std::size_t pos) {
    EndSet out;
    for (const auto& seq : alts) {
      EndSet e = seq_ends(seq, 0, pos);
      out.insert(out.end(), e.begin(), e.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  EndSet seq_ends(const Grammar::Sequence& seq, std::size_t i, std::size_t pos) {
    if (i == seq.size()) return {pos};
    EndSet after = item_ends(seq[i], pos);
    EndSet out;
    for (std::size_t p : after) {
      EndSet e = seq_ends(seq, i + 1, p);
      out.insert(out.end(), e.begin(), e.end());
    }
    return out;
  }

  EndSet item_ends(const Grammar::Item& item, std::size_t pos) {
    switch (item.kind) {
      case Grammar::Item::Kind::Terminal:
        if (text_.substr(pos, item.text.size()) == item.text) return {pos + item.text.size()};
        return {};
      case Grammar::Item::Kind::Ref:
        return rule_ends(item.text, pos);
      case Grammar::Item::Kind::Group:
        return alts_ends(item.alternatives, pos);
    }
    return {};
  }

  const Grammar& g_;
  std::string_view text_;
  std::map<std::pair<std::string, std::size_t>, EndSet> memo_;
};

class Enumerator {
 public:
  Enumerator(const Grammar& g, std::size_t limit) : g_(g), limit_(limit) {}

  std::vector<std::string> alts(const std::vector<Grammar::Sequence>& alternatives) {
    std::vector<std::string> out;
    for (const auto& seq : alternatives) {
      std::vector<std::string> s = sequence(seq);
      out.insert(out.end(), s.begin(), s.end());
      check(out.size());
    }
    return out;
  }

 private:
  std::vector<std::string> sequence(const Grammar::Sequence& seq) {
    std::vector<std::string> acc{""};
    for (const auto& item : seq) {
      std::vector<std::string> parts = expand(item);
      std::vector<std::string> next;
      check(acc.size() * parts.size());
      next.reserve(acc.size() * parts.size());
      for (const auto& a : acc) {
        for (const auto& p : parts) next.push_back(a + p);
      }
      acc = std::move(next);
    }
    return acc;
  }

  std::vector<std::string> expand(const Grammar::Item& item) {
    switch (item.kind) {
      case Grammar::Item::Kind::Terminal: return {item.text};
      case Grammar::Item::Kind::Ref: {
        auto it = cache_.find(item.text);
        if (it != cache_.end()) return it->second;
        auto v = alts(g_.rule(item.text).alternatives);
        cache_.emplace(item.text, v);
        return v;
      }
      case Grammar::Item::Kind::Group: return alts(item.alternatives);
    }
    return {};
  }

  void check(std::size_t n) const {
    if (n > limit_) throw GrammarError("language exceeds enumeration limit");
  }

  const Grammar& g_;
  std::size_t limit_;
  std::unordered_map<std::string, std::vector<std::string>> cache_;
};

class Generator {
 public:
  Generator(const Grammar& g, const Grammar::Chooser& choose) : g_(g), choose_(choose) {}

  void alts(const std::vector<Grammar::Sequence>& alternatives) {
    std::size_t pick = 0;
    if (alternatives.size() > 1) {
      std::vector<std::string> previews;
      previews.reserve(alternatives.size());
      for (const auto& seq : alternatives) previews.push_back(preview(seq));
      pick = choose_(out_, previews);
      if (pick >= alternatives.size()) throw GrammarError("chooser returned an invalid alternative");
    }
    for (const auto& item : alternatives[pick]) {
      switch (item.kind) {
        case Grammar::Item::Kind::Terminal: out_ += item.text; break;
        case Grammar::Item::Kind::Ref: alts(g_.rule(item.text).alternatives); break;
        case Grammar::Item::Kind::Group: alts(item.alternatives); break;
      }
    }
  }

  std::string take() { return std::move(out_); }

 private:
  std::string preview(const Grammar::Sequence& seq) const {
    if (seq.empty()) return {};
    const auto& item = seq.front();
    switch (item.kind) {
      case Grammar::Item::Kind::Terminal: return item.text;
      case Grammar::Item::Kind::Ref: {
        const auto& r = g_.rule(item.text);
        return r.alternatives.size() == 1 ? preview(r.alternatives.front()) : std::string{};
      }
      case Grammar::Item::Kind::Group:
        return item.alternatives.size() == 1 ? preview(item.alternatives.front()) : std::string{};
    }
    return {};
  }

  const Grammar& g_;
  const Grammar::Chooser& choose_;
  std::string out_;
};

}  // namespace

bool Grammar::accepts(std::string_view text) const {
  Matcher m(*this, text);
  EndSet ends = m.rule_ends("root", 0);
  return std::find(ends.begin(), ends.end(), text.size()) != ends.end();
}

std::vector<std::string> Grammar::enumerate(std::size_t limit) const {
  Enumerator e(*this, limit);
  return e.alts(rules_.front().alternatives);
}

std::string Grammar::generate(const Chooser& choose) const {
  Generator gen(*this, choose);
  gen.alts(rules_.front().alternatives);
  return gen.take();
}

}  // namespace stancetree
