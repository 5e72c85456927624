#include "stancetree/taxonomy.hpp"

#include <fstream>
#include <istream>
#include <iterator>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace stancetree {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw TaxonomyParseError(path + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_member(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected string");
  return v.get<std::string>();
}

TreeNode parse_node(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "tree node must be an object");
  const bool has_question = j.contains("question");
  const bool has_terminal = j.contains("terminal");
  if (has_question == has_terminal) {
    fail(path, "tree node needs exactly one of 'question' or 'terminal'");
  }
  if (has_terminal) {
    const json& t = j["terminal"];
    if (!t.is_object()) fail(path + ".terminal", "expected object");
    const std::string label = string_member(t, "stance", path + ".terminal");
    auto stance = parse_stance(label);
    if (!stance) fail(path + ".terminal.stance", "unknown stance '" + label + "'");
    return TreeNode{Terminal{*stance, string_member(t, "rationale", path + ".terminal")}};
  }
  Question q;
  q.text = string_member(j, "question", path);
  const json& answers = member(j, "answers", path);
  if (!answers.is_array()) fail(path + ".answers", "expected array");
  for (std::size_t i = 0; i < answers.size(); ++i) {
    const std::string apath = path + ".answers[" + std::to_string(i) + "]";
    const json& a = answers[i];
    if (!a.is_object()) fail(apath, "expected object");
    Answer answer;
    answer.label = string_member(a, "label", apath);
    answer.next = parse_node(member(a, "next", apath), apath + ".next");
    q.answers.push_back(std::move(answer));
  }
  return TreeNode{std::move(q)};
}

json node_to_json(const TreeNode& node) {
  if (node.is_terminal()) {
    const Terminal& t = node.terminal();
    json term = json::object();
    term["stance"] = std::string(to_string(t.stance));
    term["rationale"] = t.rationale;
    json out = json::object();
    out["terminal"] = std::move(term);
    return out;
  }
  const Question& q = node.question();
  json answers = json::array();
  for (const Answer& a : q.answers) {
    json aj = json::object();
    aj["label"] = a.label;
    aj["next"] = node_to_json(a.next);
    answers.push_back(std::move(aj));
  }
  json out = json::object();
  out["question"] = q.text;
  out["answers"] = std::move(answers);
  return out;
}

void check_tree(const TreeNode& node, const std::string& path, std::vector<Violation>& out) {
  if (node.is_terminal()) return;
  const Question& q = node.question();
  if (q.text.empty()) {
    out.push_back({ViolationCode::EmptyQuestion, path, "question text is empty"});
  } else if (q.text.find_first_of("\r\n") != std::string::npos) {
    out.push_back({ViolationCode::IllegalQuestion, path, "question text contains a newline"});
  }
  if (q.answers.size() < 2) {
    out.push_back({ViolationCode::EmptyAnswerSet, path,
                   "question has " + std::to_string(q.answers.size()) +
                       " answer(s); at least 2 are required"});
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < q.answers.size(); ++i) {
    const Answer& a = q.answers[i];
    const std::string apath = path + ".answers[" + std::to_string(i) + "]";
    if (a.label.empty()) {
      out.push_back({ViolationCode::IllegalLabel, apath, "answer label is empty"});
    } else if (a.label.find_first_of("\r\n") != std::string::npos) {
      out.push_back({ViolationCode::IllegalLabel, apath, "answer label contains a newline"});
    }
    if (!seen.insert(a.label).second) {
      out.push_back({ViolationCode::DuplicateLabel, apath,
                     "answer label '" + a.label + "' repeats a sibling"});
    }
    check_tree(a.next, apath + ".next", out);
  }
}

}  // namespace

std::string_view to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::EmptyTaxonomy: return "EmptyTaxonomy";
    case ViolationCode::DuplicateMnemonic: return "DuplicateMnemonic";
    case ViolationCode::BadMnemonic: return "BadMnemonic";
    case ViolationCode::EmptySurface: return "EmptySurface";
    case ViolationCode::EmptyPhrase: return "EmptyPhrase";
    case ViolationCode::EmptyQuestion: return "EmptyQuestion";
    case ViolationCode::IllegalQuestion: return "IllegalQuestion";
    case ViolationCode::EmptyAnswerSet: return "EmptyAnswerSet";
    case ViolationCode::IllegalLabel: return "IllegalLabel";
    case ViolationCode::DuplicateLabel: return "DuplicateLabel";
  }
  return "Unknown";
}

namespace {
bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string::npos;
}

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream os;
  os << "taxonomy has " << violations.size() << " violation(s)";
  for (const Violation& v : violations) {
    os << "\n  " << to_string(v.code) << " at " << v.path << ": " << v.message;
  }
  return os.str();
}
}  // namespace

TaxonomyValidationError::TaxonomyValidationError(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

const Topic* Taxonomy::find(std::string_view mnemonic) const {
  for (const Topic& t : topics) {
    if (t.mnemonic == mnemonic) return &t;
  }
  return nullptr;
}

std::vector<Violation> validate_tree(const TreeNode& tree, const std::string& path) {
  std::vector<Violation> out;
  check_tree(tree, path, out);
  return out;
}

std::vector<Violation> validate_taxonomy(const Taxonomy& t) {
  static const std::regex kMnemonic("^[A-Z][A-Z0-9]*-[A-Z0-9]+$");
  std::vector<Violation> out;
  if (t.topics.empty()) {
    out.push_back({ViolationCode::EmptyTaxonomy, "topics", "taxonomy defines no topics"});
  }
  std::set<std::string> mnemonics;
  for (std::size_t i = 0; i < t.topics.size(); ++i) {
    const Topic& topic = t.topics[i];
    const std::string path = "topics[" + std::to_string(i) + "](" + topic.mnemonic + ")";
    if (!std::regex_match(topic.mnemonic, kMnemonic)) {
      out.push_back({ViolationCode::BadMnemonic, path,
                     "mnemonic '" + topic.mnemonic + "' is not of the form THEME-NAME"});
    }
    if (!mnemonics.insert(topic.mnemonic).second) {
      out.push_back({ViolationCode::DuplicateMnemonic, path,
                     "mnemonic '" + topic.mnemonic + "' is used by an earlier topic"});
    }
    if (is_blank(topic.surface)) {
      out.push_back({ViolationCode::EmptySurface, path, "surface is empty"});
    }
    for (std::size_t p = 0; p < topic.phrases.size(); ++p) {
      if (is_blank(topic.phrases[p])) {
        out.push_back({ViolationCode::EmptyPhrase, path + ".phrases[" + std::to_string(p) + "]",
                       "phrase is empty"});
      }
    }
    check_tree(topic.tree, path + ".tree", out);
  }
  return out;
}

Taxonomy parse_taxonomy(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw TaxonomyParseError(std::string("malformed taxonomy JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("$", "top level must be an object");
  Taxonomy t;
  const json& sv = member(doc, "schema_version", "$");
  if (!sv.is_number_integer()) fail("$.schema_version", "expected integer");
  t.schema_version = sv.get<int>();
  t.version = string_member(doc, "version", "$");
  const json& topics = member(doc, "topics", "$");
  if (!topics.is_array()) fail("$.topics", "expected array");
  for (std::size_t i = 0; i < topics.size(); ++i) {
    const std::string path = "topics[" + std::to_string(i) + "]";
    const json& tj = topics[i];
    if (!tj.is_object()) fail(path, "expected object");
    Topic topic;
    topic.mnemonic = string_member(tj, "mnemonic", path);
    topic.name = string_member(tj, "name", path);
    topic.theme = string_member(tj, "theme", path);
    topic.surface = string_member(tj, "surface", path);
    const json& phrases = member(tj, "phrases", path);
    if (!phrases.is_array()) fail(path + ".phrases", "expected array");
    for (std::size_t p = 0; p < phrases.size(); ++p) {
      if (!phrases[p].is_string()) {
        fail(path + ".phrases[" + std::to_string(p) + "]", "expected string");
      }
      topic.phrases.push_back(phrases[p].get<std::string>());
    }
    topic.tree = parse_node(member(tj, "tree", path), path + ".tree");
    t.topics.push_back(std::move(topic));
  }
  return t;
}

Taxonomy load_taxonomy(std::string_view json_text) {
  Taxonomy t = parse_taxonomy(json_text);
  auto violations = validate_taxonomy(t);
  if (!violations.empty()) throw TaxonomyValidationError(std::move(violations));
  return t;
}

Taxonomy load_taxonomy(std::istream& source) {
  std::string text{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  return load_taxonomy(text);
}

Taxonomy load_taxonomy_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TaxonomyParseError("cannot open taxonomy file '" + path + "'");
  return load_taxonomy(in);
}

std::string serialize_taxonomy(const Taxonomy& t) {
  json doc = json::object();
  doc["schema_version"] = t.schema_version;
  doc["version"] = t.version;
  json topics = json::array();
  for (const Topic& topic : t.topics) {
    json tj = json::object();
    tj["mnemonic"] = topic.mnemonic;
    tj["name"] = topic.name;
    tj["theme"] = topic.theme;
    tj["surface"] = topic.surface;
    tj["phrases"] = topic.phrases;
    tj["tree"] = node_to_json(topic.tree);
    topics.push_back(std::move(tj));
  }
  doc["topics"] = std::move(topics);
  return doc.dump(2) + "\n";
}

std::size_t count_leaves(const TreeNode& tree) {
  if (tree.is_terminal()) return 1;
  std::size_t n = 0;
  for (const Answer& a : tree.question().answers) n += count_leaves(a.next);
  return n;
}

}  // namespace stancetree
