#include "stancetree/corpus.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>

#include "json.hpp"

namespace stancetree {

std::optional<Date> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto digits = [&](std::size_t from, std::size_t n, int& out) {
    out = 0;
    for (std::size_t i = from; i < from + n; ++i) {
      if (text[i] < '0' || text[i] > '9') return false;
      out = out * 10 + (text[i] - '0');
    }
    return true;
  };
  int y = 0, m = 0, d = 0;
  if (!digits(0, 4, y) || !digits(5, 2, m) || !digits(8, 2, d)) return std::nullopt;
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_iso_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

CorpusError::CorpusError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "corpus line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

std::vector<Document> load_corpus(std::istream& source) {
  using json = nlohmann::json;
  std::vector<Document> docs;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorpusError(line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw CorpusError(line_no, "expected a JSON object");
    auto field = [&](const char* key) {
      auto it = j.find(key);
      if (it == j.end() || !it->is_string()) {
        throw CorpusError(line_no, std::string("missing string field '") + key + "'");
      }
      return it->get<std::string>();
    };
    Document doc;
    doc.doc_id = field("doc_id");
    const std::string date = field("date");
    auto parsed = parse_iso_date(date);
    if (!parsed) throw CorpusError(line_no, "date '" + date + "' is not an ISO-8601 YYYY-MM-DD date");
    doc.date = *parsed;
    doc.doc_type = field("doc_type");
    doc.text = field("text");
    if (!ids.insert(doc.doc_id).second) {
      throw CorpusError(line_no, "duplicate doc_id '" + doc.doc_id + "'");
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(0, "cannot open corpus file '" + path + "'");
  return load_corpus(in);
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Words that end in a period without ending a sentence (compared without the
// final period).
constexpr std::array<std::string_view, 30> kAbbreviations = {
    "e.g", "i.e", "No", "Nos", "Mr", "Mrs", "Ms", "Dr", "Prof", "St", "vs", "cf", "approx",
    "Jan", "Feb", "Mar", "Apr", "Jun", "Jul", "Aug", "Sep", "Sept", "Oct", "Nov", "Dec",
    "Inc", "Ltd", "Co", "U.S", "Fig",
};

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

bool protected_word(std::string_view text, std::size_t period) {
  std::size_t start = period;
  while (start > 0 && !is_space(text[start - 1])) --start;
  std::string_view word = text.substr(start, period - start);
  while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '\'' ||
                           word.front() == '[')) {
    word.remove_prefix(1);
  }
  if (word.size() == 1 && is_upper(word[0])) return true;  // initial
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

}  // namespace

std::vector<std::string> split_paragraphs(std::string_view text) {
  std::vector<std::string> out;
  std::size_t para_start = 0;
  std::size_t pos = 0;
  auto flush = [&](std::size_t end) {
    std::string_view p = trim(text.substr(para_start, end - para_start));
    if (!p.empty()) out.emplace_back(p);
  };
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (trim(line).empty()) {
      flush(pos);
      para_start = std::min(eol + 1, text.size());
    }
    pos = eol + 1;
  }
  if (para_start < text.size()) flush(text.size());
  return out;
}

std::vector<std::string> split_sentences(std::string_view paragraph) {
  std::vector<std::string> out;
  std::size_t start = 0;
  const std::size_t n = paragraph.size();
  for (std::size_t i = 0; i < n; ++i) {
    const char c = paragraph[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t end = i + 1;
    while (end < n && is_closer(paragraph[end])) ++end;
    std::size_t next = end;
    while (next < n && is_space(paragraph[next])) ++next;
    if (next == end || next >= n) continue;
    std::size_t lead = next;
    while (lead < n && (paragraph[lead] == '"' || paragraph[lead] == '(' || paragraph[lead] == '[')) ++lead;
    if (lead >= n || (!is_upper(paragraph[lead]) && !is_digit(paragraph[lead]))) continue;
    if (c == '.' && protected_word(paragraph, i)) continue;
    std::string_view s = trim(paragraph.substr(start, end - start));
    if (!s.empty()) out.emplace_back(s);
    start = next;
    i = next - 1;
  }
  std::string_view tail = trim(paragraph.substr(std::min(start, n)));
  if (!tail.empty()) out.emplace_back(tail);
  return out;
}

}  // namespace stancetree
