#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stancetree/date.hpp"

namespace stancetree {

struct Document {
  std::string doc_id;
  Date date;
  std::string doc_type;  // "statement", "minutes", or free-form
  std::string text;

  friend bool operator==(const Document&, const Document&) = default;
};

class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }  // 1-based; 0 when not line-specific

 private:
  std::size_t line_;
};

/// JSONL, one {doc_id, date, doc_type, text} object per line. Blank lines
/// are skipped; documents are returned in file order.
std::vector<Document> load_corpus(std::istream& source);
std::vector<Document> load_corpus_file(const std::string& path);

/// Splits on runs of blank (whitespace-only) lines, trims each paragraph and
/// drops empty ones.
std::vector<std::string> split_paragraphs(std::string_view text);

/// Version of the protected-abbreviation list used by split_sentences.
inline constexpr int kAbbreviationListVersion = 1;

/// Rule-based sentence segmentation: a break follows `.`, `!` or `?` (plus
/// any closing quotes or brackets) when whitespace and then an uppercase
/// letter or digit come next, possibly behind opening quotes or brackets,
/// unless the word ending in `.` is a protected abbreviation or a
/// single-letter initial.
std::vector<std::string> split_sentences(std::string_view paragraph);

}  // namespace stancetree
